#include "big_float.hpp"

#include <algorithm>
#include <vector>

namespace negm {

BigFloat::BigFloat(long bits) {
    mpfr_init2(value_, bits);
    mpfr_set_zero(value_, 1);
}

BigFloat::BigFloat(double value, long bits) {
    mpfr_init2(value_, bits);
    mpfr_set_d(value_, value, MPFR_RNDN);
}

BigFloat::BigFloat(const mpq_class& value, long bits) {
    mpfr_init2(value_, bits);
    mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const mpz_class& value, long bits) {
    mpfr_init2(value_, bits);
    mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

BigFloat::BigFloat(const BigFloat& other) {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
    mpfr_init2(value_, mpfr_get_prec(other.value_));
    mpfr_swap(value_, other.value_);
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
    if (this != &other) {
        mpfr_set_prec(value_, mpfr_get_prec(other.value_));
        mpfr_set(value_, other.value_, MPFR_RNDN);
    }
    return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
    mpfr_swap(value_, other.value_);
    return *this;
}

BigFloat::~BigFloat() { mpfr_clear(value_); }

BigFloat BigFloat::pi(long bits) {
    BigFloat r(bits);
    mpfr_const_pi(r.value_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::sqrt_pi(long bits) {
    // Guard bits so that sqrt(pi) is correctly rounded at the target precision.
    BigFloat p = pi(bits + 16);
    BigFloat r(bits);
    mpfr_sqrt(r.value_, p.value_, MPFR_RNDN);
    return r;
}

std::string BigFloat::to_string(int digits) const {
    std::vector<char> buf(static_cast<std::size_t>(digits) + 32);
    mpfr_snprintf(buf.data(), buf.size(), "%.*Rg", digits, value_);
    return std::string(buf.data());
}

void BigFloat::widen_to(long bits) {
    if (bits > this->bits()) {
        mpfr_prec_round(value_, bits, MPFR_RNDN);
    }
}

BigFloat& BigFloat::operator+=(const BigFloat& rhs) {
    widen_to(rhs.bits());
    mpfr_add(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator-=(const BigFloat& rhs) {
    widen_to(rhs.bits());
    mpfr_sub(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator*=(const BigFloat& rhs) {
    widen_to(rhs.bits());
    mpfr_mul(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

BigFloat& BigFloat::operator/=(const BigFloat& rhs) {
    widen_to(rhs.bits());
    mpfr_div(value_, value_, rhs.value_, MPFR_RNDN);
    return *this;
}

BigFloat BigFloat::operator-() const {
    BigFloat r(*this);
    mpfr_neg(r.value_, r.value_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::abs() const {
    BigFloat r(*this);
    mpfr_abs(r.value_, r.value_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::sqrt() const {
    BigFloat r(bits());
    mpfr_sqrt(r.value_, value_, MPFR_RNDN);
    return r;
}

BigFloat BigFloat::pow(unsigned long exponent) const {
    BigFloat r(bits());
    mpfr_pow_ui(r.value_, value_, exponent, MPFR_RNDN);
    return r;
}

} // namespace negm
