#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <string>

namespace negm {

/// Owning wrapper over an MPFR value. Every value carries its own precision;
/// binary operators produce a result at the larger of the two operand
/// precisions and round to nearest.
class BigFloat {
public:
    explicit BigFloat(long bits = 53);
    BigFloat(double value, long bits);
    BigFloat(const mpq_class& value, long bits);
    BigFloat(const mpz_class& value, long bits);

    BigFloat(const BigFloat& other);
    BigFloat(BigFloat&& other) noexcept;
    BigFloat& operator=(const BigFloat& other);
    BigFloat& operator=(BigFloat&& other) noexcept;
    ~BigFloat();

    static BigFloat pi(long bits);
    static BigFloat sqrt_pi(long bits);

    long bits() const { return static_cast<long>(mpfr_get_prec(value_)); }
    double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
    std::string to_string(int digits = 20) const;
    bool is_zero() const { return mpfr_zero_p(value_) != 0; }
    int sign() const { return mpfr_sgn(value_); }

    BigFloat& operator+=(const BigFloat& rhs);
    BigFloat& operator-=(const BigFloat& rhs);
    BigFloat& operator*=(const BigFloat& rhs);
    BigFloat& operator/=(const BigFloat& rhs);

    friend BigFloat operator+(BigFloat lhs, const BigFloat& rhs) { return lhs += rhs; }
    friend BigFloat operator-(BigFloat lhs, const BigFloat& rhs) { return lhs -= rhs; }
    friend BigFloat operator*(BigFloat lhs, const BigFloat& rhs) { return lhs *= rhs; }
    friend BigFloat operator/(BigFloat lhs, const BigFloat& rhs) { return lhs /= rhs; }
    BigFloat operator-() const;

    friend bool operator<(const BigFloat& a, const BigFloat& b) { return mpfr_less_p(a.value_, b.value_) != 0; }

    BigFloat abs() const;
    BigFloat sqrt() const;
    BigFloat pow(unsigned long exponent) const;

    mpfr_srcptr get() const { return value_; }
    mpfr_ptr get() { return value_; }

private:
    void widen_to(long bits);
    mpfr_t value_;
};

} // namespace negm
