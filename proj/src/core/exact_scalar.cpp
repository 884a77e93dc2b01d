#include "exact_scalar.hpp"

#include <cstdlib>
#include <sstream>

namespace negm {

std::string to_fraction_string(const Rational& value) {
    return value.get_num().get_str() + "/" + value.get_den().get_str();
}

Rational parse_fraction(const std::string& text) {
    Rational r;
    if (text.empty() || r.set_str(text, 10) != 0 || sgn(r.get_den()) == 0) {
        throw std::invalid_argument("not a rational literal: '" + text + "'");
    }
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------- GammaMonomial

GammaMonomial::GammaMonomial(Rational coeff, int sqrtpi_power)
    : coeff_(std::move(coeff)), power_(sqrtpi_power) {
    if (sgn(coeff_) == 0) power_ = 0;
}

GammaMonomial operator*(const GammaMonomial& a, const GammaMonomial& b) {
    return GammaMonomial(a.coeff_ * b.coeff_, a.power_ + b.power_);
}

GammaMonomial operator*(const GammaMonomial& a, const Rational& b) {
    return GammaMonomial(a.coeff_ * b, a.power_);
}

GammaMonomial operator+(const GammaMonomial& a, const GammaMonomial& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.power_ != b.power_) {
        throw std::domain_error("cannot add monomials of different sqrt(pi) degree");
    }
    return GammaMonomial(a.coeff_ + b.coeff_, a.power_);
}

// ---------------------------------------------------------------- PiHalfPoly

PiHalfPoly::PiHalfPoly(const Rational& constant) { add_term(0, constant); }

PiHalfPoly::PiHalfPoly(int degree, const Rational& coeff) {
    if (degree < 0) throw std::domain_error("negative sqrt(pi) degree");
    add_term(degree, coeff);
}

PiHalfPoly PiHalfPoly::from_monomial(const GammaMonomial& m) {
    return PiHalfPoly(m.sqrtpi_power(), m.coeff());
}

Rational PiHalfPoly::coeff(int degree) const {
    auto it = terms_.find(degree);
    return it == terms_.end() ? Rational(0) : it->second;
}

void PiHalfPoly::add_term(int degree, const Rational& coeff) {
    if (sgn(coeff) == 0) return;
    auto [it, inserted] = terms_.try_emplace(degree, coeff);
    if (!inserted) {
        it->second += coeff;
        if (sgn(it->second) == 0) terms_.erase(it);
    }
}

PiHalfPoly& PiHalfPoly::operator+=(const PiHalfPoly& rhs) {
    for (const auto& [d, c] : rhs.terms_) add_term(d, c);
    return *this;
}

PiHalfPoly& PiHalfPoly::operator-=(const PiHalfPoly& rhs) {
    for (const auto& [d, c] : rhs.terms_) add_term(d, -c);
    return *this;
}

PiHalfPoly& PiHalfPoly::operator*=(const PiHalfPoly& rhs) {
    PiHalfPoly out;
    for (const auto& [da, ca] : terms_) {
        for (const auto& [db, cb] : rhs.terms_) out.add_term(da + db, ca * cb);
    }
    terms_ = std::move(out.terms_);
    return *this;
}

PiHalfPoly& PiHalfPoly::operator*=(const Rational& rhs) {
    if (sgn(rhs) == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [d, c] : terms_) c *= rhs;
    return *this;
}

PiHalfPoly& PiHalfPoly::operator/=(const Rational& rhs) {
    if (sgn(rhs) == 0) throw std::domain_error("division by zero");
    for (auto& [d, c] : terms_) c /= rhs;
    return *this;
}

PiHalfPoly PiHalfPoly::operator-() const {
    PiHalfPoly r(*this);
    for (auto& [d, c] : r.terms_) c = -c;
    return r;
}

std::string PiHalfPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [d, c] : terms_) {
        if (!first) os << (sgn(c) < 0 ? " - " : " + ");
        else if (sgn(c) < 0) os << "-";
        first = false;
        const Rational mag = abs(c);
        if (d == 0) {
            os << mag.get_str();
        } else if (d % 2 == 0) {
            os << mag.get_str() << "*pi";
            if (d != 2) os << "^" << d / 2;
        } else {
            os << mag.get_str() << "*sqrtpi";
            if (d != 1) os << "^" << d;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- special functions

Rational factorial(unsigned n) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return Rational(f);
}

Rational binomial(unsigned n, unsigned k) {
    if (k > n) return Rational(0);
    mpz_class b;
    mpz_bin_uiui(b.get_mpz_t(), n, k);
    return Rational(b);
}

GammaMonomial gamma_half(HalfInt h) {
    if (h.is_integer()) {
        const long n = h.twice / 2;
        if (n <= 0) throw PoleError("Gamma has a pole at " + std::to_string(n));
        return GammaMonomial(factorial(static_cast<unsigned>(n - 1)), 0);
    }
    // h = m + 1/2; walk from Gamma(1/2) = sqrt(pi).
    const long m = (h.twice - 1) / 2;
    Rational c(1);
    if (m >= 0) {
        for (long j = 0; j < m; ++j) c *= make_rational(2 * j + 1, 2);
    } else {
        // Gamma(x) = Gamma(x + 1) / x for x = -1/2, -3/2, ...
        for (long j = -1; j >= m; --j) c /= make_rational(2 * j + 1, 2);
    }
    return GammaMonomial(c, 1);
}

GammaMonomial reciprocal_gamma_half(HalfInt h) {
    if (h.is_integer() && h.twice <= 0) return GammaMonomial();
    const GammaMonomial g = gamma_half(h);
    return GammaMonomial(1 / g.coeff(), -g.sqrtpi_power());
}

Rational pochhammer(const Rational& a, unsigned n, Direction direction) {
    Rational r(1);
    Rational x = a;
    for (unsigned i = 0; i < n; ++i) {
        r *= x;
        if (sgn(r) == 0) break;
        if (direction == Direction::Rising) x += 1;
        else x -= 1;
    }
    return r;
}

Rational laguerre_eval(unsigned k, const Rational& x) {
    Rational prev(1);
    if (k == 0) return prev;
    Rational cur = 1 - x;
    for (unsigned j = 1; j < k; ++j) {
        Rational next = ((2 * j + 1 - x) * cur - j * prev) / (j + 1);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

namespace {

long twice_beta(Beta beta) {
    switch (beta) {
        case Beta::Zero: return 0;
        case Beta::Half: return 1;
        case Beta::One: return 2;
    }
    return 0;
}

} // namespace

GammaMonomial i_integral(unsigned k, unsigned l, Beta beta) {
    // I_kl = ((-1)^l / l!) sum_t (-1)^t C(k,t) Gamma(t+b+1)^2 / (t! Gamma(t-l+b+1))
    const long tb = twice_beta(beta);
    // Terms with 1/Gamma at a nonpositive integer vanish; find the first live one.
    unsigned t0 = 0;
    if (tb % 2 == 0) {
        const long b = tb / 2;
        const long first = static_cast<long>(l) - b;  // need t - l + b + 1 >= 1
        t0 = first > 0 ? static_cast<unsigned>(first) : 0u;
    }
    if (t0 > k) return GammaMonomial();

    const HalfInt top{2 * static_cast<long>(t0) + tb + 2};
    const HalfInt bottom{2 * (static_cast<long>(t0) - static_cast<long>(l)) + tb + 2};
    const GammaMonomial g = gamma_half(top);
    GammaMonomial lead = g * g * reciprocal_gamma_half(bottom);
    Rational term = lead.coeff() * binomial(k, t0) / factorial(t0);
    if (t0 % 2 == 1) term = -term;
    const int power = lead.sqrtpi_power();

    // term_{t+1}/term_t = -(k-t)/(t+1)^2 * (t+b+1)^2 / (t-l+b+1)
    Rational sum = term;
    const Rational b = make_rational(tb, 2);
    for (unsigned t = t0; t < k; ++t) {
        const Rational up = t + b + 1;
        Rational ratio = up * up * (k - t);
        ratio /= Rational((t + 1) * (t + 1)) * (Rational(t) - l + b + 1);
        term *= ratio;
        term = -term;
        sum += term;
    }
    sum /= factorial(l);
    if (l % 2 == 1) sum = -sum;
    return GammaMonomial(sum, power);
}

GammaMonomial i_via_3f2(unsigned k, unsigned l) {
    // ((-1)^l/l!) Gamma(3/2)^2 / Gamma(3/2 - l) * 3F2(3/2, 3/2, -k; 1, 3/2 - l; 1)
    const Rational three_halves(3, 2);
    const Rational lower = three_halves - l;
    Rational series(0);
    for (unsigned n = 0; n <= k; ++n) {
        const Rational p = pochhammer(three_halves, n, Direction::Rising);
        Rational num = p * p * pochhammer(Rational(-static_cast<long>(k)), n, Direction::Rising);
        const Rational den = pochhammer(Rational(1), n, Direction::Rising) *
                             pochhammer(lower, n, Direction::Rising) * factorial(n);
        series += num / den;
    }
    const GammaMonomial g = gamma_half(HalfInt::half_odd(1));
    GammaMonomial prefactor =
        g * g * reciprocal_gamma_half(HalfInt{3 - 2 * static_cast<long>(l)});
    Rational sign_fact = 1 / factorial(l);
    if (l % 2 == 1) sign_fact = -sign_fact;
    return prefactor * (sign_fact * series);
}

Rational qbar(unsigned mu) {
    if (mu < 1) throw std::invalid_argument("qbar requires mu >= 1");
    Rational r = factorial(mu);
    for (unsigned k = 1; k <= mu; ++k) {
        const Rational g = factorial(k - 1);
        r *= g * g;
    }
    return r;
}

BigFloat eval_float(const PiHalfPoly& x, Precision prec) {
    const long work = prec.bits + 32;
    BigFloat acc(work);
    if (x.is_zero()) return BigFloat(prec.bits);
    const BigFloat root = BigFloat::sqrt_pi(work);
    for (const auto& [d, c] : x.terms()) {
        acc += BigFloat(c, work) * root.pow(static_cast<unsigned long>(d));
    }
    BigFloat out(prec.bits);
    mpfr_set(out.get(), acc.get(), MPFR_RNDN);
    return out;
}

double eval_double(const PiHalfPoly& x) { return eval_float(x, Precision(128)).to_double(); }

double to_double(const GammaMonomial& m) {
    if (m.is_zero()) return 0.0;
    BigFloat v(m.coeff(), 128);
    const BigFloat root = BigFloat::sqrt_pi(128);
    if (m.sqrtpi_power() >= 0) v *= root.pow(static_cast<unsigned long>(m.sqrtpi_power()));
    else v /= root.pow(static_cast<unsigned long>(-m.sqrtpi_power()));
    return v.to_double();
}

} // namespace negm
