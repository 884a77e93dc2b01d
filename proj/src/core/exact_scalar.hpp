#pragma once

#include "big_float.hpp"

#include <gmpxx.h>

#include <map>
#include <stdexcept>
#include <string>

namespace negm {

using Rational = mpq_class;

/// num/den reduced to lowest terms.
inline Rational make_rational(long num, long den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// "num/den" with den > 0; integers carry an explicit "/1".
std::string to_fraction_string(const Rational& value);
/// Accepts "num/den" or a bare integer. Throws std::invalid_argument.
Rational parse_fraction(const std::string& text);

/// A value n/2 stored as the integer n.
struct HalfInt {
    long twice = 0;

    static constexpr HalfInt integer(long v) { return HalfInt{2 * v}; }
    static constexpr HalfInt half_odd(long v) { return HalfInt{2 * v + 1}; }  // v + 1/2

    constexpr bool is_integer() const { return twice % 2 == 0; }
    Rational value() const { return make_rational(twice, 2); }

    friend constexpr HalfInt operator+(HalfInt h, long n) { return HalfInt{h.twice + 2 * n}; }
    friend constexpr bool operator==(HalfInt, HalfInt) = default;
};

class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// coeff * (sqrt pi)^sqrtpi_power. The power may be negative for reciprocal
/// Gamma values. Zero is always stored with power 0.
class GammaMonomial {
public:
    GammaMonomial() = default;
    GammaMonomial(Rational coeff, int sqrtpi_power);

    const Rational& coeff() const { return coeff_; }
    int sqrtpi_power() const { return power_; }
    bool is_zero() const { return sgn(coeff_) == 0; }

    friend GammaMonomial operator*(const GammaMonomial& a, const GammaMonomial& b);
    friend GammaMonomial operator*(const GammaMonomial& a, const Rational& b);
    /// Defined only when both sides share a power (or one is zero).
    friend GammaMonomial operator+(const GammaMonomial& a, const GammaMonomial& b);
    GammaMonomial& operator+=(const GammaMonomial& b) { return *this = *this + b; }
    GammaMonomial operator-() const { return GammaMonomial(-coeff_, power_); }

    friend bool operator==(const GammaMonomial& a, const GammaMonomial& b) {
        return a.power_ == b.power_ && a.coeff_ == b.coeff_;
    }

private:
    Rational coeff_{0};
    int power_ = 0;
};

/// Polynomial in sqrt(pi) with rational coefficients. Degrees are >= 0 and
/// zero coefficients are never stored.
class PiHalfPoly {
public:
    using Terms = std::map<int, Rational>;

    PiHalfPoly() = default;
    explicit PiHalfPoly(const Rational& constant);
    PiHalfPoly(int degree, const Rational& coeff);
    /// Throws std::domain_error for a monomial with negative power.
    static PiHalfPoly from_monomial(const GammaMonomial& m);

    const Terms& terms() const { return terms_; }
    Rational coeff(int degree) const;
    bool is_zero() const { return terms_.empty(); }
    int max_degree() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    PiHalfPoly& operator+=(const PiHalfPoly& rhs);
    PiHalfPoly& operator-=(const PiHalfPoly& rhs);
    PiHalfPoly& operator*=(const PiHalfPoly& rhs);
    PiHalfPoly& operator*=(const Rational& rhs);
    PiHalfPoly& operator/=(const Rational& rhs);

    friend PiHalfPoly operator+(PiHalfPoly a, const PiHalfPoly& b) { return a += b; }
    friend PiHalfPoly operator-(PiHalfPoly a, const PiHalfPoly& b) { return a -= b; }
    friend PiHalfPoly operator*(PiHalfPoly a, const PiHalfPoly& b) { return a *= b; }
    friend PiHalfPoly operator*(PiHalfPoly a, const Rational& b) { return a *= b; }
    friend PiHalfPoly operator/(PiHalfPoly a, const Rational& b) { return a /= b; }
    PiHalfPoly operator-() const;

    friend bool operator==(const PiHalfPoly& a, const PiHalfPoly& b) { return a.terms_ == b.terms_; }

    std::string to_string() const;

private:
    void add_term(int degree, const Rational& coeff);
    Terms terms_;
};

struct Precision {
    long bits = 256;

    explicit Precision(long b = 256) : bits(b) {
        if (b < 53) throw std::invalid_argument("precision must be at least 53 bits");
    }
};

enum class Beta { Zero, Half, One };

enum class Direction { Rising, Falling };

GammaMonomial gamma_half(HalfInt h);
GammaMonomial reciprocal_gamma_half(HalfInt h);
Rational pochhammer(const Rational& a, unsigned n, Direction direction);
Rational laguerre_eval(unsigned k, const Rational& x);
Rational binomial(unsigned n, unsigned k);
Rational factorial(unsigned n);

/// Exact value of  integral_0^inf e^{-q} q^beta L_k(q) L_l(q) dq  from the
/// terminating binomial sum.
GammaMonomial i_integral(unsigned k, unsigned l, Beta beta);

/// Same integral at beta = 1/2 via the terminating 3F2 series at unit argument.
GammaMonomial i_via_3f2(unsigned k, unsigned l);

class InsufficientNodesError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Generalized Gauss-Laguerre evaluation of the same integral, weight q^beta e^{-q}.
/// Requires nodes >= k + l + 2.
double i_quadrature_oracle(unsigned k, unsigned l, double beta, unsigned nodes);

/// Normalization integral of the squared Vandermonde times e^{-sum q}: mu! * prod Gamma(k)^2.
Rational qbar(unsigned mu);

BigFloat eval_float(const PiHalfPoly& x, Precision prec);
double eval_double(const PiHalfPoly& x);
double to_double(const GammaMonomial& m);

} // namespace negm
