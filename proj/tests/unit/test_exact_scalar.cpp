#include <doctest.h>

#include "exact_scalar.hpp"

#include <cmath>
#include <random>
#include <vector>

using namespace negm;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

// Direct integration: expand L_k L_l into monomials q^j and integrate
// e^{-q} q^{beta + j} = Gamma(beta + j + 1) term by term.
GammaMonomial integrate_by_moments(unsigned k, unsigned l, long twice_beta) {
    auto coeffs = [](unsigned n) {
        std::vector<Rational> c(n + 1);
        for (unsigned j = 0; j <= n; ++j) {
            c[j] = binomial(n, j) / factorial(j);
            if (j % 2 == 1) c[j] = -c[j];
        }
        return c;
    };
    const auto a = coeffs(k);
    const auto b = coeffs(l);
    GammaMonomial total;
    for (unsigned i = 0; i <= k; ++i) {
        for (unsigned j = 0; j <= l; ++j) {
            const GammaMonomial g = gamma_half(HalfInt{twice_beta + 2 * static_cast<long>(i + j) + 2});
            total += g * (a[i] * b[j]);
        }
    }
    return total;
}

// mu! det[(i+j)!] by exact elimination (Andreief identity for the Laguerre weight).
Rational hankel_qbar(unsigned mu) {
    std::vector<std::vector<Rational>> m(mu, std::vector<Rational>(mu));
    for (unsigned i = 0; i < mu; ++i)
        for (unsigned j = 0; j < mu; ++j) m[i][j] = factorial(i + j);
    Rational det(1);
    for (unsigned c = 0; c < mu; ++c) {
        det *= m[c][c];
        for (unsigned r = c + 1; r < mu; ++r) {
            const Rational f = m[r][c] / m[c][c];
            for (unsigned j = c; j < mu; ++j) m[r][j] -= f * m[c][j];
        }
    }
    return det * factorial(mu);
}

Rational random_rational(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-1000, 1000);
    std::uniform_int_distribution<long> den(1, 97);
    return q(num(rng), den(rng));
}

PiHalfPoly random_poly(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> deg(0, 4);
    PiHalfPoly p;
    for (int i = 0; i < 3; ++i) p += PiHalfPoly(deg(rng), random_rational(rng));
    return p;
}

bool no_zero_terms(const PiHalfPoly& p) {
    for (const auto& [d, c] : p.terms())
        if (sgn(c) == 0) return false;
    return true;
}

} // namespace

TEST_CASE("gamma at half-integers") {
    CHECK(gamma_half(HalfInt::integer(1)) == GammaMonomial(q(1), 0));
    CHECK(gamma_half(HalfInt::integer(5)) == GammaMonomial(q(24), 0));
    CHECK(gamma_half(HalfInt::half_odd(1)) == GammaMonomial(q(1, 2), 1));
    CHECK(gamma_half(HalfInt{-1}) == GammaMonomial(q(-2), 1));
    CHECK(gamma_half(HalfInt{-3}) == GammaMonomial(q(4, 3), 1));
    CHECK_THROWS_AS(gamma_half(HalfInt::integer(0)), PoleError);
    CHECK_THROWS_AS(gamma_half(HalfInt::integer(-3)), PoleError);
}

TEST_CASE("reciprocal gamma vanishes at poles") {
    CHECK(reciprocal_gamma_half(HalfInt::integer(-1)).is_zero());
    CHECK(reciprocal_gamma_half(HalfInt::integer(0)).is_zero());
    CHECK(reciprocal_gamma_half(HalfInt::integer(2)) == GammaMonomial(q(1), 0));
    CHECK(reciprocal_gamma_half(HalfInt::half_odd(1)) == GammaMonomial(q(2), -1));
    for (long twice = -9; twice <= 15; twice += 2) {
        const GammaMonomial prod = gamma_half(HalfInt{twice}) * reciprocal_gamma_half(HalfInt{twice});
        CHECK(prod == GammaMonomial(q(1), 0));
    }
}

TEST_CASE("pochhammer symbols") {
    CHECK(pochhammer(q(3), 2, Direction::Rising) == 12);
    CHECK(pochhammer(q(-2), 3, Direction::Rising) == 0);
    CHECK(pochhammer(q(7, 3), 0, Direction::Falling) == 1);
    CHECK(pochhammer(q(5), 3, Direction::Falling) == 60);
    CHECK(pochhammer(q(1, 2), 2, Direction::Rising) == q(3, 4));
}

TEST_CASE("laguerre recurrence") {
    CHECK(laguerre_eval(0, q(17, 3)) == 1);
    CHECK(laguerre_eval(1, q(3)) == -2);
    CHECK(laguerre_eval(2, q(2)) == -1);
    // L_3(x) = 1 - 3x + 3x^2/2 - x^3/6
    const Rational x = q(5, 7);
    CHECK(laguerre_eval(3, x) == 1 - 3 * x + 3 * x * x / 2 - x * x * x / 6);
}

TEST_CASE("I integral worked values") {
    CHECK(i_integral(0, 0, Beta::Half) == GammaMonomial(q(1, 2), 1));
    CHECK(i_integral(0, 1, Beta::Half) == GammaMonomial(q(-1, 4), 1));
    CHECK(i_integral(1, 1, Beta::Half) == GammaMonomial(q(7, 8), 1));
    CHECK(i_integral(0, 1, Beta::One) == GammaMonomial(q(-1), 0));
    CHECK(i_integral(3, 3, Beta::Zero) == GammaMonomial(q(1), 0));
    CHECK(i_integral(2, 5, Beta::Zero).is_zero());
}

TEST_CASE("I integral equals direct moment integration") {
    for (unsigned k = 0; k <= 9; ++k) {
        for (unsigned l = 0; l <= 9; ++l) {
            CHECK(i_integral(k, l, Beta::Zero) == integrate_by_moments(k, l, 0));
            CHECK(i_integral(k, l, Beta::Half) == integrate_by_moments(k, l, 1));
            CHECK(i_integral(k, l, Beta::One) == integrate_by_moments(k, l, 2));
        }
    }
}

TEST_CASE("I integral structural invariants") {
    for (unsigned k = 0; k <= 24; ++k) {
        for (unsigned l = 0; l <= 24; ++l) {
            CHECK(i_integral(k, l, Beta::Half) == i_integral(l, k, Beta::Half));
            CHECK(i_integral(k, l, Beta::Zero) == GammaMonomial(q(k == l ? 1 : 0), 0));
            const GammaMonomial one = i_integral(k, l, Beta::One);
            if (k == l) CHECK(one == GammaMonomial(q(2 * k + 1), 0));
            else if (l == k + 1) CHECK(one == GammaMonomial(q(-static_cast<long>(k) - 1), 0));
            else if (k == l + 1) CHECK(one == GammaMonomial(q(-static_cast<long>(l) - 1), 0));
            else CHECK(one.is_zero());
        }
    }
}

TEST_CASE("3F2 path agrees with the binomial sum") {
    CHECK(i_via_3f2(0, 0) == GammaMonomial(q(1, 2), 1));
    CHECK(i_via_3f2(1, 1) == GammaMonomial(q(7, 8), 1));
    CHECK(i_via_3f2(5, 3) == i_integral(5, 3, Beta::Half));
    for (unsigned k = 0; k <= 12; ++k)
        for (unsigned l = 0; l <= 12; ++l) CHECK(i_via_3f2(k, l) == i_integral(k, l, Beta::Half));
}

TEST_CASE("quadrature oracle") {
    CHECK(i_quadrature_oracle(0, 0, 0.0, 2) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::fabs(i_quadrature_oracle(0, 0, 0.5, 2) - 0.886226925452758) < 1e-10);
    CHECK(std::fabs(i_quadrature_oracle(3, 5, 1.0, 10) - to_double(i_integral(3, 5, Beta::One))) < 1e-10);
    CHECK_THROWS_AS(i_quadrature_oracle(3, 5, 1.0, 9), InsufficientNodesError);
    for (unsigned k = 0; k <= 20; k += 4) {
        for (unsigned l = 0; l <= 20; l += 3) {
            const double exact = to_double(i_integral(k, l, Beta::Half));
            CHECK(std::fabs(i_quadrature_oracle(k, l, 0.5, k + l + 2) - exact) < 1e-9);
        }
    }
}

TEST_CASE("qbar closed form") {
    CHECK(qbar(1) == 1);
    CHECK(qbar(2) == 2);
    CHECK(qbar(3) == 24);
    for (unsigned mu = 1; mu <= 7; ++mu) CHECK(qbar(mu) == hankel_qbar(mu));
    CHECK_THROWS(qbar(0));
}

TEST_CASE("floating evaluation of sqrt(pi) polynomials") {
    CHECK(eval_float(PiHalfPoly(1, q(1, 2)), Precision(256)).to_string(17) == "0.88622692545275801");
    CHECK(eval_float(PiHalfPoly(), Precision(256)).to_double() == 0.0);
    PiHalfPoly p = PiHalfPoly(q(7, 5)) + PiHalfPoly(2, q(3, 8));
    CHECK(eval_double(p) == doctest::Approx(7.0 / 5 + 3 * M_PI / 8).epsilon(1e-15));
    CHECK_THROWS(Precision(52));
}

TEST_CASE("PiHalfPoly ring laws on random inputs") {
    std::mt19937_64 rng(20240611);
    for (int trial = 0; trial < 200; ++trial) {
        const PiHalfPoly a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        CHECK(no_zero_terms(a * b - c));
    }
}

TEST_CASE("rational text form") {
    CHECK(to_fraction_string(q(3, 32)) == "3/32");
    CHECK(to_fraction_string(q(-4, 2)) == "-2/1");
    CHECK(parse_fraction("6/8") == q(3, 4));
    CHECK(parse_fraction("-5") == q(-5));
    CHECK_THROWS_AS(parse_fraction("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_fraction("abc"), std::invalid_argument);
}
