#include "verify.hpp"

#include "exact_scalar.hpp"
#include "moment_engine.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace negm {

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

std::string pair_label(unsigned k, unsigned l) {
    return "(" + std::to_string(k) + "," + std::to_string(l) + ")";
}

// First failing index pair, or empty.
std::string scan_pairs(unsigned limit, const std::function<bool(unsigned, unsigned)>& ok) {
    for (unsigned k = 0; k <= limit; ++k)
        for (unsigned l = 0; l <= limit; ++l)
            if (!ok(k, l)) return "fails at " + pair_label(k, l);
    return {};
}

VerifyCheck make(std::string name, std::string failure, std::string scope) {
    VerifyCheck c;
    c.name = std::move(name);
    c.passed = failure.empty();
    c.detail = c.passed ? std::move(scope) : std::move(failure);
    return c;
}

} // namespace

std::vector<VerifyCheck> run_verify(const VerifyOptions& options) {
    if (options.max_mu < 2) throw std::invalid_argument("max_mu must be at least 2");
    const unsigned m = options.max_mu;
    const unsigned threads = std::max(1u, options.threads);
    std::vector<VerifyCheck> out;
    const std::string upto = "k,l <= " + std::to_string(m);

    out.push_back(make("I symmetry", scan_pairs(m, [](unsigned k, unsigned l) {
                           return i_integral(k, l, Beta::Half) == i_integral(l, k, Beta::Half);
                       }),
                       upto));

    out.push_back(make("orthogonality (beta=0)", scan_pairs(m, [](unsigned k, unsigned l) {
                           return i_integral(k, l, Beta::Zero) == GammaMonomial(q(k == l ? 1 : 0), 0);
                       }),
                       upto));

    out.push_back(make("tridiagonal (beta=1)", scan_pairs(m, [](unsigned k, unsigned l) {
                           Rational expected = 0;
                           if (k == l) expected = 2 * k + 1;
                           else if (l == k + 1 || k == l + 1) expected = -static_cast<long>(std::max(k, l));
                           return i_integral(k, l, Beta::One) == GammaMonomial(expected, 0);
                       }),
                       upto));

    const unsigned hyper = std::min(m, 32u);
    out.push_back(make("3F2 path", scan_pairs(hyper, [](unsigned k, unsigned l) {
                           return i_via_3f2(k, l) == i_integral(k, l, Beta::Half);
                       }),
                       "k,l <= " + std::to_string(hyper)));

    const unsigned quad = std::min(m, 20u);
    double worst = 0.0;
    const std::string quad_fail = scan_pairs(quad, [&](unsigned k, unsigned l) {
        const std::pair<Beta, double> betas[] = {{Beta::Zero, 0.0}, {Beta::Half, 0.5}, {Beta::One, 1.0}};
        for (const auto& [beta, b] : betas) {
            const double err = std::fabs(i_quadrature_oracle(k, l, b, k + l + 2) - to_double(i_integral(k, l, beta)));
            worst = std::max(worst, err);
            if (!(err < 1e-9)) return false;
        }
        return true;
    });
    char buf[96];
    std::snprintf(buf, sizeof buf, "k,l <= %u, max abs error %.2e", quad, worst);
    out.push_back(make("Gauss-Laguerre quadrature", quad_fail, buf));

    const unsigned naive = std::min(m, 8u);
    std::string naive_fail;
    for (unsigned mu = 1; mu <= naive && naive_fail.empty(); ++mu) {
        const IMatrix one = build_i_matrix(mu, Beta::One, threads);
        const IMatrix half = build_i_matrix(mu, Beta::Half, threads);
        for (DetPattern p : {DetPattern::PairHalf, DetPattern::PairOne, DetPattern::Triple, DetPattern::Quad}) {
            if (det_moment_sum(one, half, p, SumMethod::Naive, threads) !=
                det_moment_sum(one, half, p, SumMethod::TraceExpansion, threads)) {
                naive_fail = "fails at mu=" + std::to_string(mu);
                break;
            }
        }
    }
    out.push_back(make("naive vs trace expansion", naive_fail, "mu <= " + std::to_string(naive)));

    // <sum_{i!=j} p_i p_j> = 1 - <purity> = (mu-1)^2 / (mu^2+1).
    const unsigned pair_limit = std::min(m, 32u);
    std::string pair_fail;
    for (unsigned mu = 1; mu <= pair_limit; ++mu) {
        const long a = static_cast<long>(mu) - 1;
        if (mean_pair_product(mu, threads) != PiHalfPoly(q(a * a, static_cast<long>(mu) * mu + 1))) {
            pair_fail = "fails at mu=" + std::to_string(mu);
            break;
        }
    }
    out.push_back(make("pair product identity", pair_fail, "mu <= " + std::to_string(pair_limit)));

    std::string var_fail;
    for (unsigned mu = 1; mu <= m; ++mu) {
        const ExactMoments e = exact_moments(mu, threads);
        const bool ok = e.variance * Rational(4) + e.second * e.second == e.fourth &&
                        e.second == PiHalfPoly(q(1)) + mean_negativity(mu, threads) * Rational(2) &&
                        eval_double(e.variance) >= 0.0;
        if (!ok) {
            var_fail = "fails at mu=" + std::to_string(mu);
            break;
        }
    }
    out.push_back(make("variance identity", var_fail, "mu <= " + std::to_string(m)));
    return out;
}

} // namespace negm
