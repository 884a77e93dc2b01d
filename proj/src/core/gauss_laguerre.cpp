#include "exact_scalar.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace negm {

namespace {

struct Rule {
    std::vector<long double> nodes;
    std::vector<long double> weights;
};

// Generalized Gauss-Laguerre rule for weight x^alpha e^{-x}: Newton iteration on
// L_n^alpha with the usual asymptotic starting guesses, weights from L_{n-1}^alpha.
Rule gauss_laguerre_rule(unsigned n, long double alpha) {
    Rule rule{std::vector<long double>(n), std::vector<long double>(n)};
    const long double nn = n;
    long double z = 0;
    for (unsigned i = 0; i < n; ++i) {
        if (i == 0) {
            z = (1 + alpha) * (3 + 0.92L * alpha) / (1 + 2.4L * nn + 1.8L * alpha);
        } else if (i == 1) {
            z += (15 + 6.25L * alpha) / (1 + 0.9L * alpha + 2.5L * nn);
        } else {
            const long double ai = i - 1;
            z += ((1 + 2.55L * ai) / (1.9L * ai) + 1.26L * ai * alpha / (1 + 3.5L * ai)) *
                 (z - rule.nodes[i - 2]) / (1 + 0.3L * alpha);
        }
        long double p1 = 0, p2 = 0, pp = 0;
        for (int iter = 0; iter < 200; ++iter) {
            p1 = 1;
            p2 = 0;
            for (unsigned j = 1; j <= n; ++j) {
                const long double p3 = p2;
                p2 = p1;
                p1 = ((2 * j - 1 + alpha - z) * p2 - (j - 1 + alpha) * p3) / j;
            }
            pp = (nn * p1 - (nn + alpha) * p2) / z;
            const long double z1 = z;
            z = z1 - p1 / pp;
            if (std::fabs(z - z1) <= 1e-17L * std::fabs(z)) break;
        }
        rule.nodes[i] = z;
        rule.weights[i] = -std::exp(std::lgamma(alpha + nn) - std::lgamma(nn)) / (pp * nn * p2);
    }
    return rule;
}

long double laguerre_ld(unsigned k, long double x) {
    long double prev = 1;
    if (k == 0) return prev;
    long double cur = 1 - x;
    for (unsigned j = 1; j < k; ++j) {
        const long double next = ((2 * j + 1 - x) * cur - j * prev) / (j + 1);
        prev = cur;
        cur = next;
    }
    return cur;
}

} // namespace

double i_quadrature_oracle(unsigned k, unsigned l, double beta, unsigned nodes) {
    if (nodes < k + l + 2) {
        throw InsufficientNodesError("quadrature needs at least k + l + 2 = " +
                                     std::to_string(k + l + 2) + " nodes, got " +
                                     std::to_string(nodes));
    }
    if (!(beta > -1.0)) throw std::invalid_argument("quadrature weight exponent must exceed -1");
    const Rule rule = gauss_laguerre_rule(nodes, beta);
    long double sum = 0;
    for (unsigned i = 0; i < nodes; ++i) {
        sum += rule.weights[i] * laguerre_ld(k, rule.nodes[i]) * laguerre_ld(l, rule.nodes[i]);
    }
    return static_cast<double>(sum);
}

} // namespace negm
