#include "moment_engine.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <string>

namespace negm {

IMatrix::IMatrix(unsigned mu, Beta beta, std::vector<GammaMonomial> entries)
    : mu_(mu), beta_(beta), entries_(std::move(entries)) {
    if (beta == Beta::Zero) throw std::invalid_argument("I-matrix beta must be 1/2 or 1");
    if (entries_.size() != static_cast<std::size_t>(mu) * mu) {
        throw std::invalid_argument("I-matrix entry count does not match mu");
    }
}

IMatrix build_i_matrix(unsigned mu, Beta beta, unsigned threads) {
    if (mu < 1) throw std::invalid_argument("mu must be >= 1");
    if (beta == Beta::Zero) throw std::invalid_argument("I-matrix beta must be 1/2 or 1");
    std::vector<GammaMonomial> entries(static_cast<std::size_t>(mu) * mu);
    // Row k fills the upper triangle l >= k; the binomial sum runs over t <= k.
    parallel_for(mu, threads, [&](std::size_t k) {
        for (unsigned l = static_cast<unsigned>(k); l < mu; ++l) {
            entries[k * mu + l] = i_integral(static_cast<unsigned>(k), l, beta);
        }
    });
    for (unsigned k = 0; k < mu; ++k) {
        for (unsigned l = 0; l < k; ++l) entries[k * mu + l] = entries[l * mu + k];
    }
    return IMatrix(mu, beta, std::move(entries));
}

namespace {

// ---------------------------------------------------------------- dense helpers

template <class T>
struct Dense {
    unsigned n = 0;
    std::vector<T> a;

    Dense(unsigned size, const T& zero) : n(size), a(static_cast<std::size_t>(size) * size, zero) {}
    T& operator()(unsigned i, unsigned j) { return a[static_cast<std::size_t>(i) * n + j]; }
    const T& operator()(unsigned i, unsigned j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

bool is_zero(const mpz_class& x) { return sgn(x) == 0; }
bool is_zero(const BigFloat& x) { return x.is_zero(); }

mpz_class times(const mpz_class& x, long k) { return x * k; }
BigFloat times(const BigFloat& x, long k) { return x * BigFloat(static_cast<double>(k), x.bits()); }

template <class T>
T trace(const Dense<T>& x, T acc) {
    for (unsigned i = 0; i < x.n; ++i) acc += x(i, i);
    return acc;
}

// sum_{i,j} x_ij y_ji
template <class T>
T trace_product(const Dense<T>& x, const Dense<T>& y, T acc) {
    for (unsigned i = 0; i < x.n; ++i) {
        for (unsigned j = 0; j < x.n; ++j) {
            if (is_zero(x(i, j))) continue;
            acc += x(i, j) * y(j, i);
        }
    }
    return acc;
}

template <class T>
Dense<T> multiply(const Dense<T>& x, const Dense<T>& y, const T& zero, unsigned threads) {
    Dense<T> out(x.n, zero);
    parallel_for(x.n, threads, [&](std::size_t i) {
        const auto row = static_cast<unsigned>(i);
        for (unsigned k = 0; k < x.n; ++k) {
            if (is_zero(x(row, k))) continue;
            for (unsigned j = 0; j < x.n; ++j) out(row, j) += x(row, k) * y(k, j);
        }
    });
    return out;
}

// Determinant sums over unrestricted tuples, expanded over permutation cycle
// types into traces:
//   pair(X)    = tr(X)^2 - tr(X^2)
//   triple     = trA trB^2 - 2 tr(AB) trB - trA tr(B^2) + 2 tr(AB^2)
//   quad(B)    = t1^4 - 6 t1^2 t2 + 3 t2^2 + 8 t1 t3 - 6 t4,  tk = tr(B^k)
template <class T>
T pair_sum(const Dense<T>& x, const T& zero) {
    const T t1 = trace(x, zero);
    return t1 * t1 - trace_product(x, x, zero);
}

template <class T>
struct HigherSums {
    T pair_one;
    T triple;
    T quad;
};

template <class T>
HigherSums<T> higher_sums(const Dense<T>& a, const Dense<T>& b, const T& zero, unsigned threads) {
    const Dense<T> b2 = multiply(b, b, zero, threads);
    const T ta = trace(a, zero);
    const T t1 = trace(b, zero);
    const T t2 = trace(b2, zero);
    const T t3 = trace_product(b2, b, zero);
    const T t4 = trace_product(b2, b2, zero);
    const T tab = trace_product(a, b, zero);
    const T tab2 = trace_product(a, b2, zero);

    T pair_one = ta * ta - trace_product(a, a, zero);
    T triple = T(ta * t1 * t1) - times(T(tab * t1), 2) - T(ta * t2) + times(tab2, 2);
    const T t1sq = t1 * t1;
    T quad = T(t1sq * t1sq) - times(T(t1sq * t2), 6) + times(T(t2 * t2), 3) +
             times(T(t1 * t3), 8) - times(t4, 6);
    return {std::move(pair_one), std::move(triple), std::move(quad)};
}

// ---------------------------------------------------------------- exact path

struct ScaledMatrix {
    Dense<mpz_class> values;  // entry coefficient = values(i,j) / scale
    mpz_class scale;
};

ScaledMatrix scale_to_integers(const IMatrix& m) {
    mpz_class scale = 1;
    for (unsigned i = 0; i < m.mu(); ++i) {
        for (unsigned j = 0; j < m.mu(); ++j) {
            mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), m(i, j).coeff().get_den_mpz_t());
        }
    }
    ScaledMatrix out{Dense<mpz_class>(m.mu(), mpz_class(0)), scale};
    for (unsigned i = 0; i < m.mu(); ++i) {
        for (unsigned j = 0; j < m.mu(); ++j) {
            const Rational& c = m(i, j).coeff();
            out.values(i, j) = c.get_num() * (scale / c.get_den());
        }
    }
    return out;
}

Rational ratio(const mpz_class& num, const mpz_class& den) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

mpz_class power(const mpz_class& x, unsigned e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), x.get_mpz_t(), e);
    return r;
}

void check_pair(const IMatrix& one, const IMatrix& half) {
    if (one.beta() != Beta::One || half.beta() != Beta::Half) {
        throw std::invalid_argument("expected a beta=1 matrix and a beta=1/2 matrix");
    }
    if (one.mu() != half.mu()) throw std::invalid_argument("I-matrix sizes differ");
}

PiHalfPoly trace_expansion_sum(const IMatrix& one, const IMatrix& half, DetPattern pattern,
                               unsigned threads) {
    const mpz_class zero(0);
    if (pattern == DetPattern::PairHalf || pattern == DetPattern::PairOne) {
        const IMatrix& x = pattern == DetPattern::PairHalf ? half : one;
        const ScaledMatrix s = scale_to_integers(x);
        return PiHalfPoly(2 * x.sqrtpi_power(), ratio(pair_sum(s.values, zero), s.scale * s.scale));
    }
    const ScaledMatrix a = scale_to_integers(one);
    const ScaledMatrix b = scale_to_integers(half);
    const HigherSums<mpz_class> h = higher_sums(a.values, b.values, zero, threads);
    if (pattern == DetPattern::Triple) {
        return PiHalfPoly(2, ratio(h.triple, a.scale * b.scale * b.scale));
    }
    return PiHalfPoly(4, ratio(h.quad, power(b.scale, 4)));
}

// Leibniz expansion of det[ J_a(idx[a], idx[b]) ]_{a,b} for n <= 4.
template <std::size_t N>
GammaMonomial leibniz(const std::array<const IMatrix*, N>& rows, const std::array<unsigned, N>& idx) {
    std::array<unsigned, N> perm;
    std::iota(perm.begin(), perm.end(), 0u);
    GammaMonomial det;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < N; ++i) {
            for (std::size_t j = i + 1; j < N; ++j) inversions += perm[i] > perm[j];
        }
        GammaMonomial term(Rational(inversions % 2 == 0 ? 1 : -1), 0);
        for (std::size_t a = 0; a < N && !term.is_zero(); ++a) {
            term = term * (*rows[a])(idx[a], idx[perm[a]]);
        }
        det += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

PiHalfPoly naive_sum(const IMatrix& one, const IMatrix& half, DetPattern pattern, unsigned threads) {
    const unsigned mu = one.mu();
    std::vector<GammaMonomial> partial(mu);
    parallel_for(mu, threads, [&](std::size_t first) {
        const auto k = static_cast<unsigned>(first);
        GammaMonomial acc;
        switch (pattern) {
            case DetPattern::PairHalf:
            case DetPattern::PairOne: {
                const IMatrix* x = pattern == DetPattern::PairHalf ? &half : &one;
                for (unsigned l = 0; l < mu; ++l) acc += leibniz<2>({x, x}, {k, l});
                break;
            }
            case DetPattern::Triple:
                for (unsigned l = 0; l < mu; ++l) {
                    for (unsigned m = 0; m < mu; ++m) acc += leibniz<3>({&one, &half, &half}, {k, l, m});
                }
                break;
            case DetPattern::Quad:
                for (unsigned l = 0; l < mu; ++l) {
                    for (unsigned m = 0; m < mu; ++m) {
                        for (unsigned n = 0; n < mu; ++n) {
                            acc += leibniz<4>({&half, &half, &half, &half}, {k, l, m, n});
                        }
                    }
                }
                break;
        }
        partial[first] = acc;
    });
    GammaMonomial total;
    for (const auto& p : partial) total += p;
    return PiHalfPoly::from_monomial(total);
}

Rational mu_sq(unsigned mu) { return Rational(static_cast<unsigned long>(mu) * mu); }

Rational mu_sq_sq_plus(unsigned mu) {
    const unsigned long m2 = static_cast<unsigned long>(mu) * mu;
    return Rational(m2 * (m2 + 1));
}

} // namespace

PiHalfPoly det_moment_sum(const IMatrix& one, const IMatrix& half, DetPattern pattern,
                          SumMethod method, unsigned threads) {
    check_pair(one, half);
    return method == SumMethod::Naive ? naive_sum(one, half, pattern, threads)
                                      : trace_expansion_sum(one, half, pattern, threads);
}

PiHalfPoly det_moment_sum(unsigned mu, DetPattern pattern, SumMethod method, unsigned threads) {
    const IMatrix one = build_i_matrix(mu, Beta::One, threads);
    const IMatrix half = build_i_matrix(mu, Beta::Half, threads);
    return det_moment_sum(one, half, pattern, method, threads);
}

PiHalfPoly mean_negativity(unsigned mu, unsigned threads) {
    const IMatrix half = build_i_matrix(mu, Beta::Half, threads);
    const ScaledMatrix s = scale_to_integers(half);
    const PiHalfPoly pair(2, ratio(pair_sum(s.values, mpz_class(0)), s.scale * s.scale));
    return pair / (2 * mu_sq(mu));
}

PiHalfPoly mean_pair_product(unsigned mu, unsigned threads) {
    const IMatrix one = build_i_matrix(mu, Beta::One, threads);
    const ScaledMatrix s = scale_to_integers(one);
    const PiHalfPoly pair(0, ratio(pair_sum(s.values, mpz_class(0)), s.scale * s.scale));
    return pair / mu_sq_sq_plus(mu);
}

ExactMoments exact_moments(unsigned mu, unsigned threads) {
    const IMatrix one = build_i_matrix(mu, Beta::One, threads);
    const IMatrix half = build_i_matrix(mu, Beta::Half, threads);
    const Rational first_scale = mu_sq(mu);
    const Rational second_scale = mu_sq_sq_plus(mu);

    const PiHalfPoly a = det_moment_sum(one, half, DetPattern::PairHalf, SumMethod::TraceExpansion, threads) / first_scale;
    ExactMoments out;
    out.pair_product = det_moment_sum(one, half, DetPattern::PairOne, SumMethod::TraceExpansion, threads) / second_scale;
    const PiHalfPoly c = det_moment_sum(one, half, DetPattern::Triple, SumMethod::TraceExpansion, threads) / second_scale;
    const PiHalfPoly d = det_moment_sum(one, half, DetPattern::Quad, SumMethod::TraceExpansion, threads) / second_scale;

    out.mean = a / Rational(2);
    out.second = PiHalfPoly(Rational(1)) + a;
    out.fourth = PiHalfPoly(Rational(1)) + a * Rational(2) + out.pair_product * Rational(2) +
                 c * Rational(4) + d;
    out.variance = (out.fourth - out.second * out.second) / Rational(4);
    return out;
}

PiHalfPoly fourth_moment(unsigned mu, unsigned threads) { return exact_moments(mu, threads).fourth; }

PiHalfPoly variance_negativity(unsigned mu, unsigned threads) {
    return exact_moments(mu, threads).variance;
}

// ---------------------------------------------------------------- floating path

namespace {

// Coefficient part of I_kl^(beta) (the sqrt(pi) factor stripped), evaluated
// in floating point at the given precision from the same binomial sum.
Dense<BigFloat> float_coefficients(unsigned mu, Beta beta, long bits, unsigned threads) {
    const BigFloat zero(bits);
    const BigFloat one(1.0, bits);
    const bool half = beta == Beta::Half;

    // g[t] = Gamma(t+b+1) and 1/t!, without the sqrt(pi) factor.
    std::vector<BigFloat> g(mu, zero), inv_fact(mu, zero);
    g[0] = half ? BigFloat(0.5, bits) : one;
    inv_fact[0] = one;
    for (unsigned t = 1; t < mu; ++t) {
        g[t] = g[t - 1] * BigFloat(half ? t + 0.5 : t + 1.0, bits);
        inv_fact[t] = inv_fact[t - 1] / BigFloat(static_cast<double>(t), bits);
    }
    // r[m + mu - 1] = 1/Gamma(m+b+1) (times sqrt(pi) for b = 1/2), m in [-(mu-1), mu-1].
    std::vector<BigFloat> r(2 * static_cast<std::size_t>(mu) - 1, zero);
    const std::size_t origin = mu - 1;
    r[origin] = half ? BigFloat(2.0, bits) : one;
    for (unsigned m = 1; m < mu; ++m) {
        r[origin + m] = r[origin + m - 1] / BigFloat(half ? m + 0.5 : m + 1.0, bits);
    }
    for (unsigned m = 1; m < mu; ++m) {
        // 1/Gamma(x-1) = (x-1)/Gamma(x), x = -m+1+b+1
        const double x_minus_one = half ? 0.5 - (m - 1.0) : 1.0 - (m - 1.0);
        r[origin - m] = r[origin - m + 1] * BigFloat(x_minus_one, bits);
    }

    Dense<BigFloat> out(mu, zero);
    parallel_for(mu, threads, [&](std::size_t row) {
        const auto k = static_cast<unsigned>(row);
        // a[t] = (-1)^t C(k,t) g[t]^2 / t!
        std::vector<BigFloat> a(k + 1, zero);
        BigFloat binom = one;
        for (unsigned t = 0; t <= k; ++t) {
            if (t > 0) binom = binom * BigFloat(static_cast<double>(k - t + 1), bits) /
                               BigFloat(static_cast<double>(t), bits);
            BigFloat v = binom * g[t] * g[t] * inv_fact[t];
            a[t] = (t % 2 == 0) ? v : -v;
        }
        for (unsigned l = k; l < mu; ++l) {
            BigFloat sum = zero;
            for (unsigned t = 0; t <= k; ++t) {
                const BigFloat& rv = r[origin + t - l];
                if (rv.is_zero()) continue;
                sum += a[t] * rv;
            }
            sum *= inv_fact[l];
            out(k, l) = (l % 2 == 0) ? sum : -sum;
        }
    });
    for (unsigned k = 0; k < mu; ++k) {
        for (unsigned l = 0; l < k; ++l) out(k, l) = out(l, k);
    }
    return out;
}

struct FloatEval {
    BigFloat mean;
    std::optional<BigFloat> variance;
};

FloatEval float_eval(unsigned mu, bool with_variance, long bits, unsigned threads) {
    const BigFloat zero(bits);
    const BigFloat pi = BigFloat::pi(bits);
    const BigFloat m2(static_cast<double>(mu) * mu, bits);
    const BigFloat m2p(static_cast<double>(mu) * mu * (static_cast<double>(mu) * mu + 1), bits);

    const Dense<BigFloat> b = float_coefficients(mu, Beta::Half, bits, threads);
    const BigFloat a = pair_sum(b, zero) * pi / m2;
    FloatEval out{a / BigFloat(2.0, bits), std::nullopt};
    if (!with_variance) return out;

    const Dense<BigFloat> one = float_coefficients(mu, Beta::One, bits, threads);
    const HigherSums<BigFloat> h = higher_sums(one, b, zero, threads);
    const BigFloat pair_one = h.pair_one / m2p;
    const BigFloat c = h.triple * pi / m2p;
    const BigFloat d = h.quad * pi * pi / m2p;
    const BigFloat unit(1.0, bits);
    const BigFloat fourth = unit + a * BigFloat(2.0, bits) + pair_one * BigFloat(2.0, bits) +
                            c * BigFloat(4.0, bits) + d;
    const BigFloat second = unit + a;
    out.variance = (fourth - second * second) / BigFloat(4.0, bits);
    return out;
}

bool agrees(const BigFloat& coarse, const BigFloat& fine, double tolerance) {
    const BigFloat diff = (coarse - fine).abs();
    if (fine.is_zero()) return diff.is_zero() || diff.to_double() < tolerance;
    return (diff / fine.abs()).to_double() <= tolerance;
}

} // namespace

FloatMoments float_moments(unsigned mu, bool with_variance, Precision start, unsigned threads,
                           double agreement, long max_bits) {
    if (mu < 1) throw std::invalid_argument("mu must be >= 1");
    long bits = start.bits;
    FloatEval coarse = float_eval(mu, with_variance, bits, threads);
    while (true) {
        const long next = bits * 2;
        if (next > max_bits) {
            throw ResourceError("precision doubling did not converge within " +
                                std::to_string(max_bits) + " bits");
        }
        FloatEval fine = float_eval(mu, with_variance, next, threads);
        const bool ok = agrees(coarse.mean, fine.mean, agreement) &&
                        (!with_variance || agrees(*coarse.variance, *fine.variance, agreement));
        bits = next;
        if (ok) return FloatMoments{std::move(fine.mean), std::move(fine.variance), bits};
        coarse = std::move(fine);
    }
}

// ---------------------------------------------------------------- reports

MomentReport normalized_moments(unsigned mu, Precision prec, const EngineOptions& options) {
    if (mu < 2) throw std::invalid_argument("normalized moments need mu >= 2");
    const bool exact_mean = mu <= options.exact_mean_ceiling;
    const bool exact_variance = mu <= options.exact_variance_ceiling;
    if (options.require_exact && (!exact_mean || (options.with_variance && !exact_variance))) {
        throw ResourceError("exact evaluation requested for mu = " + std::to_string(mu) +
                            " beyond the configured ceiling (mean " +
                            std::to_string(options.exact_mean_ceiling) + ", variance " +
                            std::to_string(options.exact_variance_ceiling) + ")");
    }

    MomentReport report;
    report.mu = mu;
    report.n_max = Rational(mu - 1, 2u);
    report.n_max.canonicalize();
    const unsigned threads = options.threads;

    std::optional<double> variance;
    if (options.with_variance && exact_variance) {
        ExactMoments em = exact_moments(mu, threads);
        report.mean_exact = std::move(em.mean);
        report.variance_exact = std::move(em.variance);
        variance = eval_float(*report.variance_exact, prec).to_double();
    } else if (exact_mean) {
        report.mean_exact = mean_negativity(mu, threads);
        if (options.with_variance) {
            variance = float_moments(mu, true, prec, threads).variance->to_double();
        }
    } else {
        FloatMoments fm = float_moments(mu, options.with_variance, prec, threads);
        report.mean_float = fm.mean.to_double();
        if (fm.variance) variance = fm.variance->to_double();
    }
    if (report.mean_exact) report.mean_float = eval_float(*report.mean_exact, prec).to_double();

    const double n_max = report.n_max.get_d();
    report.mean_normalized = report.mean_float / n_max;
    if (variance) {
        report.sigma_float = std::sqrt(std::max(0.0, *variance));
        report.sigma_normalized = *report.sigma_float / n_max;
    }
    return report;
}

unsigned mu_for_qubits(unsigned n_qubits) {
    if (n_qubits < 2 || n_qubits % 2 != 0 || n_qubits > 62) {
        throw std::invalid_argument("qubit count must be even and in [2, 62]");
    }
    return 1u << (n_qubits / 2);
}

std::vector<TableRow> generate_table(std::span<const unsigned> n_list, Precision prec,
                                     const EngineOptions& options) {
    EngineOptions mean_only = options;
    mean_only.with_variance = false;
    std::vector<TableRow> rows;
    rows.reserve(n_list.size());
    for (const unsigned n : n_list) {
        const unsigned mu = mu_for_qubits(n);
        const MomentReport report = normalized_moments(mu, prec, mean_only);
        TableRow row{n, mu, report.mean_normalized, std::nullopt};
        if (!rows.empty()) row.delta = row.ratio - rows.back().ratio;
        rows.push_back(row);
    }
    return rows;
}

double extrapolate_limit(std::span<const TableRow> rows) {
    if (rows.size() < 3) throw std::invalid_argument("extrapolation needs at least three rows");
    const double last = rows[rows.size() - 1].ratio - rows[rows.size() - 2].ratio;
    const double prev = rows[rows.size() - 2].ratio - rows[rows.size() - 3].ratio;
    if (prev == 0.0) throw std::domain_error("successive differences vanish; no geometric tail");
    const double r = last / prev;
    if (!(r > 0.0 && r < 1.0)) {
        throw std::domain_error("successive differences do not shrink geometrically");
    }
    return rows.back().ratio + last * r / (1.0 - r);
}

} // namespace negm
