#pragma once

#include "exact_scalar.hpp"

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace negm {

/// Thrown when exact arithmetic is demanded beyond the configured ceiling, or
/// when the precision-doubling loop runs out of bits.
class ResourceError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Symmetric mu x mu matrix of exact I_kl^(beta) values, beta in {1/2, 1}.
class IMatrix {
public:
    IMatrix(unsigned mu, Beta beta, std::vector<GammaMonomial> entries);

    unsigned mu() const { return mu_; }
    Beta beta() const { return beta_; }
    const GammaMonomial& operator()(unsigned k, unsigned l) const { return entries_[k * mu_ + l]; }
    /// sqrt(pi) power shared by every nonzero entry (1 for beta = 1/2, 0 for beta = 1).
    int sqrtpi_power() const { return beta_ == Beta::Half ? 1 : 0; }

private:
    unsigned mu_;
    Beta beta_;
    std::vector<GammaMonomial> entries_;
};

IMatrix build_i_matrix(unsigned mu, Beta beta, unsigned threads = 1);

enum class DetPattern { PairHalf, PairOne, Triple, Quad };
enum class SumMethod { TraceExpansion, Naive };

/// Sum over unrestricted index tuples of the determinant blocks built from the
/// beta = 1 matrix `one` and the beta = 1/2 matrix `half`.
PiHalfPoly det_moment_sum(const IMatrix& one, const IMatrix& half, DetPattern pattern,
                          SumMethod method = SumMethod::TraceExpansion, unsigned threads = 1);
PiHalfPoly det_moment_sum(unsigned mu, DetPattern pattern,
                          SumMethod method = SumMethod::TraceExpansion, unsigned threads = 1);

/// Every exact moment the variance needs, from one pair of I-matrices.
struct ExactMoments {
    PiHalfPoly mean;          // <N>
    PiHalfPoly second;        // <S^2>, S = sum_i sqrt(p_i)
    PiHalfPoly pair_product;  // <sum_{i!=j} p_i p_j>
    PiHalfPoly fourth;        // <S^4>
    PiHalfPoly variance;      // sigma^2 of N
};

ExactMoments exact_moments(unsigned mu, unsigned threads = 1);

PiHalfPoly mean_negativity(unsigned mu, unsigned threads = 1);
PiHalfPoly mean_pair_product(unsigned mu, unsigned threads = 1);
PiHalfPoly fourth_moment(unsigned mu, unsigned threads = 1);
PiHalfPoly variance_negativity(unsigned mu, unsigned threads = 1);

/// Extended-precision evaluation of the same sums without rational arithmetic.
/// The result is recomputed at doubled precision until two successive values
/// agree to `agreement` relative.
struct FloatMoments {
    BigFloat mean;
    std::optional<BigFloat> variance;
    long bits = 0;  // precision of the accepted evaluation
};

FloatMoments float_moments(unsigned mu, bool with_variance, Precision start, unsigned threads = 1,
                           double agreement = 1e-8, long max_bits = 1L << 17);

struct EngineOptions {
    unsigned threads = 1;
    unsigned exact_mean_ceiling = 128;
    unsigned exact_variance_ceiling = 64;
    bool require_exact = false;
    bool with_variance = true;
};

struct MomentReport {
    unsigned mu = 0;
    std::optional<PiHalfPoly> mean_exact;
    std::optional<PiHalfPoly> variance_exact;
    double mean_float = 0.0;
    std::optional<double> sigma_float;
    double mean_normalized = 0.0;
    std::optional<double> sigma_normalized;
    Rational n_max;
};

MomentReport normalized_moments(unsigned mu, Precision prec, const EngineOptions& options = {});

struct TableRow {
    unsigned n_qubits = 0;
    unsigned mu = 0;
    double ratio = 0.0;
    std::optional<double> delta;
};

/// Normalized mean for each even qubit count, in the order given.
std::vector<TableRow> generate_table(std::span<const unsigned> n_list, Precision prec,
                                     const EngineOptions& options = {});

/// Geometric-tail limit of the ratio column: last + delta_last * r / (1 - r),
/// r = delta_last / delta_previous.
double extrapolate_limit(std::span<const TableRow> rows);

/// mu = 2^(n/2) for an even qubit count n.
unsigned mu_for_qubits(unsigned n_qubits);

} // namespace negm
