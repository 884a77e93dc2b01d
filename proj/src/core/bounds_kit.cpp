#include "bounds_kit.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace negm {

BoundValue singlet_distance_lower(double mean_neg, unsigned m) {
    if (m < 2) throw std::invalid_argument("singlet dimension must be at least 2");
    if (mean_neg < 0) throw std::invalid_argument("negativity must be nonnegative");
    const double raw = 2.0 * (1.0 - (2.0 * mean_neg + 1.0) / m);
    return {raw, std::clamp(raw, 0.0, 2.0)};
}

BoundValue teleportation_fidelity_upper(double mean_neg, unsigned m) {
    if (m < 2) throw std::invalid_argument("singlet dimension must be at least 2");
    if (mean_neg < 0) throw std::invalid_argument("negativity must be nonnegative");
    const double raw = (2.0 * mean_neg + 1.0) / m;
    return {raw, std::min(raw, 1.0)};
}

double distillable_upper(unsigned n_qubits, double c) {
    if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("c must lie in (0, 1]");
    if (n_qubits % 2 != 0) throw std::invalid_argument("qubit count must be even");
    if (c == 1.0) return n_qubits / 2.0;
    return std::log2(c * std::ldexp(1.0, static_cast<int>(n_qubits / 2)) + 1.0 - c);
}

double log_negativity(double neg) {
    if (neg < 0) throw std::invalid_argument("negativity must be nonnegative");
    return std::log2(2.0 * neg + 1.0);
}

double cluster_threshold(unsigned d_a, double epsilon) {
    if (d_a < 2) throw std::invalid_argument("d_A must be at least 2");
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0, 1)");
    return d_a * std::log2(static_cast<double>(d_a)) / (epsilon * epsilon);
}

bool cluster_check(const DensityMatrix& rho_a, double epsilon) {
    if (!(epsilon > 0.0)) throw std::invalid_argument("epsilon must be positive");
    const double d = static_cast<double>(rho_a.entries().rows());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho_a.entries(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) throw NumericError("eigensolver failed");
    const auto& ev = solver.eigenvalues();
    return ev.minCoeff() >= (1.0 - epsilon) / d && ev.maxCoeff() <= (1.0 + epsilon) / d;
}

BoundsReport bounds_report(unsigned n_qubits, double c) {
    if (n_qubits < 2 || n_qubits % 2 != 0 || n_qubits > 62) {
        throw std::invalid_argument("qubit count must be even and in [2, 62]");
    }
    if (!(c > 0.0 && c <= 1.0)) throw std::invalid_argument("c must lie in (0, 1]");
    const unsigned half = n_qubits / 2;
    const double m = std::ldexp(1.0, static_cast<int>(half));
    BoundsReport r;
    r.n_qubits = n_qubits;
    r.c = c;
    r.mean_negativity = c * (m - 1.0) / 2.0;
    const double fid = (2.0 * r.mean_negativity + 1.0) / m;
    r.fidelity_raw = fid;
    r.fidelity_ub = std::min(fid, 1.0);
    r.singlet_distance_raw = 2.0 * (1.0 - fid);
    r.singlet_distance_lb = std::clamp(r.singlet_distance_raw, 0.0, 2.0);
    r.distillable_ub_ebits = distillable_upper(n_qubits, c);
    r.log_neg_mean = log_negativity(r.mean_negativity);
    r.singlet_distance_limit = 2.0 * (1.0 - c);
    r.fidelity_limit = c;
    r.distillable_offset = std::log2(c);
    return r;
}

} // namespace negm
