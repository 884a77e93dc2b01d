#pragma once

#include "state_sampler.hpp"

namespace negm {

/// Bound value before and after clamping into its physical range.
struct BoundValue {
    double raw = 0.0;
    double clamped = 0.0;
};

/// 2(1 - (2N + 1)/m), clamped to [0, 2].
BoundValue singlet_distance_lower(double mean_neg, unsigned m);
/// (2N + 1)/m, clamped to (0, 1].
BoundValue teleportation_fidelity_upper(double mean_neg, unsigned m);
/// log2(c 2^(n/2) + 1 - c).
double distillable_upper(unsigned n_qubits, double c);
/// log2(2N + 1).
double log_negativity(double neg);

/// d_A log2(d_A) / eps^2. The multiple of this scale that d_B must exceed is left open.
double cluster_threshold(unsigned d_a, double epsilon);
/// True iff every eigenvalue of rho_A lies in [(1 - eps)/d_A, (1 + eps)/d_A].
bool cluster_check(const DensityMatrix& rho_a, double epsilon);

inline constexpr double kPaperConstant = 0.72037;

struct BoundsReport {
    unsigned n_qubits = 0;
    double c = 0.0;
    double mean_negativity = 0.0;
    double singlet_distance_lb = 0.0;
    double singlet_distance_raw = 0.0;
    double fidelity_ub = 0.0;
    double fidelity_raw = 0.0;
    double distillable_ub_ebits = 0.0;
    double log_neg_mean = 0.0;
    // Large-n limits: 2(1 - c), c, and the offset log2(c) from n/2.
    double singlet_distance_limit = 0.0;
    double fidelity_limit = 0.0;
    double distillable_offset = 0.0;
};

/// Bounds for a register of n qubits split in half, with <N> = c N_max.
BoundsReport bounds_report(unsigned n_qubits, double c);

} // namespace negm
