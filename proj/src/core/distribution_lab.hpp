#pragma once

#include "moment_engine.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace negm {

struct Histogram {
    std::vector<double> bin_edges;     // ascending, bins + 1 entries
    std::vector<std::uint64_t> counts; // bins entries
    std::uint64_t total = 0;

    std::size_t bins() const { return counts.size(); }
    double width(std::size_t bin) const { return bin_edges[bin + 1] - bin_edges[bin]; }
    double center(std::size_t bin) const { return 0.5 * (bin_edges[bin] + bin_edges[bin + 1]); }
};

/// Equal-width bins. Values outside `range` land in the edge bins. Without a
/// range, [min, max] is padded by one bin width on each side. Partial
/// histograms are accumulated per worker and merged in worker order.
Histogram build_histogram(const std::vector<double>& values, unsigned bins,
                          std::optional<std::pair<double, double>> range = std::nullopt,
                          unsigned threads = 1);

/// Requires identical edges.
Histogram merge_histograms(const Histogram& a, const Histogram& b);

/// Fraction of samples at or below each right edge.
std::vector<double> empirical_cdf(const Histogram& hist);

struct GaussianReference {
    double mean_prime = 0.0;
    double sigma_prime = 1.0;

    double density(double x) const;
    double cdf(double x) const;
};

/// N' = <N>/N_max, sigma' = sigma/N_max. Needs the variance in the report.
GaussianReference gaussian_reference(const MomentReport& report);

struct ComparisonReport {
    double ks_statistic = 0.0;
    double mean_zscore = 0.0;
    double sigma_relative_error = 0.0;
};

/// Exact one-sample KS against the reference CDF, plus moment checks.
ComparisonReport compare(const std::vector<double>& samples, const GaussianReference& ref);
/// Binned variant: KS over the bin edges, moments from the bin centres.
ComparisonReport compare(const Histogram& hist, const GaussianReference& ref);

} // namespace negm
