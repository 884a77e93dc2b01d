#include "distribution_lab.hpp"

#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace negm {

namespace {

std::size_t bin_of(double x, double lo, double hi, std::size_t bins) {
    if (!(x > lo)) return 0;
    if (x >= hi) return bins - 1;
    const auto b = static_cast<std::size_t>((x - lo) / (hi - lo) * static_cast<double>(bins));
    return std::min(b, bins - 1);
}

} // namespace

Histogram build_histogram(const std::vector<double>& values, unsigned bins,
                          std::optional<std::pair<double, double>> range, unsigned threads) {
    if (bins == 0) throw std::invalid_argument("bin count must be at least 1");
    if (values.empty()) throw std::invalid_argument("cannot histogram an empty sample");
    double lo, hi;
    if (range) {
        std::tie(lo, hi) = *range;
        if (!(lo < hi)) throw std::invalid_argument("histogram range must satisfy lo < hi");
    } else {
        const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
        double w = (*mx - *mn) / bins;
        if (w == 0.0) w = std::max(1e-9, std::fabs(*mn) * 1e-9);
        lo = *mn - w;
        hi = *mx + w;
    }

    Histogram h;
    h.bin_edges.resize(bins + 1);
    for (unsigned i = 0; i <= bins; ++i) h.bin_edges[i] = lo + (hi - lo) * i / bins;
    h.bin_edges[bins] = hi;

    const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(values.size())));
    const std::size_t chunk = (values.size() + workers - 1) / workers;
    std::vector<std::vector<std::uint64_t>> partial(workers, std::vector<std::uint64_t>(bins, 0));
    parallel_for(workers, workers, [&](std::size_t w) {
        const std::size_t begin = w * chunk;
        const std::size_t end = std::min(values.size(), begin + chunk);
        for (std::size_t i = begin; i < end; ++i) ++partial[w][bin_of(values[i], lo, hi, bins)];
    });
    h.counts.assign(bins, 0);
    for (const auto& p : partial)
        for (unsigned b = 0; b < bins; ++b) h.counts[b] += p[b];
    h.total = values.size();
    return h;
}

Histogram merge_histograms(const Histogram& a, const Histogram& b) {
    if (a.bin_edges != b.bin_edges) throw std::invalid_argument("histograms have different bin edges");
    Histogram out = a;
    for (std::size_t i = 0; i < out.counts.size(); ++i) out.counts[i] += b.counts[i];
    out.total += b.total;
    return out;
}

std::vector<double> empirical_cdf(const Histogram& hist) {
    std::vector<double> cdf(hist.bins());
    std::uint64_t running = 0;
    for (std::size_t i = 0; i < hist.bins(); ++i) {
        running += hist.counts[i];
        cdf[i] = static_cast<double>(running) / static_cast<double>(hist.total);
    }
    return cdf;
}

double GaussianReference::density(double x) const {
    const double z = (x - mean_prime) / sigma_prime;
    return std::exp(-0.5 * z * z) / (sigma_prime * std::sqrt(2.0 * M_PI));
}

double GaussianReference::cdf(double x) const {
    return 0.5 * std::erfc(-(x - mean_prime) / (sigma_prime * M_SQRT2));
}

GaussianReference gaussian_reference(const MomentReport& report) {
    if (report.mu < 2) throw std::invalid_argument("gaussian reference needs mu >= 2");
    if (!report.sigma_normalized) throw std::invalid_argument("moment report has no variance");
    if (!(*report.sigma_normalized > 0.0)) throw std::invalid_argument("sigma' must be positive");
    return GaussianReference{report.mean_normalized, *report.sigma_normalized};
}

ComparisonReport compare(const std::vector<double>& samples, const GaussianReference& ref) {
    if (samples.size() < 100) throw std::invalid_argument("comparison needs at least 100 samples");
    std::vector<double> x = samples;
    std::sort(x.begin(), x.end());
    const double n = static_cast<double>(x.size());
    double ks = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double f = ref.cdf(x[i]);
        ks = std::max({ks, (i + 1) / n - f, f - i / n});
        sum += x[i];
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (n - 1));
    ComparisonReport r;
    r.ks_statistic = std::clamp(ks, 0.0, 1.0);
    r.mean_zscore = (mean - ref.mean_prime) / (sd / std::sqrt(n));
    r.sigma_relative_error = std::fabs(sd - ref.sigma_prime) / ref.sigma_prime;
    return r;
}

ComparisonReport compare(const Histogram& hist, const GaussianReference& ref) {
    if (hist.total < 100) throw std::invalid_argument("comparison needs at least 100 samples");
    const double n = static_cast<double>(hist.total);
    const std::vector<double> cdf = empirical_cdf(hist);
    double ks = std::fabs(ref.cdf(hist.bin_edges[0]));
    double sum = 0.0;
    for (std::size_t i = 0; i < hist.bins(); ++i) {
        ks = std::max(ks, std::fabs(cdf[i] - ref.cdf(hist.bin_edges[i + 1])));
        sum += hist.center(i) * static_cast<double>(hist.counts[i]);
    }
    const double mean = sum / n;
    double ss = 0.0;
    for (std::size_t i = 0; i < hist.bins(); ++i) {
        const double d = hist.center(i) - mean;
        ss += d * d * static_cast<double>(hist.counts[i]);
    }
    const double sd = std::sqrt(ss / (n - 1));
    ComparisonReport r;
    r.ks_statistic = std::clamp(ks, 0.0, 1.0);
    r.mean_zscore = (mean - ref.mean_prime) / (sd / std::sqrt(n));
    r.sigma_relative_error = std::fabs(sd - ref.sigma_prime) / ref.sigma_prime;
    return r;
}

} // namespace negm
