#pragma once

#include "bounds_kit.hpp"
#include "distribution_lab.hpp"
#include "moment_engine.hpp"

#include <json.hpp>

#include <optional>
#include <span>
#include <stdexcept>
#include <string>

namespace negm {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// {"degree": "num/den", ...}
nlohmann::ordered_json pi_half_json(const PiHalfPoly& p);
PiHalfPoly pi_half_from_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json moment_report_json(const MomentReport& report, std::optional<unsigned> n_qubits);
nlohmann::ordered_json histogram_json(const Histogram& hist);
nlohmann::ordered_json comparison_json(const ComparisonReport& cmp);
nlohmann::ordered_json table_json(std::span<const TableRow> rows, std::optional<double> limit);
nlohmann::ordered_json bounds_json(const BoundsReport& bounds);

/// Moment report plus histogram and, when given, the comparison.
nlohmann::ordered_json distribution_json(const Histogram& hist, const GaussianReference& ref,
                                         const MomentReport& report, std::optional<unsigned> n_qubits,
                                         const std::optional<ComparisonReport>& cmp);

/// bin_left,bin_right,count,density,gaussian_density
std::string histogram_csv(const Histogram& hist, const GaussianReference& ref);
/// n_qubits,mu,ratio,delta; the limit, if any, as a trailing "limit" row.
std::string table_csv(std::span<const TableRow> rows, std::optional<double> limit);
std::string moment_report_csv(const MomentReport& report, std::optional<unsigned> n_qubits);
std::string bounds_csv(const BoundsReport& bounds);

/// Shortest text that round-trips the double.
std::string format_double(double x);

/// Writes to `path`, or to stdout when path is empty or "-". Throws IoError.
void write_output(const std::string& content, const std::string& path);

} // namespace negm
