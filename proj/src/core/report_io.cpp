#include "report_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace negm {

using nlohmann::ordered_json;

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

ordered_json pi_half_json(const PiHalfPoly& p) {
    ordered_json j = ordered_json::object();
    for (const auto& [degree, coeff] : p.terms()) j[std::to_string(degree)] = to_fraction_string(coeff);
    return j;
}

PiHalfPoly pi_half_from_json(const ordered_json& j) {
    if (!j.is_object()) throw std::invalid_argument("pi_half_coeffs must be an object");
    PiHalfPoly p;
    for (const auto& [key, value] : j.items()) {
        std::size_t used = 0;
        const int degree = std::stoi(key, &used);
        if (used != key.size()) throw std::invalid_argument("bad degree key: " + key);
        p += PiHalfPoly(degree, parse_fraction(value.get<std::string>()));
    }
    return p;
}

ordered_json moment_report_json(const MomentReport& r, std::optional<unsigned> n_qubits) {
    ordered_json j;
    j["mu"] = r.mu;
    j["n_qubits"] = n_qubits ? ordered_json(*n_qubits) : ordered_json(nullptr);
    j["mean_exact"] = r.mean_exact ? ordered_json{{"pi_half_coeffs", pi_half_json(*r.mean_exact)}} : ordered_json(nullptr);
    j["variance_exact"] =
        r.variance_exact ? ordered_json{{"pi_half_coeffs", pi_half_json(*r.variance_exact)}} : ordered_json(nullptr);
    j["mean_float"] = r.mean_float;
    j["sigma_float"] = r.sigma_float ? ordered_json(*r.sigma_float) : ordered_json(nullptr);
    j["normalized"] = {
        {"n_max", to_fraction_string(r.n_max)},
        {"mean", r.mean_normalized},
        {"sigma", r.sigma_normalized ? ordered_json(*r.sigma_normalized) : ordered_json(nullptr)},
    };
    return j;
}

ordered_json histogram_json(const Histogram& h) {
    return {{"bin_edges", h.bin_edges}, {"counts", h.counts}, {"total", h.total}};
}

ordered_json comparison_json(const ComparisonReport& c) {
    return {{"ks_statistic", c.ks_statistic},
            {"mean_zscore", c.mean_zscore},
            {"sigma_relative_error", c.sigma_relative_error}};
}

ordered_json table_json(std::span<const TableRow> rows, std::optional<double> limit) {
    ordered_json arr = ordered_json::array();
    for (const auto& row : rows) {
        arr.push_back({{"n_qubits", row.n_qubits},
                       {"mu", row.mu},
                       {"ratio", row.ratio},
                       {"delta", row.delta ? ordered_json(*row.delta) : ordered_json(nullptr)}});
    }
    ordered_json j{{"rows", arr}};
    if (limit) j["limit"] = *limit;
    return j;
}

ordered_json bounds_json(const BoundsReport& b) {
    return {{"n_qubits", b.n_qubits},
            {"c", b.c},
            {"mean_negativity", b.mean_negativity},
            {"singlet_distance_lb", b.singlet_distance_lb},
            {"singlet_distance_raw", b.singlet_distance_raw},
            {"fidelity_ub", b.fidelity_ub},
            {"fidelity_raw", b.fidelity_raw},
            {"distillable_ub_ebits", b.distillable_ub_ebits},
            {"log_neg_mean", b.log_neg_mean},
            {"asymptotic",
             {{"singlet_distance_lb", b.singlet_distance_limit},
              {"fidelity_ub", b.fidelity_limit},
              {"distillable_offset", b.distillable_offset}}}};
}

ordered_json distribution_json(const Histogram& hist, const GaussianReference& ref, const MomentReport& report,
                               std::optional<unsigned> n_qubits, const std::optional<ComparisonReport>& cmp) {
    ordered_json j = moment_report_json(report, n_qubits);
    j["histogram"] = histogram_json(hist);
    j["reference"] = {{"mean_prime", ref.mean_prime}, {"sigma_prime", ref.sigma_prime}};
    j["comparison"] = cmp ? comparison_json(*cmp) : ordered_json(nullptr);
    return j;
}

std::string histogram_csv(const Histogram& h, const GaussianReference& ref) {
    std::ostringstream out;
    out << "bin_left,bin_right,count,density,gaussian_density\n";
    for (std::size_t i = 0; i < h.bins(); ++i) {
        const double density = static_cast<double>(h.counts[i]) / (static_cast<double>(h.total) * h.width(i));
        out << format_double(h.bin_edges[i]) << ',' << format_double(h.bin_edges[i + 1]) << ',' << h.counts[i]
            << ',' << format_double(density) << ',' << format_double(ref.density(h.center(i))) << '\n';
    }
    return out.str();
}

std::string table_csv(std::span<const TableRow> rows, std::optional<double> limit) {
    std::ostringstream out;
    out << "n_qubits,mu,ratio,delta\n";
    for (const auto& row : rows) {
        out << row.n_qubits << ',' << row.mu << ',' << format_double(row.ratio) << ','
            << (row.delta ? format_double(*row.delta) : "") << '\n';
    }
    if (limit) out << "limit,," << format_double(*limit) << ",\n";
    return out.str();
}

std::string moment_report_csv(const MomentReport& r, std::optional<unsigned> n_qubits) {
    std::ostringstream out;
    out << "n_qubits,mu,mean_exact,variance_exact,mean_float,sigma_float,mean_normalized,sigma_normalized\n";
    out << (n_qubits ? std::to_string(*n_qubits) : "") << ',' << r.mu << ','
        << (r.mean_exact ? r.mean_exact->to_string() : "") << ','
        << (r.variance_exact ? r.variance_exact->to_string() : "") << ',' << format_double(r.mean_float) << ','
        << (r.sigma_float ? format_double(*r.sigma_float) : "") << ',' << format_double(r.mean_normalized) << ','
        << (r.sigma_normalized ? format_double(*r.sigma_normalized) : "") << '\n';
    return out.str();
}

std::string bounds_csv(const BoundsReport& b) {
    std::ostringstream out;
    out << "n_qubits,c,mean_negativity,singlet_distance_lb,singlet_distance_raw,fidelity_ub,fidelity_raw,"
           "distillable_ub_ebits,log_neg_mean,singlet_distance_limit,fidelity_limit,distillable_offset\n";
    out << b.n_qubits;
    for (double v : {b.c, b.mean_negativity, b.singlet_distance_lb, b.singlet_distance_raw, b.fidelity_ub,
                     b.fidelity_raw, b.distillable_ub_ebits, b.log_neg_mean, b.singlet_distance_limit,
                     b.fidelity_limit, b.distillable_offset})
        out << ',' << format_double(v);
    out << '\n';
    return out.str();
}

void write_output(const std::string& content, const std::string& path) {
    if (path.empty() || path == "-") {
        if (std::fwrite(content.data(), 1, content.size(), stdout) != content.size() || std::fflush(stdout) != 0) {
            throw IoError("failed to write to standard output");
        }
        return;
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) throw IoError("cannot open " + path + " for writing");
    file << content;
    file.flush();
    if (!file) throw IoError("failed writing " + path);
}

} // namespace negm
