#include <doctest.h>

#include "report_io.hpp"
#include "verify.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace negm;

namespace {

std::size_t count_lines(const std::string& s) {
    return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

} // namespace

TEST_CASE("sqrt(pi) coefficients round-trip through JSON") {
    const MomentReport r = normalized_moments(2, Precision(256));
    const auto j = moment_report_json(r, std::nullopt);
    CHECK(j["mean_exact"]["pi_half_coeffs"].dump() == R"({"2":"3/32"})");
    CHECK(j["variance_exact"]["pi_half_coeffs"].dump() == R"({"0":"1/10","4":"-9/1024"})");
    const auto back = nlohmann::ordered_json::parse(j.dump());
    CHECK(pi_half_from_json(back["mean_exact"]["pi_half_coeffs"]) == *r.mean_exact);
    CHECK(pi_half_from_json(back["variance_exact"]["pi_half_coeffs"]) == *r.variance_exact);
    CHECK(j["n_qubits"].is_null());
    CHECK(j["normalized"]["n_max"] == "1/2");

    for (unsigned mu : {3u, 7u, 12u}) {
        const PiHalfPoly p = mean_negativity(mu);
        CHECK(pi_half_from_json(nlohmann::ordered_json::parse(pi_half_json(p).dump())) == p);
    }
    CHECK_THROWS(pi_half_from_json(nlohmann::ordered_json::parse(R"({"x":"1/2"})")));
}

TEST_CASE("histogram CSV and distribution JSON") {
    const MomentReport r = normalized_moments(4, Precision(256));
    const GaussianReference ref = gaussian_reference(r);
    std::vector<double> v;
    for (int i = 0; i < 500; ++i) v.push_back(0.3 + 0.7 * i / 500.0);
    const Histogram h = build_histogram(v, 17);
    const std::string csv = histogram_csv(h, ref);
    CHECK(csv.rfind("bin_left,bin_right,count,density,gaussian_density\n", 0) == 0);
    CHECK(count_lines(csv) == 18);

    const auto j = distribution_json(h, ref, r, 4u, compare(v, ref));
    CHECK(j["n_qubits"] == 4);
    CHECK(j["histogram"]["counts"].size() == 17);
    CHECK(j["histogram"]["total"] == 500);
    CHECK(j["comparison"].contains("ks_statistic"));
    std::vector<std::string> keys;
    for (const auto& [k, _] : j.items()) keys.push_back(k);
    CHECK(keys == std::vector<std::string>{"mu", "n_qubits", "mean_exact", "variance_exact", "mean_float",
                                           "sigma_float", "normalized", "histogram", "reference", "comparison"});
}

TEST_CASE("table and bounds serialization") {
    const std::vector<TableRow> rows{{2, 2, 0.5, std::nullopt}, {4, 4, 0.6, 0.1}};
    const std::string csv = table_csv(rows, 0.72);
    CHECK(csv == "n_qubits,mu,ratio,delta\n2,2,0.5,\n4,4,0.6,0.1\nlimit,,0.72,\n");
    const auto j = table_json(rows, std::nullopt);
    CHECK(j["rows"][0]["delta"].is_null());
    CHECK_FALSE(j.contains("limit"));

    const auto b = bounds_json(bounds_report(4, 1.0));
    CHECK(b["distillable_ub_ebits"] == 2.0);
    CHECK(b["asymptotic"].contains("distillable_offset"));
    CHECK(count_lines(bounds_csv(bounds_report(4, 0.5))) == 2);
}

TEST_CASE("number formatting") {
    CHECK(format_double(0.5) == "0.5");
    CHECK(format_double(0.1) == "0.1");
    CHECK(std::stod(format_double(M_PI)) == M_PI);
}

TEST_CASE("output destinations") {
    const auto path = std::filesystem::temp_directory_path() / "negm_report_io_test.txt";
    write_output("abc\n", path.string());
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    CHECK(ss.str() == "abc\n");
    std::filesystem::remove(path);
    CHECK_THROWS_AS(write_output("x", "/nonexistent-dir/for/sure/out.txt"), IoError);
}

TEST_CASE("verify suite passes at small size") {
    for (const auto& c : run_verify({8, 2})) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.passed);
    }
    CHECK_THROWS(run_verify({1, 1}));
}
