#include <negmoments/negmoments.h>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kResource = 3, kIo = 4 };

struct Failure {
    int code;
    std::string message;
};

int exit_for(negm_status s) {
    switch (s) {
    case NEGM_OK: return kOk;
    case NEGM_ERR_INVALID_ARGUMENT: return kUsage;
    case NEGM_ERR_RESOURCE: return kResource;
    case NEGM_ERR_IO: return kIo;
    default: return kVerifyFailed;
    }
}

void check(negm_status s) {
    if (s != NEGM_OK) throw Failure{exit_for(s), negm_last_error()};
}

std::string take(char* s) {
    std::string out(s ? s : "");
    negm_string_free(s);
    return out;
}

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

unsigned default_threads() {
    if (const char* env = std::getenv("NEGMOMENTS_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

struct RunConfig {
    std::optional<unsigned> mu;
    std::optional<unsigned> n_qubits;
    std::size_t samples = 10000;
    unsigned bins = 60;
    std::uint64_t seed = 0;
    unsigned threads = 0;
    unsigned precision_bits = 256;
    bool exact = false;
    bool mean_only = false;
    std::string generator = "haar";
    unsigned j = 40;
    std::string format = "json";
    std::string output = "-";
    unsigned n_min = 2;
    unsigned n_max = 8;
    bool extrapolate = false;
    std::optional<double> c;
    std::string preset;
    unsigned max_mu = 16;
};

negm_format format_of(const RunConfig& cfg) { return cfg.format == "csv" ? NEGM_FORMAT_CSV : NEGM_FORMAT_JSON; }

negm_engine_options engine(const RunConfig& cfg) {
    negm_engine_options o;
    negm_engine_options_default(&o);
    o.threads = cfg.threads;
    o.precision_bits = cfg.precision_bits;
    o.require_exact = cfg.exact;
    o.mean_only = cfg.mean_only;
    return o;
}

void emit(const RunConfig& cfg, const std::string& content) { check(negm_write_output(content.c_str(), cfg.output.c_str())); }

// Local dimension from --mu or --n-qubits; exactly one must be given.
unsigned resolve_mu(const RunConfig& cfg) {
    if (cfg.mu.has_value() == cfg.n_qubits.has_value()) throw Failure{kUsage, "give exactly one of --mu or --n-qubits"};
    if (cfg.mu) return *cfg.mu;
    unsigned mu = 0;
    check(negm_mu_for_qubits(*cfg.n_qubits, &mu));
    return mu;
}

int n_qubits_field(const RunConfig& cfg) { return cfg.n_qubits ? static_cast<int>(*cfg.n_qubits) : -1; }

int cmd_moments(const RunConfig& cfg) {
    const unsigned mu = resolve_mu(cfg);
    const negm_engine_options opts = engine(cfg);
    negm_moment_report* report = nullptr;
    check(negm_moments_compute(mu, &opts, &report));
    char* text = nullptr;
    const negm_status s = negm_moments_serialize(report, n_qubits_field(cfg), format_of(cfg), &text);
    negm_moments_free(report);
    check(s);
    emit(cfg, take(text));
    return kOk;
}

int cmd_table(const RunConfig& cfg) {
    if (cfg.mu || cfg.n_qubits) throw Failure{kUsage, "table takes --n-min/--n-max, not --mu/--n-qubits"};
    negm_engine_options opts = engine(cfg);
    opts.mean_only = 1;
    negm_table* table = nullptr;
    check(negm_table_compute(cfg.n_min, cfg.n_max, &opts, &table));
    char* text = nullptr;
    const negm_status s = negm_table_serialize(table, cfg.extrapolate, format_of(cfg), &text);
    negm_table_free(table);
    check(s);
    emit(cfg, take(text));
    return kOk;
}

int cmd_distribution(const RunConfig& cfg, bool with_comparison) {
    negm_sample_config sc{};
    sc.seed = cfg.seed;
    sc.count = cfg.samples;
    sc.threads = cfg.threads;
    sc.rounds = cfg.j;
    if (cfg.generator == "circuit") {
        if (!cfg.n_qubits || cfg.mu) throw Failure{kUsage, "the circuit generator needs --n-qubits"};
        sc.generator = NEGM_GENERATOR_CIRCUIT;
        sc.n_qubits = *cfg.n_qubits;
    } else {
        sc.generator = NEGM_GENERATOR_HAAR;
        sc.mu = resolve_mu(cfg);
    }
    if (cfg.samples == 0) throw Failure{kUsage, "--samples must be positive"};

    negm_samples* samples = nullptr;
    check(negm_sample(&sc, &samples));
    negm_engine_options opts = engine(cfg);
    opts.require_exact = 0;
    opts.mean_only = 0;
    negm_moment_report* report = nullptr;
    negm_status s = negm_moments_compute(negm_samples_mu(samples), &opts, &report);
    negm_distribution* dist = nullptr;
    if (s == NEGM_OK) s = negm_distribution_build(samples, report, cfg.bins, cfg.threads, &dist);
    negm_samples_free(samples);
    negm_moments_free(report);
    check(s);

    std::string text;
    if (with_comparison && cfg.format == "csv") {
        double ks = 0, z = 0, rel = 0;
        s = negm_distribution_comparison(dist, &ks, &z, &rel);
        text = "ks_statistic,mean_zscore,sigma_relative_error\n" + fmt(ks) + "," + fmt(z) + "," + fmt(rel) + "\n";
    } else {
        char* out = nullptr;
        s = negm_distribution_serialize(dist, with_comparison, n_qubits_field(cfg), format_of(cfg), &out);
        text = take(out);
    }
    negm_distribution_free(dist);
    check(s);
    emit(cfg, text);
    return kOk;
}

int cmd_bounds(const RunConfig& cfg) {
    if (cfg.mu) throw Failure{kUsage, "bounds takes --n-qubits, not --mu"};
    if (cfg.c && !cfg.preset.empty()) throw Failure{kUsage, "give at most one of --c or --preset"};
    double c = 0.0;
    if (cfg.c) c = *cfg.c;
    else if (cfg.preset == "paper") c = negm_paper_constant();
    else check(negm_default_constant(cfg.threads, &c));
    negm_bounds b{};
    check(negm_bounds_compute(cfg.n_qubits.value_or(22), c, &b));
    char* text = nullptr;
    check(negm_bounds_serialize(&b, format_of(cfg), &text));
    emit(cfg, take(text));
    return kOk;
}

int cmd_verify(const RunConfig& cfg) {
    negm_verify_result* result = nullptr;
    check(negm_verify_run(cfg.max_mu, cfg.threads, &result));
    std::ostringstream out;
    bool all = true;
    char line[256];
    for (std::size_t i = 0; i < negm_verify_count(result); ++i) {
        const char* name = nullptr;
        const char* detail = nullptr;
        int passed = 0;
        negm_verify_check(result, i, &name, &passed, &detail);
        std::snprintf(line, sizeof line, "%-28s %s  %s\n", name, passed ? "PASS" : "FAIL", detail);
        out << line;
        all = all && passed;
    }
    negm_verify_free(result);
    emit(cfg, out.str());
    return all ? kOk : kVerifyFailed;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Negativity moments of random bipartite pure states"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(negm_version()));
    RunConfig cfg;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--threads", cfg.threads, "worker threads (default: NEGMOMENTS_THREADS or all cores)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--output", cfg.output, "output file, '-' for stdout");
    };
    auto precision = [&](CLI::App* sub) {
        sub->add_option("--precision-bits", cfg.precision_bits, "starting float precision")
            ->check(CLI::Range(53u, 1u << 20));
    };
    auto dims = [&](CLI::App* sub) {
        auto* mu = sub->add_option("--mu", cfg.mu, "local dimension");
        auto* n = sub->add_option("--n-qubits", cfg.n_qubits, "even qubit count; mu = 2^(n/2)");
        mu->excludes(n);
    };

    auto* moments = app.add_subcommand("moments", "exact and float moments of the negativity");
    dims(moments);
    precision(moments);
    moments->add_flag("--exact", cfg.exact, "fail instead of falling back to float evaluation");
    moments->add_flag("--mean-only", cfg.mean_only, "skip the variance");
    common(moments);

    auto* table = app.add_subcommand("table", "normalized mean for a range of qubit counts");
    table->add_option("--n-min", cfg.n_min, "smallest even qubit count");
    table->add_option("--n-max", cfg.n_max, "largest even qubit count");
    table->add_flag("--extrapolate", cfg.extrapolate, "append the extrapolated limit");
    table->add_flag("--exact", cfg.exact, "fail instead of falling back to float evaluation");
    precision(table);
    common(table);

    auto sampling = [&](CLI::App* sub) {
        dims(sub);
        sub->add_option("--samples", cfg.samples, "number of states");
        sub->add_option("--bins", cfg.bins, "histogram bins")->check(CLI::PositiveNumber);
        sub->add_option("--seed", cfg.seed, "master seed");
        sub->add_option("--generator", cfg.generator, "haar or circuit")->check(CLI::IsMember({"haar", "circuit"}));
        sub->add_option("--j", cfg.j, "circuit rounds");
        precision(sub);
        common(sub);
    };
    auto* sample = app.add_subcommand("sample", "histogram of sampled negativities");
    sampling(sample);
    auto* compare = app.add_subcommand("compare", "sampled distribution against the Gaussian reference");
    sampling(compare);

    auto* bounds = app.add_subcommand("bounds", "singlet distance, fidelity and distillable entanglement bounds");
    bounds->add_option("--n-qubits", cfg.n_qubits, "even qubit count (default 22)");
    auto* c_opt = bounds->add_option("--c", cfg.c, "ratio <N>/N_max")->check(CLI::Range(0.0, 1.0));
    bounds->add_option("--preset", cfg.preset, "named constant")->check(CLI::IsMember({"paper"}))->excludes(c_opt);
    common(bounds);

    auto* verify = app.add_subcommand("verify", "run the exact identity suite");
    verify->add_option("--max-mu", cfg.max_mu, "largest index range")->check(CLI::Range(2u, 512u));
    common(verify);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }
    if (cfg.threads == 0) cfg.threads = default_threads();

    try {
        if (*moments) return cmd_moments(cfg);
        if (*table) return cmd_table(cfg);
        if (*sample) return cmd_distribution(cfg, false);
        if (*compare) return cmd_distribution(cfg, true);
        if (*bounds) return cmd_bounds(cfg);
        if (*verify) return cmd_verify(cfg);
    } catch (const Failure& f) {
        std::fprintf(stderr, "error: %s\n", f.message.c_str());
        return f.code;
    }
    return kUsage;
}
