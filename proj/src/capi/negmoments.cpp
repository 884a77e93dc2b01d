#include <negmoments/negmoments.h>

#include "bounds_kit.hpp"
#include "distribution_lab.hpp"
#include "moment_engine.hpp"
#include "report_io.hpp"
#include "state_sampler.hpp"
#include "verify.hpp"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <vector>

struct negm_moment_report {
    negm::MomentReport report;
};

struct negm_table {
    std::vector<negm::TableRow> rows;
};

struct negm_samples {
    std::vector<double> values;
    unsigned mu = 0;
};

struct negm_distribution {
    negm::Histogram hist;
    negm::GaussianReference ref;
    negm::MomentReport report;
    std::optional<negm::ComparisonReport> comparison;
    double sample_mean = 0.0;
};

struct negm_verify_result {
    std::vector<negm::VerifyCheck> checks;
};

namespace {

thread_local std::string last_error;

negm_status fail(negm_status status, const std::string& message) {
    last_error = message;
    return status;
}

template <class Fn>
negm_status guarded(Fn&& fn) {
    try {
        last_error.clear();
        fn();
        return NEGM_OK;
    } catch (const negm::ResourceError& e) {
        return fail(NEGM_ERR_RESOURCE, e.what());
    } catch (const negm::IoError& e) {
        return fail(NEGM_ERR_IO, e.what());
    } catch (const negm::NumericError& e) {
        return fail(NEGM_ERR_NUMERIC, e.what());
    } catch (const std::invalid_argument& e) {
        return fail(NEGM_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::domain_error& e) {
        return fail(NEGM_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::out_of_range& e) {
        return fail(NEGM_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::bad_alloc&) {
        return fail(NEGM_ERR_RESOURCE, "out of memory");
    } catch (const std::exception& e) {
        return fail(NEGM_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(NEGM_ERR_INTERNAL, "unknown error");
    }
}

void require(bool ok, const char* message) {
    if (!ok) throw std::invalid_argument(message);
}

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

negm::EngineOptions engine_options(const negm_engine_options* opts) {
    negm_engine_options o;
    negm_engine_options_default(&o);
    if (opts) o = *opts;
    negm::EngineOptions e;
    e.threads = o.threads == 0 ? 1 : o.threads;
    e.require_exact = o.require_exact != 0;
    e.with_variance = o.mean_only == 0;
    return e;
}

negm::Precision precision_of(const negm_engine_options* opts) {
    return negm::Precision(opts ? opts->precision_bits : 256);
}

std::optional<unsigned> qubits(int n) {
    return n < 0 ? std::nullopt : std::optional<unsigned>(static_cast<unsigned>(n));
}

} // namespace

extern "C" {

const char* negm_last_error(void) { return last_error.c_str(); }

const char* negm_version(void) { return "1.0.0"; }

void negm_string_free(char* s) { std::free(s); }

negm_status negm_write_output(const char* content, const char* path) {
    return guarded([&] {
        require(content != nullptr, "content is null");
        negm::write_output(content, path ? path : "");
    });
}

void negm_engine_options_default(negm_engine_options* opts) {
    if (!opts) return;
    opts->threads = 1;
    opts->precision_bits = 256;
    opts->require_exact = 0;
    opts->mean_only = 0;
}

negm_status negm_moments_compute(unsigned mu, const negm_engine_options* opts, negm_moment_report** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = nullptr;
        auto r = std::make_unique<negm_moment_report>();
        r->report = negm::normalized_moments(mu, precision_of(opts), engine_options(opts));
        *out = r.release();
    });
}

void negm_moments_free(negm_moment_report* report) { delete report; }

negm_status negm_moments_mean_normalized(const negm_moment_report* report, double* out) {
    return guarded([&] {
        require(report && out, "null argument");
        *out = report->report.mean_normalized;
    });
}

negm_status negm_moments_sigma_normalized(const negm_moment_report* report, double* out, int* has_sigma) {
    return guarded([&] {
        require(report && out && has_sigma, "null argument");
        *has_sigma = report->report.sigma_normalized.has_value();
        *out = report->report.sigma_normalized.value_or(0.0);
    });
}

negm_status negm_moments_is_exact(const negm_moment_report* report, int* out) {
    return guarded([&] {
        require(report && out, "null argument");
        *out = report->report.mean_exact.has_value();
    });
}

negm_status negm_moments_serialize(const negm_moment_report* report, int n_qubits, negm_format format, char** out) {
    return guarded([&] {
        require(report && out, "null argument");
        *out = dup_string(format == NEGM_FORMAT_CSV ? negm::moment_report_csv(report->report, qubits(n_qubits))
                                                    : dump(negm::moment_report_json(report->report, qubits(n_qubits))));
    });
}

negm_status negm_mu_for_qubits(unsigned n_qubits, unsigned* mu) {
    return guarded([&] {
        require(mu != nullptr, "null argument");
        *mu = negm::mu_for_qubits(n_qubits);
    });
}

negm_status negm_table_compute(unsigned n_min, unsigned n_max, const negm_engine_options* opts, negm_table** out) {
    return guarded([&] {
        require(out != nullptr, "out is null");
        *out = nullptr;
        require(n_min % 2 == 0 && n_max % 2 == 0, "qubit counts must be even");
        require(n_min >= 2 && n_min <= n_max, "need 2 <= n_min <= n_max");
        std::vector<unsigned> ns;
        for (unsigned n = n_min; n <= n_max; n += 2) ns.push_back(n);
        auto t = std::make_unique<negm_table>();
        t->rows = negm::generate_table(ns, precision_of(opts), engine_options(opts));
        *out = t.release();
    });
}

void negm_table_free(negm_table* table) { delete table; }

size_t negm_table_size(const negm_table* table) { return table ? table->rows.size() : 0; }

negm_status negm_table_row(const negm_table* table, size_t index, unsigned* n_qubits, unsigned* mu, double* ratio,
                           double* delta, int* has_delta) {
    return guarded([&] {
        require(table != nullptr, "table is null");
        const negm::TableRow& row = table->rows.at(index);
        if (n_qubits) *n_qubits = row.n_qubits;
        if (mu) *mu = row.mu;
        if (ratio) *ratio = row.ratio;
        if (delta) *delta = row.delta.value_or(0.0);
        if (has_delta) *has_delta = row.delta.has_value();
    });
}

negm_status negm_table_extrapolate(const negm_table* table, double* limit) {
    return guarded([&] {
        require(table && limit, "null argument");
        *limit = negm::extrapolate_limit(table->rows);
    });
}

negm_status negm_table_serialize(const negm_table* table, int with_limit, negm_format format, char** out) {
    return guarded([&] {
        require(table && out, "null argument");
        std::optional<double> limit;
        if (with_limit) limit = negm::extrapolate_limit(table->rows);
        *out = dup_string(format == NEGM_FORMAT_CSV ? negm::table_csv(table->rows, limit)
                                                    : dump(negm::table_json(table->rows, limit)));
    });
}

negm_status negm_sample(const negm_sample_config* config, negm_samples** out) {
    return guarded([&] {
        require(config && out, "null argument");
        *out = nullptr;
        negm::SampleBatch batch;
        batch.master_seed = config->seed;
        batch.count = config->count;
        if (config->generator == NEGM_GENERATOR_HAAR) {
            require(config->mu >= 1, "mu must be at least 1");
            batch.generator = negm::Generator::Haar;
            batch.mu = batch.nu = config->mu;
        } else if (config->generator == NEGM_GENERATOR_CIRCUIT) {
            batch.generator = negm::Generator::Circuit;
            batch.n_qubits = config->n_qubits;
            batch.rounds = config->rounds;
        } else {
            throw std::invalid_argument("unknown generator");
        }
        auto s = std::make_unique<negm_samples>();
        s->values = negm::sample_negativities(batch, config->threads == 0 ? 1 : config->threads);
        s->mu = negm::batch_mu(batch);
        *out = s.release();
    });
}

void negm_samples_free(negm_samples* samples) { delete samples; }

size_t negm_samples_count(const negm_samples* samples) { return samples ? samples->values.size() : 0; }

const double* negm_samples_data(const negm_samples* samples) {
    return samples && !samples->values.empty() ? samples->values.data() : nullptr;
}

unsigned negm_samples_mu(const negm_samples* samples) { return samples ? samples->mu : 0; }

negm_status negm_distribution_build(const negm_samples* samples, const negm_moment_report* report, unsigned bins,
                                    unsigned threads, negm_distribution** out) {
    return guarded([&] {
        require(samples && report && out, "null argument");
        *out = nullptr;
        require(samples->mu == report->report.mu, "moment report and samples have different mu");
        require(samples->mu >= 2, "normalization needs mu >= 2");
        const double n_max = report->report.n_max.get_d();
        std::vector<double> normalized = samples->values;
        double sum = 0.0;
        for (double& x : normalized) {
            x /= n_max;
            sum += x;
        }
        auto d = std::make_unique<negm_distribution>();
        d->report = report->report;
        d->ref = negm::gaussian_reference(report->report);
        d->hist = negm::build_histogram(normalized, bins, std::nullopt, threads == 0 ? 1 : threads);
        d->sample_mean = sum / static_cast<double>(normalized.size());
        if (normalized.size() >= 100) d->comparison = negm::compare(normalized, d->ref);
        *out = d.release();
    });
}

void negm_distribution_free(negm_distribution* dist) { delete dist; }

negm_status negm_distribution_comparison(const negm_distribution* dist, double* ks_statistic, double* mean_zscore,
                                         double* sigma_relative_error) {
    return guarded([&] {
        require(dist != nullptr, "null argument");
        require(dist->comparison.has_value(), "comparison needs at least 100 samples");
        if (ks_statistic) *ks_statistic = dist->comparison->ks_statistic;
        if (mean_zscore) *mean_zscore = dist->comparison->mean_zscore;
        if (sigma_relative_error) *sigma_relative_error = dist->comparison->sigma_relative_error;
    });
}

negm_status negm_distribution_sample_mean(const negm_distribution* dist, double* mean) {
    return guarded([&] {
        require(dist && mean, "null argument");
        *mean = dist->sample_mean;
    });
}

negm_status negm_distribution_serialize(const negm_distribution* dist, int with_comparison, int n_qubits,
                                        negm_format format, char** out) {
    return guarded([&] {
        require(dist && out, "null argument");
        if (with_comparison) require(dist->comparison.has_value(), "comparison needs at least 100 samples");
        if (format == NEGM_FORMAT_CSV) {
            *out = dup_string(negm::histogram_csv(dist->hist, dist->ref));
            return;
        }
        std::optional<negm::ComparisonReport> cmp;
        if (with_comparison) cmp = dist->comparison;
        *out = dup_string(dump(negm::distribution_json(dist->hist, dist->ref, dist->report, qubits(n_qubits), cmp)));
    });
}

double negm_paper_constant(void) { return negm::kPaperConstant; }

negm_status negm_default_constant(unsigned threads, double* c) {
    return guarded([&] {
        require(c != nullptr, "null argument");
        const unsigned ns[] = {2, 4, 6, 8, 10, 12, 14};
        negm::EngineOptions opts;
        opts.threads = threads == 0 ? 1 : threads;
        opts.with_variance = false;
        *c = negm::extrapolate_limit(negm::generate_table(ns, negm::Precision(256), opts));
    });
}

negm_status negm_bounds_compute(unsigned n_qubits, double c, negm_bounds* out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        const negm::BoundsReport b = negm::bounds_report(n_qubits, c);
        *out = negm_bounds{b.n_qubits,
                           b.c,
                           b.mean_negativity,
                           b.singlet_distance_lb,
                           b.singlet_distance_raw,
                           b.fidelity_ub,
                           b.fidelity_raw,
                           b.distillable_ub_ebits,
                           b.log_neg_mean,
                           b.singlet_distance_limit,
                           b.fidelity_limit,
                           b.distillable_offset};
    });
}

negm_status negm_bounds_serialize(const negm_bounds* bounds, negm_format format, char** out) {
    return guarded([&] {
        require(bounds && out, "null argument");
        negm::BoundsReport b;
        b.n_qubits = bounds->n_qubits;
        b.c = bounds->c;
        b.mean_negativity = bounds->mean_negativity;
        b.singlet_distance_lb = bounds->singlet_distance_lb;
        b.singlet_distance_raw = bounds->singlet_distance_raw;
        b.fidelity_ub = bounds->fidelity_ub;
        b.fidelity_raw = bounds->fidelity_raw;
        b.distillable_ub_ebits = bounds->distillable_ub_ebits;
        b.log_neg_mean = bounds->log_neg_mean;
        b.singlet_distance_limit = bounds->singlet_distance_limit;
        b.fidelity_limit = bounds->fidelity_limit;
        b.distillable_offset = bounds->distillable_offset;
        *out = dup_string(format == NEGM_FORMAT_CSV ? negm::bounds_csv(b) : dump(negm::bounds_json(b)));
    });
}

negm_status negm_cluster_threshold(unsigned d_a, double epsilon, double* out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        *out = negm::cluster_threshold(d_a, epsilon);
    });
}

negm_status negm_verify_run(unsigned max_mu, unsigned threads, negm_verify_result** out) {
    return guarded([&] {
        require(out != nullptr, "null argument");
        *out = nullptr;
        auto r = std::make_unique<negm_verify_result>();
        r->checks = negm::run_verify({max_mu, threads == 0 ? 1 : threads});
        *out = r.release();
    });
}

void negm_verify_free(negm_verify_result* result) { delete result; }

size_t negm_verify_count(const negm_verify_result* result) { return result ? result->checks.size() : 0; }

negm_status negm_verify_check(const negm_verify_result* result, size_t index, const char** name, int* passed,
                              const char** detail) {
    return guarded([&] {
        require(result != nullptr, "null argument");
        const negm::VerifyCheck& c = result->checks.at(index);
        if (name) *name = c.name.c_str();
        if (passed) *passed = c.passed;
        if (detail) *detail = c.detail.c_str();
    });
}

} // extern "C"
