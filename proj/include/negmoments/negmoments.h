/* negmoments: negativity moments of random bipartite pure states. */
#ifndef NEGMOMENTS_H
#define NEGMOMENTS_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define NEGM_API __declspec(dllexport)
#else
#define NEGM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum negm_status {
    NEGM_OK = 0,
    NEGM_ERR_INVALID_ARGUMENT = 1,
    NEGM_ERR_RESOURCE = 2, /* exact-mode ceiling or precision budget exceeded */
    NEGM_ERR_IO = 3,
    NEGM_ERR_NUMERIC = 4,
    NEGM_ERR_INTERNAL = 5
} negm_status;

typedef enum negm_format { NEGM_FORMAT_JSON = 0, NEGM_FORMAT_CSV = 1 } negm_format;
typedef enum negm_generator { NEGM_GENERATOR_HAAR = 0, NEGM_GENERATOR_CIRCUIT = 1 } negm_generator;

/* Message for the last failed call on this thread; "" if none. */
NEGM_API const char* negm_last_error(void);
NEGM_API const char* negm_version(void);
/* Frees strings returned through char** out-parameters. */
NEGM_API void negm_string_free(char* s);

NEGM_API negm_status negm_write_output(const char* content, const char* path);

/* ---- moments ---- */

typedef struct negm_engine_options {
    unsigned threads;
    unsigned precision_bits;
    int require_exact; /* fail with NEGM_ERR_RESOURCE instead of falling back to floats */
    int mean_only;
} negm_engine_options;

NEGM_API void negm_engine_options_default(negm_engine_options* opts);

typedef struct negm_moment_report negm_moment_report;

NEGM_API negm_status negm_moments_compute(unsigned mu, const negm_engine_options* opts, negm_moment_report** out);
NEGM_API void negm_moments_free(negm_moment_report* report);
NEGM_API negm_status negm_moments_mean_normalized(const negm_moment_report* report, double* out);
/* *has_sigma is 0 for mean-only reports. */
NEGM_API negm_status negm_moments_sigma_normalized(const negm_moment_report* report, double* out, int* has_sigma);
NEGM_API negm_status negm_moments_is_exact(const negm_moment_report* report, int* out);
/* n_qubits < 0 omits the qubit count. */
NEGM_API negm_status negm_moments_serialize(const negm_moment_report* report, int n_qubits, negm_format format,
                                            char** out);

NEGM_API negm_status negm_mu_for_qubits(unsigned n_qubits, unsigned* mu);

/* ---- table ---- */

typedef struct negm_table negm_table;

/* Even qubit counts n_min, n_min + 2, ..., n_max. */
NEGM_API negm_status negm_table_compute(unsigned n_min, unsigned n_max, const negm_engine_options* opts,
                                        negm_table** out);
NEGM_API void negm_table_free(negm_table* table);
NEGM_API size_t negm_table_size(const negm_table* table);
NEGM_API negm_status negm_table_row(const negm_table* table, size_t index, unsigned* n_qubits, unsigned* mu,
                                    double* ratio, double* delta, int* has_delta);
NEGM_API negm_status negm_table_extrapolate(const negm_table* table, double* limit);
NEGM_API negm_status negm_table_serialize(const negm_table* table, int with_limit, negm_format format, char** out);

/* ---- sampling ---- */

typedef struct negm_sample_config {
    uint64_t seed;
    size_t count;
    negm_generator generator;
    unsigned mu;       /* Haar: local dimension on both sides */
    unsigned n_qubits; /* circuit: register size */
    unsigned rounds;   /* circuit: number of rounds */
    unsigned threads;
} negm_sample_config;

typedef struct negm_samples negm_samples;

NEGM_API negm_status negm_sample(const negm_sample_config* config, negm_samples** out);
NEGM_API void negm_samples_free(negm_samples* samples);
NEGM_API size_t negm_samples_count(const negm_samples* samples);
NEGM_API const double* negm_samples_data(const negm_samples* samples);
NEGM_API unsigned negm_samples_mu(const negm_samples* samples);

/* ---- distribution ---- */

typedef struct negm_distribution negm_distribution;

/* Histogram of N / N_max against the Gaussian reference from `report`.
   The comparison is computed when there are at least 100 samples. */
NEGM_API negm_status negm_distribution_build(const negm_samples* samples, const negm_moment_report* report,
                                             unsigned bins, unsigned threads, negm_distribution** out);
NEGM_API void negm_distribution_free(negm_distribution* dist);
NEGM_API negm_status negm_distribution_comparison(const negm_distribution* dist, double* ks_statistic,
                                                  double* mean_zscore, double* sigma_relative_error);
NEGM_API negm_status negm_distribution_sample_mean(const negm_distribution* dist, double* mean);
NEGM_API negm_status negm_distribution_serialize(const negm_distribution* dist, int with_comparison, int n_qubits,
                                                 negm_format format, char** out);

/* ---- bounds ---- */

typedef struct negm_bounds {
    unsigned n_qubits;
    double c;
    double mean_negativity;
    double singlet_distance_lb;
    double singlet_distance_raw;
    double fidelity_ub;
    double fidelity_raw;
    double distillable_ub_ebits;
    double log_neg_mean;
    double singlet_distance_limit;
    double fidelity_limit;
    double distillable_offset;
} negm_bounds;

NEGM_API double negm_paper_constant(void);
/* Ratio limit extrapolated from the exact table for n = 2..14. */
NEGM_API negm_status negm_default_constant(unsigned threads, double* c);
NEGM_API negm_status negm_bounds_compute(unsigned n_qubits, double c, negm_bounds* out);
NEGM_API negm_status negm_bounds_serialize(const negm_bounds* bounds, negm_format format, char** out);
NEGM_API negm_status negm_cluster_threshold(unsigned d_a, double epsilon, double* out);

/* ---- verification ---- */

typedef struct negm_verify_result negm_verify_result;

NEGM_API negm_status negm_verify_run(unsigned max_mu, unsigned threads, negm_verify_result** out);
NEGM_API void negm_verify_free(negm_verify_result* result);
NEGM_API size_t negm_verify_count(const negm_verify_result* result);
/* Strings stay valid until the result is freed. */
NEGM_API negm_status negm_verify_check(const negm_verify_result* result, size_t index, const char** name,
                                       int* passed, const char** detail);

#ifdef __cplusplus
}
#endif

#endif
