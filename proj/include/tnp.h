/* tnp — temporal network predictability
 *
 * C interface to the analysis core. All functions return a tnp_status;
 * results come back through out-parameters as opaque handles that must be
 * released with the matching *_free call. On failure the handle is left
 * untouched and tnp_last_error() describes the problem (thread-local).
 */
#ifndef TNP_H
#define TNP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define TNP_API __declspec(dllexport)
#else
#define TNP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tnp_status {
  TNP_OK = 0,
  TNP_ERROR_USAGE = 1,   /* invalid arguments */
  TNP_ERROR_DATA = 2,    /* unreadable or malformed input */
  TNP_ERROR_NUMERIC = 3  /* numeric failure */
} tnp_status;

typedef struct tnp_matrix tnp_matrix;
typedef struct tnp_report tnp_report;

TNP_API const char* tnp_version(void);
TNP_API const char* tnp_last_error(void);

/* ---- matrix lifecycle ---- */

/* Event file -> expanded matrix. aggregation: "count", "sum" or "max". */
TNP_API tnp_status tnp_ingest_events_file(const char* path, double bin_width, int directed,
                                          const char* aggregation, tnp_matrix** out);
TNP_API tnp_status tnp_matrix_read_file(const char* path, tnp_matrix** out);
TNP_API tnp_status tnp_matrix_write_file(const tnp_matrix* m, const char* path);
TNP_API void tnp_matrix_free(tnp_matrix* m);

TNP_API size_t tnp_matrix_rows(const tnp_matrix* m);
TNP_API size_t tnp_matrix_cols(const tnp_matrix* m);
TNP_API size_t tnp_matrix_alphabet_size(const tnp_matrix* m);
TNP_API int tnp_matrix_directed(const tnp_matrix* m);
TNP_API int32_t tnp_matrix_value(const tnp_matrix* m, size_t row, size_t col);

/* ---- transforms (each returns a new handle) ---- */

TNP_API tnp_status tnp_matrix_quantize(const tnp_matrix* m, int levels, tnp_matrix** out);
TNP_API tnp_status tnp_matrix_filter(const tnp_matrix* m, double mass_frac, double act_thresh,
                                     size_t m_theta, tnp_matrix** out);
TNP_API tnp_status tnp_matrix_permute_rows(const tnp_matrix* m, uint64_t seed, tnp_matrix** out);
TNP_API tnp_status tnp_matrix_shuffle_global(const tnp_matrix* m, uint64_t seed, tnp_matrix** out);
TNP_API tnp_status tnp_matrix_shuffle_within_rows(const tnp_matrix* m, uint64_t seed,
                                                  tnp_matrix** out);
TNP_API tnp_status tnp_matrix_drop_links(const tnp_matrix* m, double fraction, uint64_t seed,
                                         tnp_matrix** out);
/* Half-open ranges [row0, row1) x [col0, col1). */
TNP_API tnp_status tnp_matrix_slice(const tnp_matrix* m, size_t row0, size_t row1, size_t col0,
                                    size_t col1, tnp_matrix** out);

/* ---- generators ---- */

TNP_API tnp_status tnp_gen_small_world(size_t n_nodes, double rewire_p, size_t snapshots,
                                       uint64_t seed, tnp_matrix** out);
TNP_API tnp_status tnp_gen_tsbm(size_t communities, size_t n_nodes, size_t degree,
                                size_t snapshots, double beta, double gamma, size_t alphabet_size,
                                uint64_t seed, tnp_matrix** out);
TNP_API tnp_status tnp_gen_long_range(size_t rows, size_t cols, double gamma_x, double gamma_y,
                                      size_t levels, uint64_t seed, tnp_matrix** out);

/* ---- estimator primitives ---- */

/* Entropy rate (bits per cell) of a square matrix, n >= 2. */
TNP_API tnp_status tnp_entropy_rate_2d(const tnp_matrix* m, double* out);
/* Entropy rate of one row of the matrix. */
TNP_API tnp_status tnp_entropy_rate_1d(const tnp_matrix* m, size_t row, double* out);
/* Predictability bound for a given entropy (bits) and alphabet size. */
TNP_API tnp_status tnp_solve_fano(double entropy_bits, size_t alphabet_size, double* out);

/* ---- analyses ---- */

typedef struct tnp_profile_params {
  double mass_frac;     /* 0.6  */
  double act_thresh;    /* 0.1  */
  size_t m_theta;       /* 1000 */
  int row_orders;       /* 1    */
  int baseline_runs;    /* 40   */
  uint64_t seed;        /* 1    */
  int with_hamming;     /* 0    */
  size_t max_pairs;     /* 100000 */
} tnp_profile_params;

TNP_API void tnp_profile_params_init(tnp_profile_params* params);

/* Filter + TTP + shuffled baseline + NTTP + per-link profile. The input is
 * the unfiltered matrix. */
TNP_API tnp_status tnp_profile(const tnp_matrix* m, const tnp_profile_params* params,
                               tnp_report** out);

/* TTP of the matrix as given (no filtering), max over row_orders
 * arrangements. */
TNP_API tnp_status tnp_ttp(const tnp_matrix* m, int row_orders, uint64_t seed, double* out);
/* Mean TTP over seeded global shuffles. */
TNP_API tnp_status tnp_ttp_baseline(const tnp_matrix* m, int realizations, uint64_t seed,
                                    double* out);

/* Order-l Markov predictor vs the TTP bound on the same filtered matrix. */
TNP_API tnp_status tnp_markov(const tnp_matrix* m, int order, double train_frac, int row_orders,
                              uint64_t seed, double mass_frac, double act_thresh, size_t m_theta,
                              tnp_report** out);

/* ---- reports ---- */

/* JSON text owned by the report handle; valid until tnp_report_free. */
TNP_API const char* tnp_report_json(const tnp_report* report);
/* Fetch one numeric field by JSON pointer, e.g. "/ttp/value". */
TNP_API tnp_status tnp_report_value(const tnp_report* report, const char* json_pointer,
                                    double* out);
TNP_API void tnp_report_free(tnp_report* report);

#ifdef __cplusplus
}
#endif

#endif /* TNP_H */
