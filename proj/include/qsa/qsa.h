/* C interface to the Quicksort comparison-count analysis library.
 *
 * Conventions:
 *   - Every function returns a qsa_status. On failure, qsa_last_error()
 *     returns a message for the calling thread until its next failing call.
 *   - Variable-length results are written to caller buffers described by a
 *     capacity. The required element count is always stored in *count, and
 *     QSA_E_BUFFER_TOO_SMALL is returned when the capacity is insufficient,
 *     so callers may query sizes by passing a NULL buffer and capacity 0.
 *   - Wide values are m * 2^e with m in [1, 2), or m == 0 for zero.
 */
#ifndef QSA_QSA_H
#define QSA_QSA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QSA_BUILDING_LIBRARY)
#    define QSA_API __declspec(dllexport)
#  else
#    define QSA_API __declspec(dllimport)
#  endif
#else
#  define QSA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qsa_status {
    QSA_OK = 0,
    QSA_E_INVALID_ARGUMENT = 1,
    QSA_E_DOMAIN = 2,
    QSA_E_BUFFER_TOO_SMALL = 3,
    QSA_E_OUT_OF_MEMORY = 4,
    QSA_E_CANCELLED = 5,
    QSA_E_INTERNAL = 6
} qsa_status;

QSA_API const char* qsa_last_error(void);
QSA_API const char* qsa_status_name(qsa_status status);
QSA_API const char* qsa_version(void);

/* ---- Wide-exponent scalars ---------------------------------------------- */

typedef struct qsa_wide {
    double mantissa;
    int64_t exponent;
} qsa_wide;

QSA_API qsa_status qsa_wide_from_double(double x, qsa_wide* out);
QSA_API qsa_status qsa_wide_add(qsa_wide a, qsa_wide b, qsa_wide* out);
QSA_API qsa_status qsa_wide_mul(qsa_wide a, qsa_wide b, qsa_wide* out);
QSA_API qsa_status qsa_wide_div(qsa_wide a, qsa_wide b, qsa_wide* out);
/* -1, 0 or 1. */
QSA_API qsa_status qsa_wide_compare(qsa_wide a, qsa_wide b, int* out);
QSA_API qsa_status qsa_wide_log10(qsa_wide a, double* out);
/* n! as a wide value. */
QSA_API qsa_status qsa_wide_factorial(int64_t n, qsa_wide* out);
/* Decimal text such as "1.220e1134"; the terminating NUL is included in *count. */
QSA_API qsa_status qsa_wide_to_decimal(qsa_wide a, int digits, char* buf, size_t capacity, size_t* count);

/* ---- Models ------------------------------------------------------------- */

typedef struct qsa_model {
    int model;             /* 1..5 */
    int64_t q_min;         /* default 5 */
    int64_t n_b_max;       /* default 9, model 5 only */
    int64_t forced_sample; /* 0 = adaptive */
} qsa_model;

typedef enum qsa_selection_mode {
    QSA_SELECTION_FIXED_SHIFT = 0,
    QSA_SELECTION_EXACT = 1
} qsa_selection_mode;

/* Model 1 with q_min 5 and n_b_max 9. */
QSA_API qsa_model qsa_model_default(int model);
/* "1", "2", "3", "4", "4a", "4b", "5". */
QSA_API qsa_status qsa_model_named(const char* name, qsa_model* out);
QSA_API qsa_status qsa_model_validate(const qsa_model* model);

/* p_n(0..n-1) into out[n]; the values sum to n. */
QSA_API qsa_status qsa_pivot_kernel(const qsa_model* model, int64_t n, double* out, size_t capacity,
                                    size_t* count);
/* Exact median-of-three-medians kernel. */
QSA_API qsa_status qsa_pivot_kernel_exact(int64_t n, double* out, size_t capacity, size_t* count);

/* ---- Distribution tables ------------------------------------------------ */

typedef struct qsa_table qsa_table;

/* Return non-zero to cancel; extension then fails with QSA_E_CANCELLED and
 * keeps the sizes completed so far. */
typedef int (*qsa_progress_fn)(int64_t n, int64_t target, void* user);

QSA_API qsa_status qsa_table_create(const qsa_model* model, qsa_selection_mode mode, unsigned threads,
                                    qsa_table** out);
QSA_API void qsa_table_destroy(qsa_table* table);
QSA_API qsa_status qsa_table_extend(qsa_table* table, int64_t n, qsa_progress_fn progress, void* user);
QSA_API qsa_status qsa_table_computed(const qsa_table* table, int64_t* n);
/* Support [lo, hi] of f_n. */
QSA_API qsa_status qsa_table_support(qsa_table* table, int64_t n, int64_t* lo, int64_t* hi);
/* f_n(lo..hi). */
QSA_API qsa_status qsa_table_weights(qsa_table* table, int64_t n, qsa_wide* out, size_t capacity,
                                     size_t* count);
QSA_API qsa_status qsa_table_moments(qsa_table* table, int64_t n, double* mean, double* stddev);
QSA_API qsa_status qsa_table_bad_probability(qsa_table* table, int64_t n, double tau, qsa_wide* out);
QSA_API qsa_status qsa_table_probability_ratio(qsa_table* table, double tau, int64_t n_num, int64_t n_den,
                                               double* out);

/* ---- Recurrences and closed forms --------------------------------------- */

/* Averages for sizes 0..n_max into out[n_max + 1]. */
QSA_API qsa_status qsa_average_comparisons(const qsa_model* model, int64_t n_max, qsa_selection_mode mode,
                                           double* out, size_t capacity, size_t* count);
QSA_API qsa_status qsa_max_comparisons(const qsa_model* model, int64_t n_max, int64_t* out, size_t capacity,
                                       size_t* count);
QSA_API qsa_status qsa_min_comparisons(const qsa_model* model, int64_t n_max, int64_t* out, size_t capacity,
                                       size_t* count);
QSA_API qsa_status qsa_iliopoulos_sigma(int64_t n, double* out);

typedef struct qsa_bound_report {
    double max_bound_ratio;
    int64_t argmax_n;
    double leading_coefficient;
} qsa_bound_report;

QSA_API qsa_status qsa_worst_case_bound(const int64_t* maxima, size_t count, double coefficient,
                                        double exponent, qsa_bound_report* out);
/* Waiting time until a bad case when a sort starts every interval_ms. */
QSA_API qsa_status qsa_expected_time(qsa_wide p, double interval_ms, char* buf, size_t capacity,
                                     size_t* count);

/* ---- Sorters ------------------------------------------------------------ */

typedef enum qsa_sorter_kind {
    QSA_SORTER_QUICKSORT = 0,
    QSA_SORTER_HEAPSORT = 1,
    QSA_SORTER_HEAPSORT_BOTTOM_UP = 2,
    QSA_SORTER_INSERTION = 3
} qsa_sorter_kind;

typedef struct qsa_sorter {
    qsa_sorter_kind kind;
    int model; /* pivot rule of models 1..5 for Quicksort */
    int threeway;
    int64_t q_min;
    int64_t n_b_max;
} qsa_sorter;

typedef struct qsa_sort_stats {
    uint64_t comparisons;
    uint64_t movements;
    uint64_t max_stack_depth;
} qsa_sort_stats;

/* Names like "quicksort-m5-2way", "heapsort-bottom-up", "insertion". */
QSA_API qsa_status qsa_sorter_parse(const char* name, qsa_sorter* out);
QSA_API qsa_status qsa_sorter_name(const qsa_sorter* sorter, char* buf, size_t capacity, size_t* count);
/* stats may be NULL. */
QSA_API qsa_status qsa_sort_int32(const qsa_sorter* sorter, int32_t* data, size_t n, qsa_sort_stats* stats);
QSA_API qsa_status qsa_sort_double(const qsa_sorter* sorter, double* data, size_t n, qsa_sort_stats* stats);

/* ---- Oracles, simulation, adversary, benchmarks ------------------------ */

typedef enum qsa_partition_scheme {
    QSA_PARTITION_SWEEP = 0,
    QSA_PARTITION_SWEEP_EXTENDED = 1,
    QSA_PARTITION_CLASSIC = 2,
    QSA_PARTITION_CLASSIC_EXTENDED = 3,
    QSA_PARTITION_NEW = 4
} qsa_partition_scheme;

typedef struct qsa_partition_summary {
    int64_t permutations;
    int64_t comparisons_num, comparisons_den;
    int64_t movements_num, movements_den;
} qsa_partition_summary;

/* Histogram entries are (comparisons, permutations) pairs in increasing order. */
QSA_API qsa_status qsa_partition_stats(qsa_partition_scheme scheme, int64_t n, qsa_partition_summary* summary,
                                       int64_t* keys, int64_t* counts, size_t capacity, size_t* count);
QSA_API qsa_status qsa_sort_histogram(const qsa_sorter* sorter, int64_t n, int64_t* keys, int64_t* counts,
                                      size_t capacity, size_t* count);
QSA_API qsa_status qsa_simulate_pivots(const qsa_model* model, int64_t n, int64_t trials, int64_t bin,
                                       uint64_t seed, uint64_t* out, size_t capacity, size_t* count);
/* input may be NULL; otherwise it receives the n constructed keys. */
QSA_API qsa_status qsa_killer_adversary(const qsa_sorter* sorter, int64_t n, uint64_t* comparisons,
                                        uint64_t* replay_comparisons, int32_t* input);

typedef enum qsa_dataset_kind {
    QSA_DATA_RANDOM = 0,
    QSA_DATA_INCREASING = 1,
    QSA_DATA_DECREASING = 2,
    QSA_DATA_EQUAL = 3,
    QSA_DATA_ORGAN_PIPE = 4,
    QSA_DATA_RANDOM01 = 5
} qsa_dataset_kind;

typedef enum qsa_element_kind { QSA_ELEMENT_INT4 = 0, QSA_ELEMENT_FLOAT8 = 1, QSA_ELEMENT_RECORD32 = 2 } qsa_element_kind;

/* "random", "increasing", "decreasing", "equal", "organpipe", "random01". */
QSA_API qsa_status qsa_dataset_parse(const char* name, qsa_dataset_kind* out);
QSA_API qsa_status qsa_generate_dataset(qsa_dataset_kind kind, int64_t n, uint64_t seed, int32_t* out);

typedef struct qsa_benchmark_result {
    double median_ms;
    uint64_t comparisons;
    uint64_t movements;
} qsa_benchmark_result;

QSA_API qsa_status qsa_benchmark(const qsa_sorter* sorter, qsa_dataset_kind kind, qsa_element_kind element,
                                 int64_t n, uint64_t seed, int repeats, qsa_benchmark_result* out);

#ifdef __cplusplus
}
#endif

#endif
