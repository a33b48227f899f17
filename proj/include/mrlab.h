#ifndef MRLAB_H_
#define MRLAB_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define MRLAB_API __declspec(dllexport)
#else
#define MRLAB_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status codes. Values 2-4 double as CLI exit codes. */
typedef enum mrlab_status {
  MRLAB_OK = 0,
  MRLAB_INVALID_INSTANCE = 2,
  MRLAB_INVALID_ARGUMENT = 3,
  MRLAB_UNSUPPORTED = 4,
  MRLAB_NUMERICAL = 5,
  MRLAB_IO = 6,
  MRLAB_INTERNAL = 7
} mrlab_status;

typedef struct mrlab_family mrlab_family;
typedef struct mrlab_instance mrlab_instance;
typedef struct mrlab_estimate mrlab_estimate;

/* Message of the last failed call on this thread; "" if none. */
MRLAB_API const char* mrlab_last_error(void);
/* Releases strings returned through char** out-parameters. */
MRLAB_API void mrlab_string_free(char* s);
MRLAB_API const char* mrlab_version(void);

/* ---- families ---------------------------------------------------------- */

/* descriptor: "kind=tri n=8 mode=line-cut", "kind=rec m=3 n=2",
   "members=1:1;1:2|2:1", ... line_cut_cap <= 0 selects the default (64). */
MRLAB_API mrlab_status mrlab_family_create(const char* descriptor, int64_t line_cut_cap,
                                           mrlab_family** out);
MRLAB_API void mrlab_family_free(mrlab_family* family);
MRLAB_API size_t mrlab_family_size(const mrlab_family* family);
MRLAB_API size_t mrlab_family_dimension(const mrlab_family* family);
/* per_point = 0: one row per member; otherwise one row per (i,j,member). */
MRLAB_API mrlab_status mrlab_family_csv(const mrlab_family* family, int per_point, char** out);

/* ---- decompositions (rationals as "p/q", integers or decimals) ---------- */

MRLAB_API mrlab_status mrlab_split_htri_csv(const char* a, const char* b, const char* c, int64_t m,
                                            char** out);
MRLAB_API mrlab_status mrlab_split_tri_csv(int64_t n, char** out);
MRLAB_API mrlab_status mrlab_classify_tri_member_csv(const char* a, const char* b, int64_t n,
                                                     char** out);

/* ---- instances ----------------------------------------------------------- */

MRLAB_API mrlab_status mrlab_instance_load(const char* path, mrlab_instance** out);
MRLAB_API mrlab_status mrlab_instance_parse(const char* text, mrlab_instance** out);
MRLAB_API mrlab_status mrlab_instance_save(const mrlab_instance* instance, const char* path);
MRLAB_API mrlab_status mrlab_instance_format(const mrlab_instance* instance, char** out);
MRLAB_API void mrlab_instance_free(mrlab_instance* instance);
MRLAB_API size_t mrlab_instance_points(const mrlab_instance* instance);
MRLAB_API size_t mrlab_instance_functions(const mrlab_instance* instance);
MRLAB_API size_t mrlab_instance_family_size(const mrlab_instance* instance);
/* naive != 0 recomputes every partial sum from scratch. */
MRLAB_API mrlab_status mrlab_instance_value(const mrlab_instance* instance, int naive, double* out);
/* Writes the maximal function at each measure point; len must be >= points. */
MRLAB_API mrlab_status mrlab_instance_maximal_function(const mrlab_instance* instance, int naive,
                                                       double* out, size_t len);
MRLAB_API mrlab_status mrlab_instance_gram_residual(const mrlab_instance* instance, double* out);
/* Rectangle instances over the full grid only. */
MRLAB_API mrlab_status mrlab_instance_reduce_rectangles(const mrlab_instance* instance,
                                                        mrlab_instance** out);

/* ---- estimation ---------------------------------------------------------- */

typedef struct mrlab_estimate_options {
  int64_t measure_points; /* 0: twice the ground-set size */
  int restarts;
  int iterations;
  int inner_steps;
  double relative_tolerance;
  uint64_t seed;
  int workers;
  /* Optional progress sink, possibly called from several threads at once. */
  void (*progress)(const char* message, void* user);
  void* progress_user;
} mrlab_estimate_options;

MRLAB_API void mrlab_estimate_options_default(mrlab_estimate_options* options);

/* warm_start may be NULL. */
MRLAB_API mrlab_status mrlab_estimate_run(const mrlab_family* family,
                                          const mrlab_estimate_options* options,
                                          const mrlab_instance* warm_start, mrlab_estimate** out);
MRLAB_API void mrlab_estimate_free(mrlab_estimate* estimate);
MRLAB_API mrlab_status mrlab_estimate_csv(const mrlab_estimate* estimate, char** out);
MRLAB_API double mrlab_estimate_best_value(const mrlab_estimate* estimate);
MRLAB_API int mrlab_estimate_best_restart(const mrlab_estimate* estimate);
MRLAB_API size_t mrlab_estimate_record_count(const mrlab_estimate* estimate);
/* Value trace (one entry per phase) of record `index`. Writes at most len
   entries and stores the full length in *count. */
MRLAB_API mrlab_status mrlab_estimate_trace(const mrlab_estimate* estimate, size_t index, double* out,
                                            size_t len, size_t* count);
MRLAB_API mrlab_status mrlab_estimate_record_value(const mrlab_estimate* estimate, size_t index,
                                                   double* out);
MRLAB_API mrlab_status mrlab_estimate_best_instance(const mrlab_estimate* estimate,
                                                    mrlab_instance** out);

/* svg_out may be NULL. kind/mode as in family descriptors. */
MRLAB_API mrlab_status mrlab_scaling_run(const char* kind, const char* mode, const int64_t* ns,
                                         size_t count, const mrlab_estimate_options* options,
                                         char** csv_out, char** svg_out);

/* Grid-search lower bound for mr over square systems, dimension <= 3. */
MRLAB_API mrlab_status mrlab_oracle(const mrlab_family* family, int resolution, double tolerance,
                                    double* out);

/* ---- certificates -------------------------------------------------------- */

typedef struct mrlab_constants {
  double alpha_hat;
  int base_log_plus_one; /* 1: beta(m) = alpha ln m + 1, 0: alpha ln m */
  double rec_factor;
  double c[5];
  double tri_base; /* B(1) */
} mrlab_constants;

MRLAB_API void mrlab_constants_default(mrlab_constants* constants);

typedef struct mrlab_gamma_report {
  double value;
  double eigenvector[4];
  int iterations;
  double closed_form_residual;
  double charpoly_residual;
  double eigen_residual;
  double solver_value;
} mrlab_gamma_report;

MRLAB_API mrlab_status mrlab_gamma(mrlab_gamma_report* out);
MRLAB_API double mrlab_quadratic_form(const double p[4]);
MRLAB_API double mrlab_tri_growth_exponent(void);

/* Returns MRLAB_UNSUPPORTED on the boundary case c = log_b a. */
MRLAB_API mrlab_status mrlab_master(double a, double b, double c, int log_power, int* case_id,
                                    double* exponent, int* log_power_out);

MRLAB_API mrlab_status mrlab_tri_step_bound(const double p[4], double a, double r, double h,
                                            double* out);
MRLAB_API mrlab_status mrlab_unroll_htri(int k, int64_t m, const mrlab_constants* constants,
                                         double* out);
/* B(2^k) for k = 0..max_k, max_k <= 60. bounds/envelopes need max_k + 1 slots. */
MRLAB_API mrlab_status mrlab_tri_bound_table(int max_k, const mrlab_constants* constants,
                                             double* bounds, double* envelopes);
MRLAB_API mrlab_status mrlab_certify_csv(int max_k, const mrlab_constants* constants, char** out);
MRLAB_API mrlab_status mrlab_htri_csv(int max_k, int64_t m, const mrlab_constants* constants,
                                      char** out);
MRLAB_API int mrlab_ceil_log2(uint64_t n);

#ifdef __cplusplus
}
#endif

#endif  // MRLAB_H_
