/* C interface to the liesym library.
 *
 * Handles are opaque and owned by the caller; free them with the matching
 * *_free function. Strings returned through char** are heap-allocated and
 * must be released with liesym_string_free. On any status other than
 * LIESYM_OK, liesym_last_error() describes the failure for the calling
 * thread.
 */
#ifndef LIESYM_H
#define LIESYM_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define LIESYM_API __declspec(dllexport)
#else
#define LIESYM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum liesym_status {
  LIESYM_OK = 0,
  LIESYM_VERIFY_FAILED = 1, /* computed, but a verification did not pass */
  LIESYM_PARSE_ERROR = 2,
  LIESYM_UNSUPPORTED = 3,
  LIESYM_MATH_ERROR = 4,
  LIESYM_IO_ERROR = 5,
  LIESYM_INVALID_ARGUMENT = 6,
  LIESYM_INTERNAL_ERROR = 7
} liesym_status;

typedef enum liesym_format {
  LIESYM_FORMAT_TEXT = 0,
  LIESYM_FORMAT_JSON = 1,
  LIESYM_FORMAT_LATEX = 2
} liesym_format;

enum { LIESYM_MODE_NOETHER = 1, LIESYM_MODE_LIEPOINT = 2 };

typedef struct liesym_metric liesym_metric;
typedef struct liesym_generators liesym_generators;
typedef struct liesym_algebra liesym_algebra;

LIESYM_API const char *liesym_version(void);
LIESYM_API const char *liesym_status_name(liesym_status s);
/* Message of the last failed call on this thread; "" when none. */
LIESYM_API const char *liesym_last_error(void);
LIESYM_API void liesym_string_free(char *s);

/* Canonical form of an expression, e.g. "sin(x)^2 + cos(x)^2" -> "1". */
LIESYM_API liesym_status liesym_canonicalize(const char *expr, char **out);

/* Metrics. */
LIESYM_API liesym_status liesym_metric_load(const char *path, liesym_metric **out);
LIESYM_API liesym_status liesym_metric_parse(const char *text, const char *id, liesym_metric **out);
/* Copy of `m` with the declared function `name` replaced by `expr`. */
LIESYM_API liesym_status liesym_metric_bind(const liesym_metric *m, const char *name,
                                            const char *expr, liesym_metric **out);
LIESYM_API size_t liesym_metric_dim(const liesym_metric *m);
LIESYM_API const char *liesym_metric_id(const liesym_metric *m);
LIESYM_API void liesym_metric_free(liesym_metric *m);

/* Generators are parsed against a metric's chart. */
LIESYM_API liesym_status liesym_generators_load(const char *path, const liesym_metric *m,
                                                liesym_generators **out);
LIESYM_API liesym_status liesym_generators_parse(const char *text, const liesym_metric *m,
                                                 liesym_generators **out);
LIESYM_API size_t liesym_generators_count(const liesym_generators *g);
LIESYM_API void liesym_generators_free(liesym_generators *g);

/* Structure constants of the span of `g`. Returns LIESYM_VERIFY_FAILED when
 * the fields are dependent or the span is not closed under the bracket. */
LIESYM_API liesym_status liesym_algebra_from_generators(const liesym_generators *g,
                                                        liesym_algebra **out);
LIESYM_API size_t liesym_algebra_dim(const liesym_algebra *a);
/* c^k_ij as a rational string; indices are 0-based. */
LIESYM_API liesym_status liesym_algebra_constant(const liesym_algebra *a, size_t i, size_t j,
                                                 size_t k, char **out);
LIESYM_API void liesym_algebra_free(liesym_algebra *a);

/* Report functions. `*report` is set whenever the status is LIESYM_OK,
 * LIESYM_VERIFY_FAILED or LIESYM_UNSUPPORTED (partial report). */

/* `modes` is a mask of LIESYM_MODE_*; `ansatz_degree` <= 0 keeps the default. */
LIESYM_API liesym_status liesym_analyze(const liesym_metric *m, int modes, int ansatz_degree,
                                        liesym_format fmt, char **report);
LIESYM_API liesym_status liesym_verify(const liesym_metric *m, const liesym_generators *g,
                                       int modes, liesym_format fmt, char **report);
LIESYM_API liesym_status liesym_algebra_report(const liesym_algebra *a, liesym_format fmt,
                                               char **report);
LIESYM_API liesym_status liesym_optimal_report(const liesym_algebra *a, uint64_t samples,
                                               uint64_t seed, liesym_format fmt, char **report);

typedef struct liesym_integrate_options {
  const char *const *bind_names; /* declared functions of the metric */
  const char *const *bind_exprs;
  size_t n_bindings;
  const double *init; /* positions then velocities, 2n values */
  size_t n_init;
  double step;
  double span;
  const liesym_generators *gens; /* NULL: use the solver's Noether symmetries */
} liesym_integrate_options;

LIESYM_API liesym_status liesym_integrate(const liesym_metric *m,
                                          const liesym_integrate_options *opt, liesym_format fmt,
                                          char **report);

#ifdef __cplusplus
}
#endif

#endif /* LIESYM_H */
