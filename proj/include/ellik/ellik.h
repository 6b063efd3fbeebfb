/*
 * ellik - complete elliptic integrals of the first kind, sharp elementary
 * bounds, and desk-scale verification of the bound machinery.
 *
 * C interface of the shared library. All objects are opaque handles; all
 * numeric values cross the boundary as decimal strings so extended-precision
 * contexts lose nothing. Every function returns an ellik_status; string
 * outputs are NUL-terminated and truncation is reported, never silent.
 */

#ifndef ELLIK_H
#define ELLIK_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ellik_status {
  ELLIK_OK = 0,
  ELLIK_EINVAL = 1,       /* malformed argument or NULL handle */
  ELLIK_EDOMAIN = 2,      /* argument outside the operation's domain */
  ELLIK_ECONVERGENCE = 3, /* series term cap exceeded (r too close to 1) */
  ELLIK_ETOLERANCE = 4,   /* quadrature refinement budget exhausted */
  ELLIK_EPRECISION = 5,   /* cancellation exceeded the context's budget */
  ELLIK_EBUFFER = 6,      /* output buffer too small */
  ELLIK_EINTERNAL = 7
} ellik_status;

typedef enum ellik_mode {
  ELLIK_MODE_HARDWARE = 0, /* IEEE double */
  ELLIK_MODE_EXTENDED = 1  /* software big float, >= 16 decimal digits */
} ellik_mode;

typedef enum ellik_method {
  ELLIK_METHOD_AUTO = 0,
  ELLIK_METHOD_SERIES = 1,
  ELLIK_METHOD_AGM = 2,
  ELLIK_METHOD_QUADRATURE = 3
} ellik_method;

typedef enum ellik_constant {
  ELLIK_CONST_THETA = 0,
  ELLIK_CONST_LAMBDA = 1,
  ELLIK_CONST_ALPHA = 2,
  ELLIK_CONST_BETA = 3,
  ELLIK_CONST_DELTA = 4,
  ELLIK_CONST_ZETA = 5,
  ELLIK_CONST_ALPHA_STAR = 6,
  ELLIK_CONST_BETA_STAR = 7
} ellik_constant;

typedef enum ellik_bound {
  ELLIK_BOUND_AR_UPPER = 0,
  ELLIK_BOUND_AVV_UPPER = 1,
  ELLIK_BOUND_WCLC_LOWER = 2,
  ELLIK_BOUND_WCLC_UPPER = 3,
  ELLIK_BOUND_NEW_LOWER = 4,
  ELLIK_BOUND_NEW_UPPER = 5,
  /* branch diagnostics behind the max/min of the sharp double bound */
  ELLIK_BOUND_NEW_LOWER_FROM_F = 6,
  ELLIK_BOUND_NEW_LOWER_FROM_G = 7,
  ELLIK_BOUND_NEW_UPPER_FROM_F = 8,
  ELLIK_BOUND_NEW_UPPER_FROM_G = 9
} ellik_bound;

typedef enum ellik_verify_target {
  ELLIK_VERIFY_CONSTANTS = 0,
  ELLIK_VERIFY_LEMMA = 1,
  ELLIK_VERIFY_COEFFICIENTS = 2,
  ELLIK_VERIFY_SANDWICH = 3,
  ELLIK_VERIFY_SHAPE = 4,
  ELLIK_VERIFY_ALL = 5
} ellik_verify_target;

/* columns of a comparison table */
typedef enum ellik_column {
  ELLIK_COL_R = 0,
  ELLIK_COL_K = 1,
  ELLIK_COL_NEW_LOWER = 2,
  ELLIK_COL_NEW_UPPER = 3,
  ELLIK_COL_AR_UPPER = 4,
  ELLIK_COL_AVV_UPPER = 5,
  ELLIK_COL_WCLC_LOWER = 6,
  ELLIK_COL_WCLC_UPPER = 7,
  ELLIK_COL_TIGHTEST_LOWER = 8,
  ELLIK_COL_TIGHTEST_UPPER = 9,
  ELLIK_COL_NEW_LOWER_FROM_F = 10,
  ELLIK_COL_NEW_LOWER_FROM_G = 11,
  ELLIK_COL_NEW_UPPER_FROM_F = 12,
  ELLIK_COL_NEW_UPPER_FROM_G = 13
} ellik_column;

typedef struct ellik_context ellik_context; /* immutable precision context */
typedef struct ellik_table ellik_table;     /* comparison table over a grid */
typedef struct ellik_reports ellik_reports; /* verification report list */

const char* ellik_version(void);
const char* ellik_status_message(ellik_status status);

/* Detail of the last failure on this thread; valid until the next call. */
const char* ellik_last_error(void);

/* digits is ignored in hardware mode; extended mode requires digits >= 16.
 * Pass 0 in extended mode for the default of 50. */
ellik_status ellik_context_create(ellik_mode mode, unsigned digits, ellik_context** out);
void ellik_context_destroy(ellik_context* ctx);
ellik_mode ellik_context_mode(const ellik_context* ctx);
unsigned ellik_context_digits(const ellik_context* ctx);

/* --- scalar evaluations (r, a, x, s are decimal strings) ---------------- */

/* K(r) for 0 <= r < 1. err_estimate and method_used may be NULL. */
ellik_status ellik_eval_k(const ellik_context* ctx, const char* r, ellik_method method,
                          char* value, size_t value_cap, char* err_estimate,
                          size_t err_estimate_cap, ellik_method* method_used);

ellik_status ellik_constant_value(const ellik_context* ctx, ellik_constant which, char* value,
                                  size_t value_cap);

/* One bound family at one modulus, 0 < r < 1. */
ellik_status ellik_bound_value(const ellik_context* ctx, ellik_bound which, const char* r,
                               char* value, size_t value_cap);

/* The theorem functions f/r^4 and g/r^2 (series form near the endpoints). */
ellik_status ellik_f1(const ellik_context* ctx, const char* r, char* value, size_t value_cap);
ellik_status ellik_g1(const ellik_context* ctx, const char* r, char* value, size_t value_cap);

/* Rising factorial (a)_n; a must be nonzero when n = 0. */
ellik_status ellik_pochhammer(const ellik_context* ctx, const char* a, unsigned long n,
                              char* value, size_t value_cap);

/* Gamma(n - 1/2)/Gamma(n), n >= 1, by recurrence. */
ellik_status ellik_gamma_half_ratio(const ellik_context* ctx, unsigned long n, char* value,
                                    size_t value_cap);

/* Q_n, P_n and (for n >= 3) the series coefficient c_n. Any of the three
 * output buffers may be NULL; c is written as "" when n < 3. */
ellik_status ellik_sequence_term(const ellik_context* ctx, unsigned long n, char* q, size_t q_cap,
                                 char* p, size_t p_cap, char* c, size_t c_cap);

/* Kershaw's bracketing of Gamma(x+1)/Gamma(x+s), x > 0, 0 < s < 1. */
ellik_status ellik_kershaw(const ellik_context* ctx, const char* x, const char* s, char* lower,
                           size_t lower_cap, char* upper, size_t upper_cap);

/* CSV of the assembled "f" or "g" expansion (index,coefficient per r^{2k}).
 * Call with value = NULL to query the required size via needed. */
ellik_status ellik_series_csv(const ellik_context* ctx, const char* name, unsigned order,
                              char* value, size_t value_cap, size_t* needed);

/* --- comparison tables --------------------------------------------------- */

/* grid is "start:stop:step" over (0,1); both ends on-lattice are included. */
ellik_status ellik_compare_run(const ellik_context* ctx, const char* grid, ellik_table** out);
ellik_status ellik_compare_single(const ellik_context* ctx, const char* r, ellik_table** out);
void ellik_table_destroy(ellik_table* table);

size_t ellik_table_rows(const ellik_table* table);
size_t ellik_table_violations(const ellik_table* table);
ellik_status ellik_table_cell(const ellik_table* table, size_t row, ellik_column column,
                              char* value, size_t value_cap);
ellik_status ellik_table_csv(const ellik_table* table, char* value, size_t value_cap,
                             size_t* needed);
ellik_status ellik_table_json(const ellik_table* table, char* value, size_t value_cap,
                              size_t* needed);
ellik_status ellik_table_summary_json(const ellik_table* table, char* value, size_t value_cap,
                                      size_t* needed);

/* --- verification -------------------------------------------------------- */

/* n_max = 0 picks the default of 10000; grid may be NULL for the target's
 * default. The call succeeds even when claims fail; inspect the reports. */
ellik_status ellik_verify_run(const ellik_context* ctx, ellik_verify_target target,
                              unsigned long n_max, const char* grid, ellik_reports** out);
void ellik_reports_destroy(ellik_reports* reports);

size_t ellik_reports_count(const ellik_reports* reports);
int ellik_reports_all_passed(const ellik_reports* reports);
ellik_status ellik_report_passed(const ellik_reports* reports, size_t index, int* passed);
ellik_status ellik_report_min_margin(const ellik_reports* reports, size_t index, double* margin);
ellik_status ellik_report_digits_used(const ellik_reports* reports, size_t index,
                                      unsigned* digits);
ellik_status ellik_report_claim_id(const ellik_reports* reports, size_t index, char* value,
                                   size_t value_cap);
ellik_status ellik_report_range(const ellik_reports* reports, size_t index, char* value,
                                size_t value_cap);
/* "" when the claim never failed. */
ellik_status ellik_report_first_failure(const ellik_reports* reports, size_t index, char* value,
                                        size_t value_cap);
/* Fixed schema: claim_id, range, min_margin, passed, first_failure,
 * digits_used — in that order. */
ellik_status ellik_report_json(const ellik_reports* reports, size_t index, char* value,
                               size_t value_cap, size_t* needed);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* ELLIK_H */
