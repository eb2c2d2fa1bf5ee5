/* zpkit C interface.
 *
 * Every function returns a zpk_status. On failure the message is available
 * from zpk_last_error() on the calling thread until the next failing call.
 * Strings returned through char** are heap allocated and must be released
 * with zpk_string_free. Index sets and positions are 1-based.
 */
#ifndef ZPKIT_ZPKIT_H
#define ZPKIT_ZPKIT_H

#include <stddef.h>
#include <stdint.h>

#if defined(ZPKIT_BUILDING_LIBRARY)
#define ZPKIT_API __attribute__((visibility("default")))
#else
#define ZPKIT_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum zpk_status {
  ZPK_OK = 0,
  ZPK_INVALID_ARGUMENT = 1,
  ZPK_MALFORMED_CURVE = 2,
  ZPK_AMBIGUOUS_ORDER = 3,
  ZPK_INSUFFICIENT_PRECISION = 4,
  ZPK_UNSUPPORTED_LEVEL = 5,
  ZPK_OVERLAPPING_INDEX_SETS = 6,
  ZPK_INDEX_IN_I = 7,
  ZPK_ROOT_ISOLATION_FAILURE = 8,
  ZPK_NOT_IRREDUCIBLE = 9,
  ZPK_OVERFLOW = 10,
  ZPK_IO = 11,
  ZPK_INTERNAL = 100
} zpk_status;

typedef enum zpk_reduction { ZPK_ORDINARY = 0, ZPK_SUPERSINGULAR = 1, ZPK_BAD = 2 } zpk_reduction;

ZPKIT_API const char* zpk_version(void);
ZPKIT_API const char* zpk_status_name(zpk_status status);
ZPKIT_API const char* zpk_last_error(void);
ZPKIT_API void zpk_string_free(char* s);

/* Curves. */
typedef struct zpk_curve zpk_curve;

/* "[a1,a2,a3,a4,a6]" or "y^2=x^3+Ax+B"; label may be NULL. */
ZPKIT_API zpk_status zpk_curve_parse(const char* text, const char* label, zpk_curve** out);
ZPKIT_API void zpk_curve_free(zpk_curve* curve);
ZPKIT_API zpk_status zpk_curve_json(const zpk_curve* curve, char** out);
ZPKIT_API zpk_status zpk_curve_local_data(const zpk_curve* curve, uint64_t p, uint64_t exhaustive_below,
                                          zpk_reduction* type, int64_t* ap);

/* Trace of y^2 = x^3 + a4 x + a6 over F_p. method: 0 automatic, 1 exhaustive, 2 BSGS. */
ZPKIT_API zpk_status zpk_trace(uint64_t p, uint64_t a4, uint64_t a6, int method, uint64_t exhaustive_below,
                               int64_t* ap);

/* Prime scans. */
typedef struct zpk_scan_options {
  uint32_t threads;
  uint64_t exhaustive_below;
  const char* cache_path; /* NULL: no cache */
} zpk_scan_options;

ZPKIT_API void zpk_scan_options_init(zpk_scan_options* opts);

/* {"label", "primes": [{"p", "a_p", "type"}]} for every prime p <= pmax. */
ZPKIT_API zpk_status zpk_aps(const zpk_curve* curve, uint64_t pmax, const zpk_scan_options* opts, char** out);

typedef struct zpk_scan_result zpk_scan_result;

/* Simultaneous supersingular primes of n >= 1 curves. checkpoints may be NULL
 * (powers of ten plus xmax). */
ZPKIT_API zpk_status zpk_scan(const zpk_curve* const* curves, size_t n, uint64_t xmax, const uint64_t* checkpoints,
                              size_t n_checkpoints, const zpk_scan_options* opts, zpk_scan_result** out);
ZPKIT_API void zpk_scan_result_free(zpk_scan_result* result);
ZPKIT_API size_t zpk_scan_result_simultaneous(const zpk_scan_result* result, const uint64_t** primes);
ZPKIT_API zpk_status zpk_scan_result_json(const zpk_scan_result* result, char** out);
ZPKIT_API zpk_status zpk_scan_result_csv(const zpk_scan_result* result, char** out);
/* model: "loglog", "sqrt_over_log" or "prime_count". */
ZPKIT_API zpk_status zpk_scan_fit(const zpk_scan_result* result, const char* model, char** out);
ZPKIT_API zpk_status zpk_scan_margin(const zpk_scan_result* result, int degree, double coefficient, int field_degree,
                                     int* holds);
/* JSON array of cache warnings collected while scanning. */
ZPKIT_API zpk_status zpk_scan_result_warnings(const zpk_scan_result* result, char** out);
/* JSON array of reasons a pair is CM or isogenous (empty when none found). */
ZPKIT_API zpk_status zpk_pair_warnings(const zpk_curve* a, const zpk_curve* b, char** out);

/* Modular polynomials. */
typedef struct zpk_modpoly zpk_modpoly;

ZPKIT_API zpk_status zpk_modpoly_compute(int level, zpk_modpoly** out);
ZPKIT_API void zpk_modpoly_free(zpk_modpoly* phi);
ZPKIT_API zpk_status zpk_modpoly_text(const zpk_modpoly* phi, char** out);
ZPKIT_API zpk_status zpk_modpoly_summary(const zpk_modpoly* phi, char** out);
/* Exact value as "p/q" text. */
ZPKIT_API zpk_status zpk_modpoly_eval(int level, const char* x, const char* y, char** out);
ZPKIT_API zpk_status zpk_isogeny_search(const char* j1, const char* j2, int bound, char** out);

/* Special loci. point: comma-separated rationals. I: three indices. J may be
 * NULL; j = 0 means absent. levels: 2 (V_I), 4 (V_IJ) or 3 (V_Ij) entries. */
ZPKIT_API zpk_status zpk_locus_check(const char* point, const int* I, const int* J, int j, const int* levels,
                                     size_t n_levels, char** out);
/* mode: "V_I", "V_IJ" or "V_Ij". */
ZPKIT_API zpk_status zpk_locus_search(const char* point, const int* I, const char* mode, const int* J, int j,
                                      int bound, char** out);
ZPKIT_API zpk_status zpk_locus_genericity(const char* point, const int* I, int bound, char** out);
ZPKIT_API zpk_status zpk_is_singular_modulus(const char* j, int* out);

/* Heights. */
ZPKIT_API zpk_status zpk_height_rational(const char* q, double* out);
/* coefficients "c_d,...,c_0"; eps <= 0 selects the default 1e-12. */
ZPKIT_API zpk_status zpk_height_minpoly(const char* coefficients, double eps, char** out);

/* Ledger. */
ZPKIT_API zpk_status zpk_degree_bound(int theorem, int64_t c_bad, int64_t pi_K, int64_t n_ssing,
                                      int64_t field_degree, int64_t* out);
ZPKIT_API zpk_status zpk_height_threshold(double log_exponent, double rhs, double* h, double* log_h,
                                          int* no_threshold);
/* request: JSON object with keys theorem ("thm1"|"thm2"), x, curves (array of
 * curve strings), c_bad, field_degree, and optionally base_degree, h_s,
 * pi_source ("proximity"|"supplied"|"scan"|"claim"), pi_K, c1, c2, D, C0, C1,
 * scan_cap, threads, exhaustive_below, cache_path. */
ZPKIT_API zpk_status zpk_ledger_pipeline(const char* request, char** out);

#ifdef __cplusplus
}
#endif

#endif
