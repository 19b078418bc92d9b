#ifndef AZK_H
#define AZK_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum AzkStatus {
  AZK_STATUS_OK = 0,
  AZK_STATUS_NULL_POINTER = 1,
  AZK_STATUS_INVALID_UTF8 = 2,
  AZK_STATUS_PARSE_ERROR = 3,
  AZK_STATUS_INVALID_INPUT = 4,
  AZK_STATUS_AZUMAYA_NEGATIVE = 5,
  AZK_STATUS_PANIC = 6,
} AzkStatus;

typedef struct AzkBadPrimes AzkBadPrimes;

typedef struct AzkPoly AzkPoly;

typedef struct AzkStarReport AzkStarReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the most recent failure on this thread; empty after success.
 * The pointer stays valid until the next call into the library.
 */
const char *azk_last_error(void);

/**
 * Parse a polynomial such as `"t^2 - 3t + 1"`.
 *
 * # Safety
 * `src` must be a NUL-terminated string and `out` writable.
 */
enum AzkStatus azk_poly_parse(const char *src, struct AzkPoly **out);

/**
 * Alexander polynomial of a family member, e.g. `"twist:8"` or `"lehmer"`.
 *
 * # Safety
 * `spec` must be a NUL-terminated string and `out` writable.
 */
enum AzkStatus azk_poly_family(const char *spec, struct AzkPoly **out);

/**
 * Canonical text form; release with [`azk_string_free`].
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum AzkStatus azk_poly_to_string(const struct AzkPoly *p, char **out);

/**
 * # Safety
 * `s` must come from this library or be null.
 */
void azk_string_free(char *s);

/**
 * # Safety
 * `p` must come from this library or be null.
 */
void azk_poly_free(struct AzkPoly *p);

/**
 * Decide condition (⋆) for every root.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum AzkStatus azk_star_check(const struct AzkPoly *p, struct AzkStarReport **out);

/**
 * 1 if positive, 0 if negative, -1 on a null handle.
 *
 * # Safety
 * `r` must be a live handle or null.
 */
int azk_star_report_is_positive(const struct AzkStarReport *r);

/**
 * Number of failing factors.
 *
 * # Safety
 * `r` must be a live handle or null.
 */
size_t azk_star_report_witness_count(const struct AzkStarReport *r);

/**
 * # Safety
 * `r` must be a live handle and `out` writable.
 */
enum AzkStatus azk_star_report_json(const struct AzkStarReport *r, char **out);

/**
 * # Safety
 * `r` must come from this library or be null.
 */
void azk_star_report_free(struct AzkStarReport *r);

/**
 * Condition (⋆_l); writes 1 when it holds and 0 otherwise.
 *
 * # Safety
 * `p` must be a live handle and `holds` writable.
 */
enum AzkStatus azk_star_mod(const struct AzkPoly *p, uint64_t ell, int *holds);

/**
 * Bad primes of a positive polynomial; `scan_limit = 0` tests candidates only.
 * A negative polynomial yields `AzumayaNegative`.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum AzkStatus azk_bad_primes(const struct AzkPoly *p,
                              uint64_t scan_limit,
                              struct AzkBadPrimes **out);

/**
 * # Safety
 * `b` must be a live handle or null.
 */
size_t azk_bad_primes_count(const struct AzkBadPrimes *b);

/**
 * The `i`-th bad prime in increasing order, or 0 when out of range.
 *
 * # Safety
 * `b` must be a live handle or null.
 */
uint64_t azk_bad_primes_get(const struct AzkBadPrimes *b, size_t i);

/**
 * # Safety
 * `b` must come from this library or be null.
 */
void azk_bad_primes_free(struct AzkBadPrimes *b);

/**
 * Hilbert symbol `(a, b)_v` with `a`, `b` given as decimal rationals like
 * `"-3"` or `"5/7"`; `place = 0` is the real place, otherwise a prime.
 *
 * # Safety
 * `a`, `b` must be NUL-terminated strings and `out` writable.
 */
enum AzkStatus azk_hilbert_symbol(const char *a, const char *b, uint64_t place, int *out);

/**
 * Ramification of `(a, b)_Q`. Up to `cap` finite primes go to `primes`;
 * `count` receives the full number, which may exceed `cap`.
 *
 * # Safety
 * `a`, `b` must be NUL-terminated strings; `real` and `count` writable;
 * `primes` writable for `cap` entries (may be null when `cap` is 0).
 */
enum AzkStatus azk_ramification(const char *a,
                                const char *b,
                                int *real,
                                uint64_t *primes,
                                size_t cap,
                                size_t *count);

/**
 * Run a casebook entry (`"fig8"`, `"pretzel7"`, `"m137"`). `json` may be
 * null; otherwise it receives the report.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `passed` writable.
 */
enum AzkStatus azk_casebook_run(const char *name, int *passed, char **json);

/**
 * Root-location predicates as JSON.
 *
 * # Safety
 * `p` must be a live handle and `out` writable.
 */
enum AzkStatus azk_knot_predicates_json(const struct AzkPoly *p, char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* AZK_H */
