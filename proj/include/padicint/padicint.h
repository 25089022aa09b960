/* C interface to the p-adic integration library.
 *
 * Every operation takes a context, returns a padic_status and, on success,
 * stores a heap string in *out that the caller releases with
 * padic_string_free. Rationals cross the boundary as "a/b" strings. On
 * failure *out is set to NULL and padic_last_error describes the problem.
 */
#ifndef PADICINT_H
#define PADICINT_H

#include <stdint.h>

#if defined(_WIN32)
#define PADIC_API __declspec(dllexport)
#else
#define PADIC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct padic_context padic_context;

typedef enum padic_status {
  PADIC_OK = 0,
  PADIC_DOMAIN_ERROR = 1,
  PADIC_PARSE_ERROR = 2,
  PADIC_BUDGET_EXCEEDED = 3,
  PADIC_CHECK_FAILED = 4,
  PADIC_INVALID_ARGUMENT = 5,
  PADIC_INTERNAL_ERROR = 6
} padic_status;

PADIC_API padic_status padic_context_new(long prime, padic_context** out);
PADIC_API void padic_context_free(padic_context* ctx);

PADIC_API padic_status padic_set_prime(padic_context* ctx, long prime);
PADIC_API padic_status padic_set_budget(padic_context* ctx, uint64_t budget);
/* Oracle depth for padic_integrate_oracle. */
PADIC_API padic_status padic_set_depth(padic_context* ctx, int depth);
/* Verification margin for rational fitting. */
PADIC_API padic_status padic_set_guard(padic_context* ctx, int guard);
/* Extra digits for re-enumerating skipped oracle classes (0 disables). */
PADIC_API padic_status padic_set_refine(padic_context* ctx, int refine);
PADIC_API padic_status padic_set_threads(padic_context* ctx, unsigned threads);
/* Nonzero selects JSON output. */
PADIC_API padic_status padic_set_json(padic_context* ctx, int json);
/* Oracle growth bound |f| <= scale * (1 + w)^power * q^(exponent * w). */
PADIC_API padic_status padic_set_growth(padic_context* ctx, const char* scale, long exponent, int power);

/* Message of the last failure on this context, "" when none. */
PADIC_API const char* padic_last_error(const padic_context* ctx);
/* Error name such as "DomainError" or "BudgetExceeded", "" when none. */
PADIC_API const char* padic_last_error_name(const padic_context* ctx);

PADIC_API void padic_string_free(char* s);
PADIC_API const char* padic_version(void);

/* ord_p(x); "inf" for x = 0. */
PADIC_API padic_status padic_ord(padic_context* ctx, const char* x, char** out);
/* ac_m(x) as a residue mod p^m. */
PADIC_API padic_status padic_ac(padic_context* ctx, const char* x, int m, char** out);
/* Total Haar measure of a K-cell or an array of K-cells (JSON). */
PADIC_API padic_status padic_measure(padic_context* ctx, const char* kcells_json, char** out);
/* Sum over a Γ-cell or union of weight(tau) q^(-N tau); weight is a
 * polynomial in x1 standing for tau, or NULL for 1. */
PADIC_API padic_status padic_gsum(padic_context* ctx, const char* cells_json, long N, const char* weight, char** out);
/* ◁-minimum of a Γ-cell union (JSON). */
PADIC_API padic_status padic_wmin(padic_context* ctx, const char* cells_json, char** out);
/* Exact integral; domain_json NULL means the unit ball in x1..xn. */
PADIC_API padic_status padic_integrate(padic_context* ctx, const char* integrand, const char* domain_json, char** out);
/* Residue-enumeration estimate with certified tail bound. */
PADIC_API padic_status padic_integrate_oracle(padic_context* ctx, const char* integrand, const char* domain_json,
                                    char** out);
/* Counts, fitted rational function and identity checks; mmax < 0 picks the
 * largest depth within budget (capped at 12). */
PADIC_API padic_status padic_poincare(padic_context* ctx, const char* polynomial, int mmax, char** out);
/* Cross-validation suite; PADIC_CHECK_FAILED when any check fails. */
PADIC_API padic_status padic_check(padic_context* ctx, char** out);

#ifdef __cplusplus
}
#endif

#endif /* PADICINT_H */
