/* tckit — torsion-conductor bounds for elliptic curves over Q.
 *
 * C API over the computation core: opaque handles, status codes, and
 * JSON-string results.  Strings returned through `char **json_out` are
 * heap-allocated and must be released with tc_string_free().
 */
#ifndef TCKIT_H
#define TCKIT_H

#include <stdint.h>

#if defined(_WIN32)
#define TCKIT_API __declspec(dllexport)
#else
#define TCKIT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum tc_status {
  TC_OK = 0,
  TC_CHECK_FAILED = 1,
  TC_BAD_INPUT = 2,
  TC_MISSING_ASSERTION = 3,
  TC_RESOURCE_LIMIT = 4,
  TC_INTERNAL = 5
} tc_status;

typedef struct tc_curve tc_curve;     /* immutable curve + label */
typedef struct tc_options tc_options; /* pipeline knobs */

TCKIT_API const char *tc_version(void);
TCKIT_API const char *tc_status_name(tc_status s);

/* Message for the most recent failure on this thread. */
TCKIT_API const char *tc_last_error(void);

TCKIT_API void tc_string_free(char *s);

/* -- curves ------------------------------------------------------------- */

TCKIT_API tc_status tc_curve_create(int64_t a1, int64_t a2, int64_t a3, int64_t a4,
                                    int64_t a6, tc_curve **out);

/* Corpus record `label:a1,a2,a3,a4,a6`. */
TCKIT_API tc_status tc_curve_parse(const char *record, tc_curve **out);

TCKIT_API void tc_curve_free(tc_curve *c);
TCKIT_API const char *tc_curve_label(const tc_curve *c);

/* -- options ------------------------------------------------------------ */

TCKIT_API tc_options *tc_options_create(void);
TCKIT_API void tc_options_free(tc_options *o);
TCKIT_API void tc_options_set_non_cm(tc_options *o, int non_cm);
TCKIT_API void tc_options_set_prime_limit(tc_options *o, uint64_t limit);
TCKIT_API void tc_options_set_point_ceiling(tc_options *o, uint64_t ceiling);
TCKIT_API void tc_options_set_seed(tc_options *o, uint64_t seed);
TCKIT_API void tc_options_set_closure_budget(tc_options *o, uint64_t budget);
TCKIT_API void tc_options_set_occ_samples(tc_options *o, uint64_t samples);
TCKIT_API void tc_options_set_cq(tc_options *o, uint32_t cq);
TCKIT_API void tc_options_set_conductor(tc_options *o, uint64_t conductor);
TCKIT_API tc_status tc_options_set_alpha_override(tc_options *o, uint64_t p, uint32_t alpha);

/* -- computations (JSON results) ----------------------------------------- */

TCKIT_API tc_status tc_curve_info_json(const tc_curve *c, char **json_out);

TCKIT_API tc_status tc_frobenius_json(const tc_curve *c, uint64_t limit, char **json_out);

/* ell in {2, 3, 5, 7}. */
TCKIT_API tc_status tc_image_json(const tc_curve *c, uint32_t ell, const tc_options *o,
                                  char **json_out);

TCKIT_API tc_status tc_exceptional_set_json(const tc_curve *c, const tc_options *o,
                                            char **json_out);

TCKIT_API tc_status tc_conductor_report_json(const tc_curve *c, const tc_options *o,
                                             char **json_out);

TCKIT_API tc_status tc_occ_search_json(uint32_t modulus, const tc_options *o, char **json_out);

/* Selector: all | power-lift | kernel | vp | commutator | quotients | occ.
 * `all_expected_pass` (may be NULL) reports whether every check matched its
 * expectation; documented negative controls count as expected failures. */
TCKIT_API tc_status tc_verify_suite_json(const char *selector, const tc_options *o,
                                         char **json_out, int *all_expected_pass);

#ifdef __cplusplus
}
#endif

#endif /* TCKIT_H */
