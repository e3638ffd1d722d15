#ifndef JBOUND_H
#define JBOUND_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

#define JB_OK 0

#define JB_CHECK_FAILURE 1

#define JB_INVALID_INPUT 2

#define JB_RESOURCE_CAP 3

#define JB_NULL_ARGUMENT 4

#define JB_INTERNAL 5

// An opaque subgroup handle.
typedef struct JbGroup JbGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Version of the library as a static NUL-terminated string; never freed.
const char *jb_version(void);

// Copy of the most recent error message on this thread, or null when the
// last call succeeded. Free with `jb_string_free`.
char *jb_last_error_message(void);

// Releases a string returned by this library. Null is a no-op.
//
// # Safety
// `s` must be null or a pointer previously returned by this library and
// not yet freed.
void jb_string_free(char *s);

// Builds a subgroup of GL2(Z/level) from `count` generator matrices laid
// out row-major as 4 i64 entries each ([a, b, c, d] for [[a, b], [c, d]]).
// `count` may be zero for the trivial subgroup. `level_cap` of 0 selects
// the built-in default cap.
//
// # Safety
// `entries` must point to `4 * count` readable i64 values (or be null when
// `count` is 0); `out` must be a valid pointer.
int32_t jb_group_new(uint32_t level,
                     const int64_t *entries,
                     size_t count,
                     uint32_t level_cap,
                     struct JbGroup **out);

// Releases a group handle. Null is a no-op.
//
// # Safety
// `g` must be null or an unfreed handle from `jb_group_new`.
void jb_group_free(struct JbGroup *g);

// Number of elements of the subgroup (with -1 adjoined).
//
// # Safety
// `g` must be a live handle; `out` must be valid.
int32_t jb_group_order(const struct JbGroup *g, uint64_t *out);

// Number of cusps of the associated curve.
//
// # Safety
// `g` must be a live handle; `out` must be valid.
int32_t jb_group_nu_infty(const struct JbGroup *g, uint64_t *out);

// Rank of the modular-unit divisor lattice (always cusps - 1).
//
// # Safety
// `g` must be a live handle; `out` must be valid.
int32_t jb_group_divisor_rank(const struct JbGroup *g, uint64_t *out);

// Evaluates bound reports for a JSON config (same schema as the CLI) and
// a theorem selector ("1", "2", "3", "pipeline", "lambda1", or "all").
// On JB_OK, `*out_json` holds the report; free it with `jb_string_free`.
//
// # Safety
// `config_json` and `theorem` must be NUL-terminated; `out_json` valid.
int32_t jb_bound_json(const char *config_json, const char *theorem, char **out_json);

// Produces a listing report ("orbits", "cusps", "units", or "siegel");
// `point` is "k1,k2" for "siegel" and may be null otherwise.
//
// # Safety
// Non-null arguments must be NUL-terminated; `out_json` valid.
int32_t jb_inspect_json(const char *config_json,
                        const char *what,
                        const char *point,
                        char **out_json);

// Runs a verification suite ("product", "coeff-bounds", "numeric",
// "divisors", "bounds-oracle", or "all"). The report is written on both
// JB_OK and JB_CHECK_FAILURE; the latter means some check failed.
//
// # Safety
// `config_json` and `suite` must be NUL-terminated; `out_json` valid.
int32_t jb_verify_json(const char *config_json, const char *suite, char **out_json);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* JBOUND_H */
