#ifndef MERIDIAN_H
#define MERIDIAN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

#define MERIDIAN_ABI_VERSION 1

typedef enum MeridianStatus {
  MERIDIAN_STATUS_OK = 0,
  MERIDIAN_STATUS_NULL_POINTER = 1,
  MERIDIAN_STATUS_INVALID_UTF8 = 2,
  MERIDIAN_STATUS_PARSE = 3,
  MERIDIAN_STATUS_LINKING = 4,
  MERIDIAN_STATUS_INVALID_ARGUMENT = 5,
  // Coset enumeration hit its limits; the answer is unknown.
  MERIDIAN_STATUS_EXHAUSTED = 6,
  MERIDIAN_STATUS_BUFFER_TOO_SMALL = 7,
  MERIDIAN_STATUS_TARGET_TOO_LARGE = 8,
  MERIDIAN_STATUS_PANIC = 9,
} MeridianStatus;

typedef enum MeridianVerdict {
  MERIDIAN_VERDICT_ABELIAN = 0,
  MERIDIAN_VERDICT_NON_ABELIAN = 1,
  MERIDIAN_VERDICT_UNKNOWN = 2,
} MeridianVerdict;

// Opaque presented group with degree and linking values.
typedef struct MeridianCurveGroup MeridianCurveGroup;

// Opaque finitely presented group.
typedef struct MeridianPresentation MeridianPresentation;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

uint32_t meridian_abi_version(void);

// Message for the last failed call on this thread, or NULL. Free with
// `meridian_string_free`.
char *meridian_last_error(void);

// # Safety
// `s` must be NULL or a string returned by this library, not yet freed.
void meridian_string_free(char *s);

// Parses the text format. Curve-group files are accepted; their linking
// data is dropped.
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum MeridianStatus meridian_presentation_parse(const char *text,
                                                struct MeridianPresentation **out);

// Parses a curve group (the text must contain `group d=` and `lk` lines).
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum MeridianStatus meridian_curve_parse(const char *text, struct MeridianCurveGroup **out);

// Built-in curve group by name (`quartic`, `sextic-conic`,
// `sextic-generic`, `torus-<p>-<q>-<k>`).
//
// # Safety
// `name` must be a NUL-terminated string and `out` a valid pointer.
enum MeridianStatus meridian_curve_catalog(const char *name, struct MeridianCurveGroup **out);

// # Safety
// `out` must be a valid pointer.
enum MeridianStatus meridian_curve_torus(uint64_t p,
                                         uint64_t q,
                                         uint64_t k,
                                         struct MeridianCurveGroup **out);

// # Safety
// `p` must be NULL or a handle from this library, not yet freed.
void meridian_presentation_free(struct MeridianPresentation *p);

// # Safety
// `cg` must be NULL or a handle from this library, not yet freed.
void meridian_curve_free(struct MeridianCurveGroup *cg);

// Copies the underlying presentation of a curve group into a new handle.
//
// # Safety
// `cg` must be a live handle and `out` a valid pointer.
enum MeridianStatus meridian_curve_presentation(const struct MeridianCurveGroup *cg,
                                                struct MeridianPresentation **out);

// Degree of the curve, or 0 for a NULL handle.
//
// # Safety
// `cg` must be NULL or a live handle.
uint64_t meridian_curve_degree(const struct MeridianCurveGroup *cg);

// Text-format serialization; NULL for a NULL handle.
//
// # Safety
// `p` must be NULL or a live handle.
char *meridian_presentation_to_string(const struct MeridianPresentation *p);

// # Safety
// `cg` must be NULL or a live handle.
char *meridian_curve_to_string(const struct MeridianCurveGroup *cg);

// Group order by coset enumeration. Zero limits select the defaults.
// Returns `MERIDIAN_STATUS_EXHAUSTED` when the order is unknown.
//
// # Safety
// `p` must be a live handle and `out_order` a valid pointer.
enum MeridianStatus meridian_group_order(const struct MeridianPresentation *p,
                                         uintptr_t max_cosets,
                                         uint64_t max_steps,
                                         uint64_t *out_order);

// Abelian invariants. `out_len` always receives the number of torsion
// factors; if it exceeds `capacity` nothing is written to `torsion` and
// `MERIDIAN_STATUS_BUFFER_TOO_SMALL` is returned. Factors that do not fit
// in 64 bits are reported as `UINT64_MAX`.
//
// # Safety
// `p` must be a live handle; `out_free_rank` and `out_len` valid pointers;
// `torsion` valid for `capacity` writes (may be NULL when `capacity` is 0).
enum MeridianStatus meridian_abelianization(const struct MeridianPresentation *p,
                                            uintptr_t *out_free_rank,
                                            uint64_t *torsion,
                                            uintptr_t capacity,
                                            uintptr_t *out_len);

// Number of homomorphisms into a built-in target (`S3`, `S4`, `Q8`,
// `Dic12`, `Z1`..`Z12`).
//
// # Safety
// `p` must be a live handle, `target` a NUL-terminated string and
// `out_count` a valid pointer.
enum MeridianStatus meridian_count_homs(const struct MeridianPresentation *p,
                                        const char *target,
                                        uint64_t *out_count);

// Abelianness certificate using the default targets. Zero limits select
// the defaults.
//
// # Safety
// `p` must be a live handle and `out_verdict` a valid pointer.
enum MeridianStatus meridian_certify(const struct MeridianPresentation *p,
                                     uintptr_t max_cosets,
                                     uint64_t max_steps,
                                     enum MeridianVerdict *out_verdict);

// Curve group of the pull-back under a generic degree-`k` covering.
//
// # Safety
// `cg` must be a live handle and `out` a valid pointer.
enum MeridianStatus meridian_pullback(const struct MeridianCurveGroup *cg,
                                      uint64_t k,
                                      struct MeridianCurveGroup **out);

// Presentation of the affine complement group.
//
// # Safety
// `cg` must be a live handle and `out` a valid pointer.
enum MeridianStatus meridian_affine(const struct MeridianCurveGroup *cg,
                                    struct MeridianPresentation **out);

// Separation report for the pull-backs of two curve groups, one row per
// entry of `ks`, as JSON with the same row schema as the command-line
// `pair-report`. Free the string with `meridian_string_free`.
//
// # Safety
// `cg1`, `cg2` must be live handles, `ks` valid for `nk` reads and
// `out_json` a valid pointer.
enum MeridianStatus meridian_pair_report_json(const struct MeridianCurveGroup *cg1,
                                              const struct MeridianCurveGroup *cg2,
                                              const uint64_t *ks,
                                              uintptr_t nk,
                                              uintptr_t max_cosets,
                                              uint64_t max_steps,
                                              char **out_json);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* MERIDIAN_H */
