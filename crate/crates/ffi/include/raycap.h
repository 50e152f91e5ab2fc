#ifndef RAYCAP_H
#define RAYCAP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Status codes; the nonzero values match the command-line exit codes where they overlap.
 */
typedef enum RaycapStatus {
  RAYCAP_STATUS_OK = 0,
  RAYCAP_STATUS_INTERNAL = 1,
  RAYCAP_STATUS_INVALID_INPUT = 2,
  RAYCAP_STATUS_NOT_FOUND = 3,
  RAYCAP_STATUS_POWER_BLOCKED = 4,
  RAYCAP_STATUS_VERIFY_FAILED = 5,
  RAYCAP_STATUS_BUDGET = 6,
  RAYCAP_STATUS_UNVERIFIED_COMPOSITE = 7,
  RAYCAP_STATUS_NULL_POINTER = 8,
  RAYCAP_STATUS_PANIC = 9,
} RaycapStatus;

/*
 Stamped capitulation certificate.
 */
typedef struct RaycapCertificate RaycapCertificate;

/*
 Real or imaginary quadratic field `Q(sqrt d)`.
 */
typedef struct RaycapField RaycapField;

/*
 Ray class group of a quadratic field modulo a squarefree integer.
 */
typedef struct RaycapRayClassGroup RaycapRayClassGroup;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last error on this thread; valid until the next call on this thread.
 */
const char *raycap_last_error(void);

/*
 Release a string returned by this library.

 # Safety
 `s` must come from this library and not have been freed.
 */
void raycap_string_free(char *s);

/*
 Create `Q(sqrt d)` for squarefree `d != 0, 1`.

 # Safety
 `out` must be a valid pointer.
 */
enum RaycapStatus raycap_field_new(int64_t d, struct RaycapField **out);

/*
 Field discriminant.

 # Safety
 `field` and `out` must be valid pointers.
 */
enum RaycapStatus raycap_field_disc(const struct RaycapField *field, int64_t *out);

/*
 # Safety
 `field` must come from [`raycap_field_new`] and not have been freed.
 */
void raycap_field_free(struct RaycapField *field);

/*
 Ray class group modulo every prime above the squarefree integer `m`.

 # Safety
 `field` and `out` must be valid pointers.
 */
enum RaycapStatus raycap_rayclass_new(const struct RaycapField *field,
                                      uint64_t m,
                                      struct RaycapRayClassGroup **out);

/*
 Group order.

 # Safety
 `g` and `out` must be valid pointers.
 */
enum RaycapStatus raycap_rayclass_order(const struct RaycapRayClassGroup *g, uint64_t *out);

/*
 Number of invariant factors.

 # Safety
 `g` and `out` must be valid pointers.
 */
enum RaycapStatus raycap_rayclass_rank(const struct RaycapRayClassGroup *g, size_t *out);

/*
 Invariant factor `i`, in divisibility order.

 # Safety
 `g` and `out` must be valid pointers.
 */
enum RaycapStatus raycap_rayclass_invariant(const struct RaycapRayClassGroup *g,
                                            size_t i,
                                            uint64_t *out);

/*
 # Safety
 `g` must come from [`raycap_rayclass_new`] and not have been freed.
 */
void raycap_rayclass_free(struct RaycapRayClassGroup *g);

/*
 Search for a principalizing prime `p <= bound` for the class selected by
 `class_sel` (`"trivial"`, `"auto-K"` or comma-separated coordinates).
 Writes a certificate on [`RaycapStatus::Ok`]; returns `NotFound` or
 `PowerBlocked` otherwise. `h < 0` selects the default.

 # Safety
 `class_sel` must be a NUL-terminated string; `out` must be valid.
 */
enum RaycapStatus raycap_search(int64_t d,
                                uint64_t m,
                                const char *class_sel,
                                uint64_t ell,
                                uint32_t n,
                                int32_t h,
                                uint64_t bound,
                                size_t jobs,
                                struct RaycapCertificate **out);

/*
 The principalizing prime recorded in the certificate.

 # Safety
 `cert` and `out` must be valid pointers.
 */
enum RaycapStatus raycap_certificate_prime(const struct RaycapCertificate *cert, uint64_t *out);

/*
 Certificate file JSON; free with [`raycap_string_free`].

 # Safety
 `cert` and `out` must be valid pointers.
 */
enum RaycapStatus raycap_certificate_to_json(const struct RaycapCertificate *cert, char **out);

/*
 Parse a certificate file; fails with `VerifyFailed` if the hash stamp does not match.

 # Safety
 `json` must be a NUL-terminated string; `out` must be valid.
 */
enum RaycapStatus raycap_certificate_from_json(const char *json, struct RaycapCertificate **out);

/*
 Re-check the certificate and decide capitulation in the biquadratic field.
 When `report_json` is not null it receives the verification report.

 # Safety
 `cert` must be valid; `report_json` may be null.
 */
enum RaycapStatus raycap_verify(const struct RaycapCertificate *cert,
                                uint64_t budget,
                                char **report_json);

/*
 # Safety
 `cert` must come from this library and not have been freed.
 */
void raycap_certificate_free(struct RaycapCertificate *cert);

/*
 Ambiguous class count of `Q(sqrt d) / Q` modulo `m`: formula value and direct count.

 # Safety
 `formula` and `direct` must be valid pointers.
 */
enum RaycapStatus raycap_ambig_quadratic(int64_t d,
                                         uint64_t m,
                                         uint64_t *formula,
                                         uint64_t *direct);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RAYCAP_H */
