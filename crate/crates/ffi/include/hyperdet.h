#ifndef HYPERDET_H
#define HYPERDET_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HdStatus {
  HD_STATUS_OK = 0,
  HD_STATUS_POLE = 1,
  HD_STATUS_DOMAIN = 2,
  HD_STATUS_CONVERGENCE = 3,
  HD_STATUS_MODEL = 4,
  HD_STATUS_INTERNAL = 5,
  HD_STATUS_DIAGNOSTIC = 6,
  HD_STATUS_OVERFLOW = 7,
  HD_STATUS_CONFIG = 8,
  HD_STATUS_NULL_POINTER = 9,
  HD_STATUS_INVALID_STRING = 10,
  HD_STATUS_PANIC = 11,
} HdStatus;

/**
 * Opaque scattering model.
 */
typedef struct HdScattering HdScattering;

/**
 * Opaque length spectrum.
 */
typedef struct HdSpectrum HdSpectrum;

/**
 * Opaque surface signature.
 */
typedef struct HdSurface HdSurface;

/**
 * Real parts of the geometric trace at a real evaluation point.
 */
typedef struct HdTrace {
  double identity;
  double hyperbolic;
  double elliptic;
  double parabolic;
  double total;
  double truncation_error;
  /**
   * Sigma(s); meaningful only when `has_sigma`.
   */
  double sigma;
  bool has_sigma;
  bool partial;
} HdTrace;

typedef struct HdConstants {
  uint64_t d_n;
  int64_t a;
  double b;
  double d;
  double log_abs_c;
  /**
   * +1 or -1
   */
  int32_t sign_c;
} HdConstants;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread; empty after a success.
 * The pointer stays valid until the next hyperdet call on the same thread.
 */
const char *hd_last_error(void);

/**
 * Static name of a status code.
 */
const char *hd_status_name(enum HdStatus status);

/**
 * # Safety
 * `orders` points to `len` readable values (may be NULL when `len` is 0);
 * `out` is writable.
 */
enum HdStatus hd_surface_new(uint32_t genus,
                             uint32_t cusps,
                             const uint32_t *orders,
                             size_t len,
                             struct HdSurface **out_surface);

/**
 * # Safety
 * `json` is a NUL-terminated string; `out_surface` is writable.
 */
enum HdStatus hd_surface_from_json(const char *json, struct HdSurface **out_surface);

/**
 * # Safety
 * `surface` comes from this library and is not used afterwards; NULL is ignored.
 */
void hd_surface_free(struct HdSurface *surface);

/**
 * # Safety
 * Pointers are valid.
 */
enum HdStatus hd_surface_area(const struct HdSurface *surface, double *out_area);

/**
 * # Safety
 * Pointers are valid.
 */
enum HdStatus hd_dim_holomorphic(const struct HdSurface *surface, uint32_t n, uint64_t *out_dim);

/**
 * # Safety
 * `json` is a NUL-terminated string; `out_spectrum` is writable.
 */
enum HdStatus hd_spectrum_from_json(const char *json, struct HdSpectrum **out_spectrum);

/**
 * # Safety
 * `spectrum` comes from this library and is not used afterwards; NULL is ignored.
 */
void hd_spectrum_free(struct HdSpectrum *spectrum);

/**
 * `spec` is "none", "modular" or "file:PATH".
 *
 * # Safety
 * `spec` is a NUL-terminated string; `out_model` is writable.
 */
enum HdStatus hd_scattering_new(const char *spec, struct HdScattering **out_model);

/**
 * # Safety
 * `model` comes from this library and is not used afterwards; NULL is ignored.
 */
void hd_scattering_free(struct HdScattering *model);

/**
 * Geometric trace at real s. NULL `spectrum` means no hyperbolic classes,
 * NULL `model` means no scattering model.
 *
 * # Safety
 * Non-NULL pointers are valid; `out_trace` is writable.
 */
enum HdStatus hd_geometric_trace(const struct HdSurface *surface,
                                 uint32_t n,
                                 double s,
                                 const struct HdSpectrum *spectrum,
                                 const struct HdScattering *model,
                                 uint32_t kmax,
                                 bool skip_scattering,
                                 struct HdTrace *out_trace);

/**
 * log det(Delta_n + s(s+2n-1)) at real s.
 *
 * # Safety
 * Non-NULL pointers are valid; `out_log_det` is writable.
 */
enum HdStatus hd_log_det(const struct HdSurface *surface,
                         uint32_t n,
                         double s,
                         const struct HdSpectrum *spectrum,
                         const struct HdScattering *model,
                         uint32_t kmax,
                         double *out_log_det);

/**
 * A, B, D, C_n and d_n. `n0` only matters for n = 0.
 *
 * # Safety
 * Non-NULL pointers are valid; `out_constants` is writable.
 */
enum HdStatus hd_constants(const struct HdSurface *surface,
                           uint32_t n,
                           const struct HdScattering *model,
                           uint32_t n0,
                           struct HdConstants *out_constants);

/**
 * log Z(s) of the truncated Euler product and a bound on its tail.
 *
 * # Safety
 * Non-NULL pointers are valid; out-pointers are writable.
 */
enum HdStatus hd_selberg_zeta(const struct HdSpectrum *spectrum,
                              double s,
                              uint32_t kmax,
                              double *out_log,
                              double *out_tail);

/**
 * det' Delta_n. For n = 0 the product's leading coefficient at 0 is used.
 *
 * # Safety
 * Non-NULL pointers are valid; `out_det` is writable.
 */
enum HdStatus hd_det_prime(const struct HdSurface *surface,
                           uint32_t n,
                           const struct HdSpectrum *spectrum,
                           const struct HdScattering *model,
                           uint32_t n0,
                           uint32_t kmax,
                           double *out_det);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* HYPERDET_H */
