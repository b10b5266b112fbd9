#ifndef GIANT_QED_H
#define GIANT_QED_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum GqStatus {
  GQ_STATUS_OK = 0,
  GQ_STATUS_NULL_POINTER = 1,
  GQ_STATUS_INVALID_ARGUMENT = 2,
  GQ_STATUS_UNPHYSICAL = 3,
  GQ_STATUS_IO = 4,
  GQ_STATUS_BUFFER_TOO_SMALL = 5,
  GQ_STATUS_PANIC = 6,
} GqStatus;

typedef enum GqPreset {
  GQ_PRESET_SEPARATED = 0,
  GQ_PRESET_FULLY_BRAIDED = 1,
  GQ_PRESET_PARTIALLY_BRAIDED = 2,
  GQ_PRESET_FULLY_NESTED = 3,
  GQ_PRESET_PARTIALLY_NESTED = 4,
} GqPreset;

/*
 Opaque layout handle.
 */
typedef struct GqLayout GqLayout;

/*
 Opaque trajectory handle.
 */
typedef struct GqTrajectory GqTrajectory;

/*
 Coupling coefficients at one phase.
 */
typedef struct GqCoefficients {
  double delta_a;
  double delta_b;
  double gamma_a;
  double gamma_b;
  double gcoll_re;
  double gcoll_im;
  double g_re;
  double g_im;
} GqCoefficients;

typedef struct GqMaxResult {
  double c_max;
  double phi_star;
  double t_star;
} GqMaxResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failure on this thread, or NULL.

 The pointer stays valid until the next call into this library on the
 same thread.
 */
const char *gq_last_error_message(void);

/*
 Library version as a static NUL-terminated string.
 */
const char *gq_version(void);

/*
 Creates one of the named layouts.

 # Safety
 `out` must be a valid pointer to writable storage for one handle.
 */
enum GqStatus gq_layout_preset(enum GqPreset preset, struct GqLayout **out);

/*
 Creates a layout from three lattice positions per atom.

 # Safety
 `a` and `b` must each point to 3 readable `uint32_t`; `out` must be writable.
 */
enum GqStatus gq_layout_from_positions(const uint32_t *a, const uint32_t *b, struct GqLayout **out);

/*
 Releases a layout. NULL is ignored.

 # Safety
 `layout` must come from this library and not have been freed.
 */
void gq_layout_free(struct GqLayout *layout);

/*
 Coupling coefficients at phase `phi` for total rate `gamma` and
 chirality `chi`.

 # Safety
 `layout` must be a live handle and `out` writable.
 */
enum GqStatus gq_coefficients(const struct GqLayout *layout,
                              double phi,
                              double gamma,
                              double chi,
                              struct GqCoefficients *out);

/*
 Evolves from `c0` (`re, im, re, im`, or NULL for |eg>) over the
 `n_times` values of `gamma t` in `times`.

 # Safety
 `layout` must be a live handle, `times` must hold `n_times` values,
 `c0` is NULL or holds 4 values, and `out` must be writable.
 */
enum GqStatus gq_evolve(const struct GqLayout *layout,
                        double phi,
                        double gamma,
                        double chi,
                        const double *c0,
                        const double *times,
                        size_t n_times,
                        struct GqTrajectory **out);

/*
 Number of samples in a trajectory, 0 for NULL.

 # Safety
 `traj` must be NULL or a live handle.
 */
size_t gq_trajectory_len(const struct GqTrajectory *traj);

/*
 Copies the concurrence samples into `buf`.

 # Safety
 `traj` must be a live handle and `buf` must hold `capacity` doubles.
 */
enum GqStatus gq_trajectory_concurrence(const struct GqTrajectory *traj,
                                        double *buf,
                                        size_t capacity);

/*
 Copies amplitudes as `c_eg.re, c_eg.im, c_ge.re, c_ge.im` per sample,
 needing `4 * len` doubles.

 # Safety
 `traj` must be a live handle and `buf` must hold `capacity` doubles.
 */
enum GqStatus gq_trajectory_amplitudes(const struct GqTrajectory *traj,
                                       double *buf,
                                       size_t capacity);

/*
 Releases a trajectory. NULL is ignored.

 # Safety
 `traj` must come from this library and not have been freed.
 */
void gq_trajectory_free(struct GqTrajectory *traj);

/*
 Largest concurrence over `phi` in `[phi_lo, phi_hi]` and
 `gamma t` in `[0, horizon]`, using the default search grids.

 # Safety
 `layout` must be a live handle, `c0` NULL or 4 values, `out` writable.
 */
enum GqStatus gq_find_max(const struct GqLayout *layout,
                          double gamma,
                          double chi,
                          const double *c0,
                          double phi_lo,
                          double phi_hi,
                          double horizon,
                          struct GqMaxResult *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* GIANT_QED_H */
