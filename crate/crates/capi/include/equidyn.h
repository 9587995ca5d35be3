/* C interface of the equidyn planar-dynamics library. */

#ifndef EQUIDYN_H
#define EQUIDYN_H

#pragma once

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status code of every fallible call.
 */
typedef enum EqdStatus {
  EQD_STATUS_OK = 0,
  /**
   * A required pointer argument was null.
   */
  EQD_STATUS_NULL_POINTER = 1,
  /**
   * A string argument was not valid UTF-8.
   */
  EQD_STATUS_INVALID_UTF8 = 2,
  /**
   * Malformed spec (JSON, group literal, unknown catalog id).
   */
  EQD_STATUS_INVALID_SPEC = 3,
  /**
   * Structurally valid input whose mathematical precondition fails.
   */
  EQD_STATUS_PRECONDITION = 4,
  /**
   * Evaluation overflowed (escape).
   */
  EQD_STATUS_OVERFLOW = 5,
  /**
   * Internal failure.
   */
  EQD_STATUS_INTERNAL = 6,
} EqdStatus;

/**
 * Local type of the origin, mirroring the library classification.
 */
typedef enum EqdLocalClass {
  EQD_LOCAL_CLASS_ATTRACTOR = 0,
  EQD_LOCAL_CLASS_REPELLOR = 1,
  EQD_LOCAL_CLASS_SADDLE = 2,
  EQD_LOCAL_CLASS_DIRECT_SADDLE = 3,
  EQD_LOCAL_CLASS_NON_HYPERBOLIC = 4,
} EqdLocalClass;

/**
 * Opaque circle-lift handle.
 */
typedef struct EqdLift EqdLift;

/**
 * Opaque planar-map handle.
 */
typedef struct EqdMap EqdMap;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the most recent failure on this thread; the empty string when
 * nothing failed yet. The pointer stays valid until the next failing call
 * on the same thread.
 */
const char *eqd_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *eqd_version(void);

/**
 * Release a string returned by one of the `*_json` calls.
 *
 * # Safety
 * `s` must be a pointer previously returned by this library and not yet
 * freed; null is ignored.
 */
void eqd_string_free(char *s);

/**
 * Build a map from the JSON spec format (`{"catalog": ..., "params":
 * {...}}` or `{"polynomial": {...}, "group": ...}`).
 *
 * # Safety
 * `spec` must be a valid NUL-terminated string and `out` a valid pointer.
 */
enum EqdStatus eqd_map_from_json(const char *spec, struct EqdMap **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum EqdStatus eqd_map_d2_cubic(double a, struct EqdMap **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum EqdStatus eqd_map_twist_zn(uint32_t n, double c, struct EqdMap **out);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum EqdStatus eqd_map_linear_saddle(double alpha, double beta, struct EqdMap **out);

/**
 * SO(2)-equivariant map with the homothety profile `r(rho) = k rho`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum EqdStatus eqd_map_so2_radial_linear(double k, double w, struct EqdMap **out);

/**
 * SO(2)-equivariant map with the cubic profile
 * `r(rho) = rho ((1-c) + c rho^2)`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum EqdStatus eqd_map_so2_radial_cubic(double c, double w, struct EqdMap **out);

/**
 * # Safety
 * `map` must be a handle from this library, not yet freed; null is
 * ignored.
 */
void eqd_map_free(struct EqdMap *map);

/**
 * Catalog id, parameters and claimed group of the map, as JSON.
 *
 * # Safety
 * `map` must be a valid handle; `out_json` a valid pointer.
 */
enum EqdStatus eqd_map_describe_json(const struct EqdMap *map, char **out_json);

/**
 * Evaluate the map; overflow reports [`EqdStatus::Overflow`].
 *
 * # Safety
 * `map` must be a valid handle; `out_x`, `out_y` valid pointers.
 */
enum EqdStatus eqd_map_eval(const struct EqdMap *map,
                            double x,
                            double y,
                            double *out_x,
                            double *out_y);

/**
 * Jacobian at `(x, y)` into a row-major length-4 buffer (exact when the
 * map carries one, otherwise central differences with step `h`).
 *
 * # Safety
 * `map` must be a valid handle; `out` must point to 4 writable doubles.
 */
enum EqdStatus eqd_map_jacobian(const struct EqdMap *map,
                                double x,
                                double y,
                                double h,
                                double *out);

/**
 * Classify the origin. Eigenvalues land in `out_eigs` as
 * `[re0, im0, re1, im1]`, ordered by modulus.
 *
 * # Safety
 * `map` must be a valid handle; `out_class` valid; `out_eigs` must point
 * to 4 writable doubles.
 */
enum EqdStatus eqd_map_classify_origin(const struct EqdMap *map,
                                       double tol_hyp,
                                       enum EqdLocalClass *out_class,
                                       double *out_eigs);

/**
 * Sampled equivariance check against a group literal (`O2`, `SO2`,
 * `D<n>`, `Z<n>`, `Z2k`, `Z2`, `triv`).
 *
 * # Safety
 * `map` must be a valid handle, `group` a valid string, out-pointers
 * valid.
 */
enum EqdStatus eqd_map_equivariance(const struct EqdMap *map,
                                    const char *group,
                                    size_t n_samples,
                                    double radius,
                                    double tol,
                                    uint64_t seed,
                                    double *out_max_defect,
                                    int32_t *out_pass);

/**
 * Classify the forward orbit of one point: `out_kind` takes 0 converges,
 * 1 escapes, 2 periodic, 3 undecided.
 *
 * # Safety
 * `map` must be a valid handle; out-pointers valid.
 */
enum EqdStatus eqd_map_classify_omega(const struct EqdMap *map,
                                      double x,
                                      double y,
                                      size_t budget,
                                      double eps_zero,
                                      double r_escape,
                                      int32_t *out_kind,
                                      size_t *out_iterations);

/**
 * Rasterize basins over `[x0, x1] x [y0, y1]` into a caller-allocated
 * `nx * ny` byte buffer (row-major from the lower-left cell; codes 0
 * fixed, 1 escape, 2 periodic, 3 undecided).
 *
 * # Safety
 * `map` must be a valid handle; `out_cells` must point to `nx * ny`
 * writable bytes.
 */
enum EqdStatus eqd_map_basin(const struct EqdMap *map,
                             double x0,
                             double x1,
                             double y0,
                             double y1,
                             size_t nx,
                             size_t ny,
                             size_t budget,
                             double eps_zero,
                             double r_escape,
                             uint8_t *out_cells);

/**
 * Spectral scan over a square grid: largest sampled spectral radius and
 * whether the sampled spectrum meets `[0, inf)`.
 *
 * # Safety
 * `map` must be a valid handle; out-pointers valid.
 */
enum EqdStatus eqd_map_dmy_check(const struct EqdMap *map,
                                 double x0,
                                 double x1,
                                 double y0,
                                 double y1,
                                 size_t grid_res,
                                 double h,
                                 int32_t *out_all_inside,
                                 double *out_worst_radius,
                                 int32_t *out_meets_nonneg_axis);

/**
 * Periodic-orbit search from a `grid x grid` seed lattice over the given
 * rectangle; the orbit list (points, minimal periods, multipliers) is
 * returned as a JSON string.
 *
 * # Safety
 * `map` must be a valid handle; `out_json` a valid pointer.
 */
enum EqdStatus eqd_map_find_periodic_json(const struct EqdMap *map,
                                          size_t period,
                                          double x0,
                                          double x1,
                                          double y0,
                                          double y1,
                                          size_t grid,
                                          double tol,
                                          size_t max_newton,
                                          char **out_json);

/**
 * Run the global-attractor certifier with default budgets against a group
 * literal (pass null to use the map's claimed group); the full report is
 * returned as a JSON string.
 *
 * # Safety
 * `map` must be a valid handle; `group` null or a valid string;
 * `out_json` a valid pointer.
 */
enum EqdStatus eqd_map_certify_json(const struct EqdMap *map,
                                    const char *group,
                                    uint64_t seed,
                                    char **out_json);

/**
 * # Safety
 * `out` must be a valid pointer.
 */
enum EqdStatus eqd_lift_rigid(double w, struct EqdLift **out);

/**
 * Equivariant Denjoy lift: target rotation number `tau`, symmetry order
 * `m`, orbit truncation `k`, geometric length ratio `lambda`, total gap
 * mass `mass`.
 *
 * # Safety
 * `out` must be a valid pointer.
 */
enum EqdStatus eqd_lift_denjoy(double tau,
                               uint32_t m,
                               int32_t k,
                               double lambda,
                               double mass,
                               struct EqdLift **out);

/**
 * # Safety
 * `lift` must be a handle from this library, not yet freed; null is
 * ignored.
 */
void eqd_lift_free(struct EqdLift *lift);

/**
 * # Safety
 * `lift` must be a valid handle; `out` a valid pointer.
 */
enum EqdStatus eqd_lift_eval(const struct EqdLift *lift, double x, double *out);

/**
 * Rotation-number estimate `(F^n(x0) - x0)/n` with its `1/n` bound.
 *
 * # Safety
 * `lift` must be a valid handle; out-pointers valid.
 */
enum EqdStatus eqd_lift_rotation_number(const struct EqdLift *lift,
                                        double x0,
                                        size_t n_iter,
                                        double *out_estimate,
                                        double *out_bound);

/**
 * Max defect of `F(x + 1/m) - F(x) - 1/m` over a uniform sample grid.
 *
 * # Safety
 * `lift` must be a valid handle; out-pointers valid.
 */
enum EqdStatus eqd_lift_equivariance(const struct EqdLift *lift,
                                     uint32_t m,
                                     size_t n_samples,
                                     double tol,
                                     double *out_max_defect,
                                     int32_t *out_pass);

/**
 * Minimized displacement `|F^q(x) - x - p|` over the grid, `q <= q_max`.
 *
 * # Safety
 * `lift` must be a valid handle; `out_min` a valid pointer.
 */
enum EqdStatus eqd_lift_periodic_probe(const struct EqdLift *lift,
                                       size_t q_max,
                                       size_t grid_size,
                                       double *out_min);

/**
 * Gap table of a Denjoy lift as JSON; fails for lifts without one.
 *
 * # Safety
 * `lift` must be a valid handle; `out_json` a valid pointer.
 */
enum EqdStatus eqd_lift_gap_table_json(const struct EqdLift *lift, char **out_json);

/**
 * Suspend the lift into the plane with radial contraction `c`.
 *
 * # Safety
 * `lift` must be a valid handle; `out_map` a valid pointer.
 */
enum EqdStatus eqd_lift_suspend(const struct EqdLift *lift, double c, struct EqdMap **out_map);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* EQUIDYN_H */
