#ifndef TILESPHERE_H
#define TILESPHERE_H

/* Generated by cbindgen from tilesphere-ffi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Status codes for every FFI call.
 */
typedef enum {
  TS_OK = 0,
  /**
   * A required pointer argument was NULL.
   */
  TS_NULL_POINTER = 1,
  /**
   * An argument was outside its documented domain.
   */
  TS_INVALID_ARGUMENT = 2,
  /**
   * No catalog entry with the given id.
   */
  TS_UNKNOWN_ID = 3,
  /**
   * The search hit its node budget before exhausting the space.
   */
  TS_SEARCH_INCOMPLETE = 4,
  /**
   * The metric realization failed at the given angles.
   */
  TS_GEOMETRY_ERROR = 5,
  /**
   * An index was out of range.
   */
  TS_OUT_OF_RANGE = 6,
  /**
   * An internal invariant failed (a bug; never expected).
   */
  TS_INTERNAL_ERROR = 7,
} ts_status;

/**
 * Opaque classification result handle.
 */
typedef struct ts_classification ts_classification;

/**
 * Opaque tiling handle.
 */
typedef struct ts_tiling ts_tiling;

/**
 * Metric realization data returned by value.
 */
typedef struct {
  double alpha;
  double beta;
  double gamma;
  /**
   * Polygon edge length (radians).
   */
  double x;
  /**
   * Quadrilateral edge length (radians); 0 for flat quadrilaterals.
   */
  double y;
  double max_vertex_residual;
  double gauss_bonnet_residual;
  /**
   * 1 when |x − y| is below the degeneracy threshold.
   */
  int32_t degenerate_xy;
  /**
   * 1 when β + γ = π (zero-excess quadrilateral, y = 0).
   */
  int32_t flat_quad;
} ts_realization;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Human-readable message for a status code; static storage, never freed.
 */
const char *ts_status_message(ts_status status);

/**
 * Exhaustively classify the tilings for one m.  `single_chirality` ≠ 0
 * restricts the model to one quadrilateral chirality.
 */
ts_status ts_classify(uint32_t m, int32_t single_chirality, ts_classification **out);

/**
 * Number of tilings in a classification.
 */
ts_status ts_classification_count(const ts_classification *c, uintptr_t *out);

/**
 * Clone tiling `index` out of a classification into its own handle.
 */
ts_status ts_classification_tiling(const ts_classification *c, uintptr_t index, ts_tiling **out);

void ts_classification_free(ts_classification *c);

/**
 * Look up a catalog entry by id ("prism:<m>" or "S1"…"S5").
 */
ts_status ts_catalog_tiling(const char *id, ts_tiling **out);

ts_status ts_tiling_face_count(const ts_tiling *t, uint32_t *out);

ts_status ts_tiling_vertex_count(const ts_tiling *t, uint32_t *out);

/**
 * Canonical isomorphism code as a hex string.
 */
ts_status ts_tiling_canonical_code(const ts_tiling *t, char **out);

/**
 * Tiling structure as JSON.
 */
ts_status ts_tiling_json(const ts_tiling *t, char **out);

/**
 * Metrically realize a tiling at fixed angles (radians).
 */
ts_status ts_tiling_realize(const ts_tiling *t,
                            double alpha,
                            double beta,
                            double gamma,
                            ts_realization *out);

void ts_tiling_free(ts_tiling *t);

/**
 * Free a string returned by this library.
 */
void ts_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* TILESPHERE_H */
