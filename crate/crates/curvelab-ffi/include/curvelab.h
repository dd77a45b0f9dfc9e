#ifndef CURVELAB_H
#define CURVELAB_H

#pragma once

/* Generated by cbindgen from the curvelab-ffi sources; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Complex kinds accepted by [`curvelab_snapshot_build`].
 */
enum CurvelabKind
#ifdef __cplusplus
  : uint32_t
#endif // __cplusplus
 {
  CURVELAB_KIND_CURVE = 0,
  CURVELAB_KIND_PANTS = 1,
  CURVELAB_KIND_SEP = 2,
  CURVELAB_KIND_SEP_PRIME = 3,
};
#ifndef __cplusplus
typedef uint32_t CurvelabKind;
#endif // __cplusplus

/**
 * Result codes of every fallible call.
 */
typedef enum CurvelabStatus {
  CURVELAB_STATUS_OK = 0,
  CURVELAB_STATUS_NULL_ARGUMENT = 1,
  CURVELAB_STATUS_INVALID_UTF8 = 2,
  CURVELAB_STATUS_PARSE = 3,
  CURVELAB_STATUS_UNSUPPORTED_SURFACE = 4,
  CURVELAB_STATUS_SURFACE_MISMATCH = 5,
  CURVELAB_STATUS_INVALID_INPUT = 6,
  CURVELAB_STATUS_UNREACHABLE = 7,
  CURVELAB_STATUS_BUDGET_EXCEEDED = 8,
  CURVELAB_STATUS_DATA = 9,
  CURVELAB_STATUS_IO = 10,
  CURVELAB_STATUS_PANIC = 11,
} CurvelabStatus;

/**
 * Opaque simple closed curve.
 */
typedef struct CurvelabCurve CurvelabCurve;

/**
 * Opaque multicurve.
 */
typedef struct CurvelabMulticurve CurvelabMulticurve;

/**
 * Opaque ball in a complex.
 */
typedef struct CurvelabSnapshot CurvelabSnapshot;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message of the last failure on this thread, or null. The pointer stays
 * valid until the next call on the same thread; do not free it.
 */
const char *curvelab_last_error(void);

/**
 * Library version as a static string.
 */
const char *curvelab_version(void);

/**
 * Releases a string returned by this library.
 *
 * # Safety
 * `s` must be null or a string returned by this library and not yet freed.
 */
void curvelab_string_free(char *s);

/**
 * Parses a curve given as a fat-graph word on the surface of genus
 * `genus` with `punctures` punctures.
 *
 * # Safety
 * `word` must be a nul-terminated string and `out` writable.
 */
enum CurvelabStatus curvelab_curve_parse(uint32_t genus,
                                         uint32_t punctures,
                                         const char *word,
                                         struct CurvelabCurve **out);

/**
 * # Safety
 * `c` must be null or a curve handle not yet freed.
 */
void curvelab_curve_free(struct CurvelabCurve *c);

/**
 * Canonical word of a curve; free with [`curvelab_string_free`].
 *
 * # Safety
 * `c` must be null or a live curve handle.
 */
char *curvelab_curve_name(const struct CurvelabCurve *c);

/**
 * Geometric intersection number.
 *
 * # Safety
 * `a`, `b` must be live curve handles and `out` writable.
 */
enum CurvelabStatus curvelab_curve_intersection(const struct CurvelabCurve *a,
                                                const struct CurvelabCurve *b,
                                                uint64_t *out);

/**
 * Whether both complementary pieces of the curve are essential.
 *
 * # Safety
 * `c` must be a live curve handle and `out` writable.
 */
enum CurvelabStatus curvelab_curve_is_separating(const struct CurvelabCurve *c, bool *out);

/**
 * Image of `c` under the `n`-th power of the Dehn twist about `about`.
 *
 * # Safety
 * `c`, `about` must be live curve handles and `out` writable.
 */
enum CurvelabStatus curvelab_curve_twist(const struct CurvelabCurve *c,
                                         const struct CurvelabCurve *about,
                                         int32_t n,
                                         struct CurvelabCurve **out);

/**
 * Parses a multicurve given as comma-separated words.
 *
 * # Safety
 * `words` must be a nul-terminated string and `out` writable.
 */
enum CurvelabStatus curvelab_multicurve_parse(uint32_t genus,
                                              uint32_t punctures,
                                              const char *words,
                                              struct CurvelabMulticurve **out);

/**
 * # Safety
 * `m` must be null or a multicurve handle not yet freed.
 */
void curvelab_multicurve_free(struct CurvelabMulticurve *m);

/**
 * Number of components.
 *
 * # Safety
 * `m` must be null or a live multicurve handle.
 */
uintptr_t curvelab_multicurve_len(const struct CurvelabMulticurve *m);

/**
 * Whether the multicurve is a pants decomposition.
 *
 * # Safety
 * `m` must be a live multicurve handle and `out` writable.
 */
enum CurvelabStatus curvelab_multicurve_is_pants(const struct CurvelabMulticurve *m, bool *out);

/**
 * Ball of the given radius in a complex (a [`CurvelabKind`] value) over
 * curves of weight at most `bound`. A null `base` picks a default
 * basepoint; otherwise `base` must be a vertex of the complex.
 *
 * # Safety
 * `base` must be null or a live multicurve handle and `out` writable.
 */
enum CurvelabStatus curvelab_snapshot_build(uint32_t kind,
                                            uint32_t genus,
                                            uint32_t punctures,
                                            uint32_t bound,
                                            uintptr_t radius,
                                            const struct CurvelabMulticurve *base,
                                            struct CurvelabSnapshot **out);

/**
 * Loads `<dir>/<digest>.json`, verifying its contents against the digest.
 *
 * # Safety
 * `dir`, `digest` must be nul-terminated strings and `out` writable.
 */
enum CurvelabStatus curvelab_snapshot_load(const char *dir,
                                           const char *digest,
                                           struct CurvelabSnapshot **out);

/**
 * Writes the snapshot into `dir` under its digest.
 *
 * # Safety
 * `snap` must be a live snapshot handle and `dir` a nul-terminated string.
 */
enum CurvelabStatus curvelab_snapshot_store(const struct CurvelabSnapshot *snap, const char *dir);

/**
 * # Safety
 * `snap` must be null or a snapshot handle not yet freed.
 */
void curvelab_snapshot_free(struct CurvelabSnapshot *snap);

/**
 * Number of vertices.
 *
 * # Safety
 * `snap` must be null or a live snapshot handle.
 */
uintptr_t curvelab_snapshot_len(const struct CurvelabSnapshot *snap);

/**
 * Number of edges.
 *
 * # Safety
 * `snap` must be null or a live snapshot handle.
 */
uintptr_t curvelab_snapshot_edge_count(const struct CurvelabSnapshot *snap);

/**
 * Hex digest of the snapshot contents; free with [`curvelab_string_free`].
 *
 * # Safety
 * `snap` must be null or a live snapshot handle.
 */
char *curvelab_snapshot_digest(const struct CurvelabSnapshot *snap);

/**
 * Graph distance between two vertices of the snapshot.
 *
 * # Safety
 * All handles must be live and `out` writable.
 */
enum CurvelabStatus curvelab_snapshot_distance(const struct CurvelabSnapshot *snap,
                                               const struct CurvelabMulticurve *a,
                                               const struct CurvelabMulticurve *b,
                                               uint64_t *out);

/**
 * Copy of vertex `index`; free with [`curvelab_multicurve_free`].
 *
 * # Safety
 * `snap` must be a live snapshot handle and `out` writable.
 */
enum CurvelabStatus curvelab_snapshot_vertex(const struct CurvelabSnapshot *snap,
                                             uintptr_t index,
                                             struct CurvelabMulticurve **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CURVELAB_H */
