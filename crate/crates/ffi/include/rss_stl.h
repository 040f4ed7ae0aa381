#ifndef RSS_STL_H
#define RSS_STL_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum RssStlStatus {
  RSS_STL_STATUS_OK = 0,
  RSS_STL_STATUS_NULL_POINTER = 1,
  RSS_STL_STATUS_INVALID_UTF8 = 2,
  RSS_STL_STATUS_PARSE = 3,
  RSS_STL_STATUS_INVALID_ARGUMENT = 4,
  RSS_STL_STATUS_MISSING_CHANNEL = 5,
  RSS_STL_STATUS_INDEX_OUT_OF_RANGE = 6,
  RSS_STL_STATUS_BUFFER_TOO_SMALL = 7,
  RSS_STL_STATUS_PANIC = 99,
} RssStlStatus;

// Parsed STL formula.
typedef struct RssStlFormula RssStlFormula;

// Uniformly sampled multi-channel signal.
typedef struct RssStlTrace RssStlTrace;

// RSS response time, fluctuation margin, sampling period and acceleration
// bounds, in SI units.
typedef struct RssStlParams {
  double rho;
  double mu;
  double dt;
  double a_lon_min_br;
  double a_lon_max_acc;
  double a_lon_max_br;
  double a_lat_min_br;
  double a_lat_max_acc;
} RssStlParams;

// Result of [`rss_stl_blame`]. `sample` is -1 when no atom decided the
// value (for example a formula without atoms).
typedef struct RssStlBlame {
  double robustness;
  int64_t sample;
  double time;
} RssStlBlame;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failed call on this thread, or NULL after a
// successful one. The pointer stays valid until the next call.
const char *rss_stl_last_error(void);

// Parses `src` into a new formula handle.
//
// # Safety
// `src` must be a NUL-terminated string and `out` a valid pointer.
enum RssStlStatus rss_stl_formula_parse(const char *src, struct RssStlFormula **out);

// Builds the RSS rule formula for `params` (NULL for the defaults).
//
// # Safety
// `params` must be NULL or valid, `out` a valid pointer.
enum RssStlStatus rss_stl_formula_rss(const struct RssStlParams *params,
                                      struct RssStlFormula **out);

// # Safety
// `f` must be NULL or a handle from this library not yet freed.
void rss_stl_formula_free(struct RssStlFormula *f);

// Creates an empty trace with sampling period `dt`.
//
// # Safety
// `out` must be a valid pointer.
enum RssStlStatus rss_stl_trace_new(double dt, struct RssStlTrace **out);

// Copies `len` samples into a new channel. All channels must have the
// same length.
//
// # Safety
// `t` must be a live trace handle, `name` a NUL-terminated string and
// `data` point to `len` doubles.
enum RssStlStatus rss_stl_trace_push_channel(struct RssStlTrace *t,
                                             const char *name,
                                             const double *data,
                                             size_t len);

// Number of samples, 0 for a NULL handle.
//
// # Safety
// `t` must be NULL or a live trace handle.
size_t rss_stl_trace_len(const struct RssStlTrace *t);

// # Safety
// `t` must be NULL or a handle from this library not yet freed.
void rss_stl_trace_free(struct RssStlTrace *t);

// Robustness of `f` on `t` at sample `index`; may be ±infinity.
//
// # Safety
// Handles must be live and `out` valid.
enum RssStlStatus rss_stl_robustness(const struct RssStlFormula *f,
                                     const struct RssStlTrace *t,
                                     size_t index,
                                     double *out);

// Robustness at `index` with the deciding sample, and the deciding atom's
// name copied NUL-terminated into `atom` (`atom_cap` bytes; empty when no
// atom decided). With a too small buffer `out` is still filled and
// `BufferTooSmall` is returned; `atom` may be NULL when `atom_cap` is 0.
//
// # Safety
// Handles must be live, `out` valid and `atom` writable for `atom_cap`
// bytes.
enum RssStlStatus rss_stl_blame(const struct RssStlFormula *f,
                                const struct RssStlTrace *t,
                                size_t index,
                                struct RssStlBlame *out,
                                char *atom,
                                size_t atom_cap);

// Writes the default RSS parameters to `out`.
//
// # Safety
// `out` must be a valid pointer.
enum RssStlStatus rss_stl_params_default(struct RssStlParams *out);

// Minimal longitudinal gap behind a car at `v_front` for a follower at
// `v_rear` (NULL `params` for the defaults).
//
// # Safety
// `params` must be NULL or valid, `out` a valid pointer.
enum RssStlStatus rss_stl_lon_safe_distance(double v_rear,
                                            double v_front,
                                            const struct RssStlParams *params,
                                            double *out);

// Minimal lateral gap between a car on the left moving at `v_left` and one
// on the right at `v_right`, velocities signed toward the right.
//
// # Safety
// `params` must be NULL or valid, `out` a valid pointer.
enum RssStlStatus rss_stl_lat_safe_distance(double v_left,
                                            double v_right,
                                            const struct RssStlParams *params,
                                            double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* RSS_STL_H */
