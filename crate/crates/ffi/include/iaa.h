#ifndef IAA_H
#define IAA_H

/* Generated by cbindgen from crates/ffi. Do not edit by hand. */

#include <stddef.h>
#include <stdint.h>

/*
 Result code of every fallible call.
 */
typedef enum IaaStatus {
  IAA_STATUS_OK = 0,
  IAA_STATUS_NULL_POINTER = 1,
  IAA_STATUS_INVALID_ARGUMENT = 2,
  IAA_STATUS_NESTING_VIOLATION = 3,
  IAA_STATUS_EMPTY_SET = 4,
  IAA_STATUS_IO_ERROR = 5,
  IAA_STATUS_INVALID_DATA = 6,
  IAA_STATUS_PANIC = 7,
} IaaStatus;

/*
 Opaque type-1 fuzzy set.
 */
typedef struct IaaT1Set IaaT1Set;

/*
 Opaque zSlice general type-2 fuzzy set.
 */
typedef struct IaaZgt2Set IaaZgt2Set;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message of the last failed call on this thread, or NULL. The pointer stays
 valid until the next failing call on the same thread.
 */
const char *iaa_last_error_message(void);

/*
 Static description of a status code.
 */
const char *iaa_status_str(enum IaaStatus status);

/*
 Builds a type-1 set from `n` intervals `[lo[i], hi[i]]`.

 # Safety
 `lo` and `hi` must point to `n` readable doubles; `out` must be writable.
 */
enum IaaStatus iaa_t1_new(const double *lo, const double *hi, size_t n, struct IaaT1Set **out);

/*
 Releases a set from `iaa_t1_new` or `iaa_zgt2_zslice`. NULL is ignored.

 # Safety
 `set` must be NULL or a live handle not freed before.
 */
void iaa_t1_free(struct IaaT1Set *set);

/*
 Membership at `x`.

 # Safety
 `set` must be a live handle; `out` must be writable.
 */
enum IaaStatus iaa_t1_membership(const struct IaaT1Set *set, double x, double *out);

/*
 Total length of the cut `{x : mu(x) >= alpha}`, `alpha` in (0, 1].

 # Safety
 `set` must be a live handle; `out` must be writable.
 */
enum IaaStatus iaa_t1_alpha_cut_length(const struct IaaT1Set *set, double alpha, double *out);

/*
 Integral of the membership function.

 # Safety
 `set` must be a live handle; `out` must be writable.
 */
enum IaaStatus iaa_t1_integral(const struct IaaT1Set *set, double *out);

/*
 Intra-group agreement ratio (exact lengths).

 # Safety
 `set` must be a live handle; `out` must be writable.
 */
enum IaaStatus iaa_t1_gamma(const struct IaaT1Set *set, double *out);

/*
 Smallest closed interval containing all positive membership.

 # Safety
 `set` must be a live handle; `lo` and `hi` must be writable.
 */
enum IaaStatus iaa_t1_support(const struct IaaT1Set *set, double *lo, double *hi);

/*
 Membership-weighted mean abscissa.

 # Safety
 `set` must be a live handle; `out` must be writable.
 */
enum IaaStatus iaa_t1_centroid(const struct IaaT1Set *set, double *out);

/*
 Largest attained membership.

 # Safety
 `set` must be a live handle; `out` must be writable.
 */
enum IaaStatus iaa_t1_height(const struct IaaT1Set *set, double *out);

/*
 Jaccard similarity of nested sets `inner ⊆ outer`.

 # Safety
 Both handles must be live; `out` must be writable.
 */
enum IaaStatus iaa_jaccard_nested(const struct IaaT1Set *inner,
                                  const struct IaaT1Set *outer,
                                  double *out);

/*
 Builds a type-2 set from `n` group-level type-1 sets. The inputs are not
 consumed.

 # Safety
 `sets` must point to `n` live handles; `out` must be writable.
 */
enum IaaStatus iaa_zgt2_new(const struct IaaT1Set *const *sets, size_t n, struct IaaZgt2Set **out);

/*
 Releases a type-2 set. NULL is ignored.

 # Safety
 `set` must be NULL or a live handle not freed before.
 */
void iaa_zgt2_free(struct IaaZgt2Set *set);

/*
 Number of zSlices.

 # Safety
 `set` must be a live handle; `out` must be writable.
 */
enum IaaStatus iaa_zgt2_len(const struct IaaZgt2Set *set, size_t *out);

/*
 Copy of zSlice `j` (1-based) as a new type-1 handle.

 # Safety
 `set` must be a live handle; `out` must be writable.
 */
enum IaaStatus iaa_zgt2_zslice(const struct IaaZgt2Set *set, size_t j, struct IaaT1Set **out);

/*
 Inter-group agreement ratio (exact masses).

 # Safety
 `set` must be a live handle; `out` must be writable.
 */
enum IaaStatus iaa_zgt2_gamma(const struct IaaZgt2Set *set, double *out);

/*
 JSON report for a survey CSV file. `discretize_step <= 0` measures exactly.
 The returned string must be released with `iaa_string_free`.

 # Safety
 `csv_path` must be a NUL-terminated string; `out` must be writable.
 */
enum IaaStatus iaa_report_json(const char *csv_path,
                               double scale_lo,
                               double scale_hi,
                               double discretize_step,
                               char **out);

/*
 Releases a string returned by this library. NULL is ignored.

 # Safety
 `s` must be NULL or a string from this library not freed before.
 */
void iaa_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* IAA_H */
