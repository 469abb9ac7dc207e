#ifndef ZCAP_H
#define ZCAP_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Which array of a pair.
#define ZCAP_FIRST 0

#define ZCAP_SECOND 1

typedef enum ZcapStatus {
  ZCAP_STATUS_OK = 0,
  ZCAP_STATUS_INVALID_ARGUMENT = 1,
  ZCAP_STATUS_NULL_POINTER = 2,
  ZCAP_STATUS_VERIFICATION_FAILED = 3,
  ZCAP_STATUS_BUFFER_TOO_SMALL = 4,
  ZCAP_STATUS_PANIC = 5,
} ZcapStatus;

// Two arrays of equal shape over a common modulus. 1-D pairs are `1 × L`.
typedef struct ZcapPair ZcapPair;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Golay pair of length `2^m` as a `1 × 2^m` pair. An empty `perm` means the
// identity and empty `coeffs` means all zero; otherwise `coeffs` holds
// `v_0..v_m`.
//
// # Safety
// `perm` and `coeffs` must point to `perm_len` and `coeffs_len` readable
// items; `out` must be writable.
enum ZcapStatus zcap_pair_gdj(uint32_t q,
                              size_t m,
                              const size_t *perm,
                              size_t perm_len,
                              const int64_t *coeffs,
                              size_t coeffs_len,
                              struct ZcapPair **out);

// The binary `(14, 12)` base pair as a `1 × 14` pair.
//
// # Safety
// `out` must be writable.
enum ZcapStatus zcap_pair_lemma6(struct ZcapPair **out);

// `(14·2^n) × 2^(m-n)` array pair; see [`zcap_pair_gdj`] for `perm` and
// `coeffs`. With `verify` set, a failed self-check returns
// `VerificationFailed`.
//
// # Safety
// As for [`zcap_pair_gdj`].
enum ZcapStatus zcap_pair_theorem2(uint32_t q,
                                   size_t m,
                                   size_t n,
                                   const size_t *perm,
                                   size_t perm_len,
                                   const int64_t *coeffs,
                                   size_t coeffs_len,
                                   bool verify,
                                   struct ZcapPair **out);

// Wraps two row-major `rows × cols` exponent arrays over `modulus`.
//
// # Safety
// `first` and `second` must each point to `rows * cols` readable values.
enum ZcapStatus zcap_pair_from_exponents(uint32_t modulus,
                                         size_t rows,
                                         size_t cols,
                                         const uint32_t *first,
                                         const uint32_t *second,
                                         struct ZcapPair **out);

// # Safety
// `pair` must come from a constructor; the out pointers may be null.
enum ZcapStatus zcap_pair_dims(const struct ZcapPair *pair,
                               size_t *rows,
                               size_t *cols,
                               uint32_t *modulus);

// Copies the row-major exponents of [`ZCAP_FIRST`] or [`ZCAP_SECOND`].
//
// # Safety
// `buf` must have room for `len` values.
enum ZcapStatus zcap_pair_copy_exponents(const struct ZcapPair *pair,
                                         uint32_t which,
                                         uint32_t *buf,
                                         size_t len);

// Exact check of the zero-correlation rectangle `|u1| < z1`, `|u2| < z2`.
//
// # Safety
// `verified` must be writable.
enum ZcapStatus zcap_pair_check(const struct ZcapPair *pair, size_t z1, size_t z2, bool *verified);

// Writes the maximal rectangles as `(z1, z2)` pairs into `rects`
// (`2 * capacity` values) and their number into `count`. The count is
// written even when the buffer is too small.
//
// # Safety
// `rects` must have room for `2 * capacity` values; `count` must be writable.
enum ZcapStatus zcap_pair_max_rect(const struct ZcapPair *pair,
                                   size_t *rects,
                                   size_t capacity,
                                   size_t *count);

// Fills `buf` with the `(2·rows-1) × (2·cols-1)` grid of autocorrelation
// sum magnitudes, row `u1 + rows - 1`, column `u2 + cols - 1`.
//
// # Safety
// `buf` must have room for `len` values.
enum ZcapStatus zcap_pair_surface(const struct ZcapPair *pair, double *buf, size_t len);

// Releases a pair; null is ignored.
//
// # Safety
// `pair` must come from a constructor and not be used afterwards.
void zcap_pair_free(struct ZcapPair *pair);

// Message of the last failure on this thread, or null. Valid until the next
// failing call on the same thread.
const char *zcap_last_error_message(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ZCAP_H */
