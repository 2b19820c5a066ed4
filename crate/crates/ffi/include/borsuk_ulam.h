#ifndef BORSUK_ULAM_H
#define BORSUK_ULAM_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result codes. Zero is success.
typedef enum BuStatus {
  BU_STATUS_OK = 0,
  BU_STATUS_NULL_POINTER = 1,
  BU_STATUS_INVALID_UTF8 = 2,
  BU_STATUS_PARSE = 3,
  BU_STATUS_INVALID_INPUT = 4,
  BU_STATUS_CAP_EXCEEDED = 5,
  BU_STATUS_INVARIANT = 6,
  BU_STATUS_OUT_OF_RANGE = 7,
  BU_STATUS_PANIC = 8,
} BuStatus;

// Opaque classification of every cover class of a matrix.
typedef struct BuAnalysis BuAnalysis;

// Opaque symmetric linking matrix.
typedef struct BuMatrix BuMatrix;

// Verdict for one cover class.
typedef struct BuClassSummary {
  // Z/2-index: 1, 2 or 3.
  uint8_t index;
  // `XᵀBX / 2 mod 2`.
  uint8_t triple_cup;
  bool beta_vanishes;
  // 1 if the self-linking of the Bockstein class is 1/2, 0 if it is 0,
  // -1 if it was not computed.
  int8_t self_linking_half;
} BuClassSummary;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread.
const char *bu_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *bu_version(void);

// Builds a matrix from `rows * rows` row-major entries. The matrix must be
// symmetric.
//
// # Safety
// `entries` must point to `rows * rows` readable values (it may be NULL
// when `rows` is 0) and `out` must be writable.
enum BuStatus bu_matrix_new(size_t rows, const int64_t *entries, struct BuMatrix **out);

// Parses a JSON input document (`{"matrix": ...}` or `{"preset": ...}`).
//
// # Safety
// `json` must be a NUL-terminated string and `out` must be writable.
enum BuStatus bu_matrix_from_json(const char *json, struct BuMatrix **out);

// Chain presentation of the lens space L(p, q).
//
// # Safety
// `out` must be writable.
enum BuStatus bu_matrix_lens(int64_t p, int64_t q, struct BuMatrix **out);

// Number of rows (link components).
//
// # Safety
// `m` must be NULL or a live handle.
size_t bu_matrix_size(const struct BuMatrix *m);

// # Safety
// `m` must be NULL or a handle not yet freed.
void bu_matrix_free(struct BuMatrix *m);

// Classifies every cover class. With `allow_truncate` false, more than
// `cap` classes is an error; otherwise only a kernel basis is classified.
//
// # Safety
// `m` must be a live handle and `out` must be writable.
enum BuStatus bu_analysis_run(const struct BuMatrix *m,
                              size_t cap,
                              bool allow_truncate,
                              struct BuAnalysis **out);

// # Safety
// `a` must be NULL or a handle not yet freed.
void bu_analysis_free(struct BuAnalysis *a);

// Number of classified cover classes.
//
// # Safety
// `a` must be NULL or a live handle.
size_t bu_analysis_class_count(const struct BuAnalysis *a);

// Dimension of H¹(N; Z/2).
//
// # Safety
// `a` must be NULL or a live handle.
size_t bu_analysis_kernel_dim(const struct BuAnalysis *a);

// Whether only a kernel basis was classified.
//
// # Safety
// `a` must be NULL or a live handle.
bool bu_analysis_truncated(const struct BuAnalysis *a);

// Verdict for class `i`.
//
// # Safety
// `a` must be a live handle and `out` must be writable.
enum BuStatus bu_analysis_class(const struct BuAnalysis *a, size_t i, struct BuClassSummary *out);

// Copies the bits of class `i` into `bits`, which must have room for
// `bu_matrix_size` entries.
//
// # Safety
// `a` must be a live handle and `bits` must point to `len` writable bytes.
enum BuStatus bu_analysis_class_bits(const struct BuAnalysis *a,
                                     size_t i,
                                     uint8_t *bits,
                                     size_t len);

// JSON report for the analysis. Release with [`bu_string_free`]. Returns
// NULL if `a` is NULL.
//
// # Safety
// `a` must be NULL or a live handle.
char *bu_analysis_to_json(const struct BuAnalysis *a);

// Linking matrix of a handle as JSON, `[[a,b],[c,d]]`. Release with
// [`bu_string_free`].
//
// # Safety
// `m` must be NULL or a live handle.
char *bu_matrix_to_string(const struct BuMatrix *m);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void bu_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* BORSUK_ULAM_H */
