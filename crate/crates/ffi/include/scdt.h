#ifndef SCDT_H
#define SCDT_H

/* Generated by cbindgen from src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ScdtStatus {
  SCDT_STATUS_OK = 0,
  SCDT_STATUS_NULL_POINTER = 1,
  SCDT_STATUS_INVALID_UTF8 = 2,
  SCDT_STATUS_PARSE = 3,
  SCDT_STATUS_IO = 4,
  SCDT_STATUS_INVALID_CODE = 5,
  SCDT_STATUS_UNKNOWN_NAME = 6,
  /**
   * The analysis finished but an expectation failed; the report is still returned.
   */
  SCDT_STATUS_VIOLATION = 7,
  SCDT_STATUS_PANIC = 8,
} ScdtStatus;

/**
 * An exact spherical code.
 */
typedef struct ScdtCode ScdtCode;

typedef struct ScdtProfile {
  size_t dim;
  size_t size;
  /**
   * Number of distinct inner products.
   */
  size_t s;
  /**
   * Design strength.
   */
  size_t t;
  bool tight;
  bool delsarte;
  bool rational;
} ScdtProfile;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Parses a code from `scdt-code v1` text.
 *
 * # Safety
 * `text` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ScdtStatus scdt_code_from_text(const char *text, struct ScdtCode **out);

/**
 * Loads a code file.
 *
 * # Safety
 * `path` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ScdtStatus scdt_code_load(const char *path, struct ScdtCode **out);

/**
 * Builds a catalog code such as `icosahedron` or `simplex(5)`.
 *
 * # Safety
 * `name` must be a NUL-terminated string and `out` a valid pointer.
 */
enum ScdtStatus scdt_code_catalog(const char *name, struct ScdtCode **out);

/**
 * Releases a code. Null is ignored.
 *
 * # Safety
 * `code` must come from this library and not be used afterwards.
 */
void scdt_code_free(struct ScdtCode *code);

/**
 * Dimension, size, distance count, strength and flags.
 *
 * # Safety
 * `code` must be a live handle and `out` a valid pointer.
 */
enum ScdtStatus scdt_code_profile(const struct ScdtCode *code, struct ScdtProfile *out);

/**
 * The full text report. Returns `Violation` with the report set when an
 * expectation failed.
 *
 * # Safety
 * `code` must be a live handle and `out` a valid pointer.
 */
enum ScdtStatus scdt_code_analyze(const struct ScdtCode *code, bool deep, char **out);

/**
 * The LP certificate section.
 *
 * # Safety
 * `code` must be a live handle and `out` a valid pointer.
 */
enum ScdtStatus scdt_code_bound(const struct ScdtCode *code, char **out);

/**
 * The code in `scdt-code v1` text form.
 *
 * # Safety
 * `code` must be a live handle and `out` a valid pointer.
 */
enum ScdtStatus scdt_code_emit(const struct ScdtCode *code, char **out);

/**
 * Releases a string returned by this library. Null is ignored.
 *
 * # Safety
 * `s` must come from this library and not be used afterwards.
 */
void scdt_string_free(char *s);

/**
 * Message of the last failure on this thread, or null. Valid until the next
 * failing call on the same thread.
 */
const char *scdt_last_error(void);

/**
 * Library version as a static string.
 */
const char *scdt_version(void);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* SCDT_H */
