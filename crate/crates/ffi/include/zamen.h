#ifndef ZAMEN_H
#define ZAMEN_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum ZamenStatus {
  ZAMEN_STATUS_OK = 0,
  // A required pointer argument was null.
  ZAMEN_STATUS_NULL_ARGUMENT = 1,
  // A string argument was not valid UTF-8.
  ZAMEN_STATUS_INVALID_UTF8 = 2,
  // Malformed or invalid input: parse, validation or size-limit errors.
  ZAMEN_STATUS_INVALID_INPUT = 3,
  // Objects from different groups were combined.
  ZAMEN_STATUS_MISMATCH = 4,
  // The character table could not be separated numerically.
  ZAMEN_STATUS_NUMERIC_DEGENERACY = 5,
  // An index was out of range.
  ZAMEN_STATUS_OUT_OF_RANGE = 6,
  // Panic or I/O failure inside the library.
  ZAMEN_STATUS_INTERNAL = 7,
} ZamenStatus;

// A finite group together with its conjugacy classes.
typedef struct ZamenGroup ZamenGroup;

typedef struct ZamenTable ZamenTable;

typedef struct ZamenAm {
  double value;
  // True when `value` was snapped to `numer / denom`; both are 0 otherwise.
  bool snapped;
  int64_t numer;
  int64_t denom;
} ZamenAm;

typedef struct ZamenDiagonalReport {
  double module_residual;
  double multiplication_residual;
  bool passed;
} ZamenDiagonalReport;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null. Valid until
// the next zamen call on the same thread.
const char *zamen_last_error(void);

// Library version as a static string.
const char *zamen_version(void);

// # Safety
// `s` must be null or a string returned by this library, not yet freed.
void zamen_string_free(char *s);

// Builds a group from a JSON group document.
//
// # Safety
// `json` must be a NUL-terminated string; `out` must be writable.
enum ZamenStatus zamen_group_from_json(const char *json, struct ZamenGroup **out);

// Builds one of the shipped fixture groups by file stem, e.g. `"s3"`.
//
// # Safety
// `name` must be a NUL-terminated string; `out` must be writable.
enum ZamenStatus zamen_group_from_fixture(const char *name, struct ZamenGroup **out);

// # Safety
// `g` must be null or a handle from this library, not yet freed.
void zamen_group_free(struct ZamenGroup *g);

// # Safety
// `g` must be a live group handle; the out-pointers must be writable.
enum ZamenStatus zamen_group_info(const struct ZamenGroup *g,
                                  size_t *order,
                                  size_t *classes,
                                  bool *abelian);

// Computes and certifies the character table.
//
// # Safety
// `g` must be a live group handle; `out` must be writable.
enum ZamenStatus zamen_table_new(const struct ZamenGroup *g, struct ZamenTable **out);

// # Safety
// `t` must be null or a handle from this library, not yet freed.
void zamen_table_free(struct ZamenTable *t);

// Value `χ_irrep(class)`; rows and columns follow the table JSON.
//
// # Safety
// `t` must be a live table handle; `re` and `im` must be writable.
enum ZamenStatus zamen_table_value(const struct ZamenTable *t,
                                   size_t irrep,
                                   size_t class_,
                                   double *re,
                                   double *im);

// Largest certification residual of the table.
//
// # Safety
// `t` must be a live table handle; `out` must be writable.
enum ZamenStatus zamen_table_residual(const struct ZamenTable *t, double *out);

// The table as JSON; free with [`zamen_string_free`].
//
// # Safety
// `t` must be a live table handle; `out` must be writable.
enum ZamenStatus zamen_table_to_json(const struct ZamenTable *t, char **out);

// Amenability constant of the centre of the group algebra.
//
// # Safety
// `t` must be a live table handle; `out` must be writable.
enum ZamenStatus zamen_am_constant(const struct ZamenTable *t, struct ZamenAm *out);

// Hilbert-Schmidt lower bound for the amenability constant.
//
// # Safety
// `t` must be a live table handle; `out` must be writable.
enum ZamenStatus zamen_hs_lower_bound(const struct ZamenTable *t, double *out);

// Checks the table-derived diagonal against exact class-sum arithmetic.
// `t` must have been computed from `g`.
//
// # Safety
// `g` and `t` must be live handles; `out` must be writable.
enum ZamenStatus zamen_verify_diagonal(const struct ZamenGroup *g,
                                       const struct ZamenTable *t,
                                       struct ZamenDiagonalReport *out);

// Exact check of the `T ⋊ Z₂` central measure on all pairs from
// `{1, σ, π_1..π_n}`; writes the number of failing pairs.
//
// # Safety
// `failures` must be writable.
enum ZamenStatus zamen_verify_tz2(uint32_t n, size_t *failures);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ZAMEN_H */
