#ifndef COXALT_H
#define COXALT_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum CoxaltStatus {
  COXALT_STATUS_OK = 0,
  COXALT_STATUS_NULL_ARGUMENT = 1,
  COXALT_STATUS_INVALID_UTF8 = 2,
  COXALT_STATUS_PARSE = 3,
  COXALT_STATUS_CAP_EXCEEDED = 4,
  COXALT_STATUS_INFINITE_BOND = 5,
  COXALT_STATUS_EVENLY_LACED_REQUIRED = 6,
  COXALT_STATUS_EVEN_LEAF_REQUIRED = 7,
  COXALT_STATUS_INVALID_ARGUMENT = 8,
  COXALT_STATUS_OVERFLOW = 9,
  COXALT_STATUS_INTERNAL = 10,
} CoxaltStatus;

// Opaque alternating subgroup of a finite Coxeter group.
typedef struct CoxaltGroup CoxaltGroup;

// Opaque Coxeter system.
typedef struct CoxaltSystem CoxaltSystem;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failing call on this thread, or null. Owned by the
// library; valid until the next failing call on the same thread.
const char *coxalt_last_error(void);

// Parses a system in the text format (`n=<rank>` then `m i j <order>` lines).
//
// # Safety
// `text` must be a NUL-terminated string and `out` a valid pointer.
enum CoxaltStatus coxalt_system_parse(const char *text, struct CoxaltSystem **out);

// Number of generators including `s0`; 0 for null.
//
// # Safety
// `sys` must be null or a live handle.
uintptr_t coxalt_system_rank(const struct CoxaltSystem *sys);

// # Safety
// `sys` must be null or a handle not yet freed.
void coxalt_system_free(struct CoxaltSystem *sys);

// Enumerates `W+`. Honors `COXALT_CAP`.
//
// # Safety
// `sys` must be a live handle and `out` a valid pointer.
enum CoxaltStatus coxalt_group_new(const struct CoxaltSystem *sys, struct CoxaltGroup **out);

// # Safety
// `g` must be null or a handle not yet freed.
void coxalt_group_free(struct CoxaltGroup *g);

// `|W+|`; 0 for null.
//
// # Safety
// `g` must be null or a live handle.
uintptr_t coxalt_group_order(const struct CoxaltGroup *g);

// Number of generators `r_1..r_n`; 0 for null.
//
// # Safety
// `g` must be null or a live handle.
uintptr_t coxalt_group_rank(const struct CoxaltGroup *g);

// Length over `R ∪ R^-1` of the element spelled by `word` (`1-21`, `e`, ...).
//
// # Safety
// `g` must be a live handle, `word` NUL-terminated and `out` valid.
enum CoxaltStatus coxalt_group_word_length(const struct CoxaltGroup *g,
                                           const char *word,
                                           uintptr_t *out);

// Shortest lex-smallest word for the element spelled by `word`.
//
// # Safety
// As [`coxalt_group_word_length`]; the result must be released with
// [`coxalt_string_free`].
enum CoxaltStatus coxalt_group_reduce(const struct CoxaltGroup *g, const char *word, char **out);

// Generating function of a statistic (`ellR`, `ell0-nu`, ...) as text.
//
// # Safety
// `g` must be a live handle, `stat` NUL-terminated and `out` valid. The
// result must be released with [`coxalt_string_free`].
enum CoxaltStatus coxalt_group_series(const struct CoxaltGroup *g, const char *stat, char **out);

// # Safety
// `s` must be null or a string returned by this library and not yet freed.
void coxalt_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* COXALT_H */
