/* C interface to the ordforge ordered-group toolkit. */

#ifndef ORDFORGE_H
#define ORDFORGE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status code of every fallible call.
typedef enum OfStatus {
  // The call succeeded.
  OfStatus_Ok = 0,
  // A required pointer was null.
  OfStatus_NullPointer = 1,
  // A string was not valid UTF-8.
  OfStatus_InvalidUtf8 = 2,
  // A word, descriptor, or order spec failed to parse.
  OfStatus_ParseError = 3,
  // The arguments do not fit together (wrong group kind, alphabet
  // mismatch, window exceeded, bad configuration).
  OfStatus_InvalidArgument = 4,
  // The operation is not defined for this group.
  OfStatus_Unsupported = 5,
  // An enumeration or rewriting budget ran out.
  OfStatus_BudgetExceeded = 6,
  // The computation failed internally.
  OfStatus_ComputationError = 7,
} OfStatus;

// Opaque group handle.
typedef struct OfGroup OfGroup;

// Opaque order handle, bound to the group it was created against.
typedef struct OfOrder OfOrder;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// The message of the most recent failure on this thread, or null if no
// call has failed yet. The pointer stays valid until the next failing call
// on the same thread; do not free it.
const char *of_last_error(void);

// Creates a group from a descriptor (`klein`, `eg`, `free:N`, `braid:N`,
// `eg:t=ACTION`, `gu`, `j`, `zx:BASE`). `window` bounds the indexed
// alphabet; pass 32 unless a wider range is needed.
enum OfStatus of_group_new(const char *descriptor, int64_t window, struct OfGroup **out);

// Releases a group handle. Null is ignored.
void of_group_free(struct OfGroup *group);

// Parses a JSON order spec against a group and returns an order handle
// bound to that group.
enum OfStatus of_order_new(const struct OfGroup *group,
                           const char *spec_json,
                           struct OfOrder **out);

// Releases an order handle. Null is ignored.
void of_order_free(struct OfOrder *order);

// Writes the normal form of `word` to `out` as a newly allocated string;
// release it with [`of_string_free`].
enum OfStatus of_normal_form(const struct OfGroup *group, const char *word, char **out);

// Writes 1 to `out` when the two words are the same group element, 0
// otherwise.
enum OfStatus of_equal(const struct OfGroup *group,
                       const char *left,
                       const char *right,
                       int32_t *out);

// Writes the sign of `word` under the order to `out`: -1 negative, 0 the
// identity, 1 positive.
enum OfStatus of_sign(const struct OfOrder *order, const char *word, int32_t *out);

// Writes the comparison of `left` and `right` under the order to `out`:
// -1 for less, 0 for equal, 1 for greater.
enum OfStatus of_compare(const struct OfOrder *order,
                         const char *left,
                         const char *right,
                         int32_t *out);

// Handle-reduces a braid word (the group must be `braid:N`) and writes the
// reduced word to `out`; release it with [`of_string_free`].
enum OfStatus of_braid_reduce(const struct OfGroup *group, const char *word, char **out);

// Finds the least positive element of the ball of `radius` over the
// comma-separated generator words, under the order. Writes the element to
// `out` as a newly allocated string, or null when the ball holds no
// positive element; release the string with [`of_string_free`]. `budget`
// caps how many products the enumeration examines, `seed` drives any pair
// sampling.
enum OfStatus of_min_positive(const struct OfOrder *order,
                              const char *gens_csv,
                              uint32_t radius,
                              size_t budget,
                              uint64_t seed,
                              char **out);

// Releases a string returned by this library. Null is ignored.
void of_string_free(char *s);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* ORDFORGE_H */
