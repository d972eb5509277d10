#ifndef PHAM_BRIESKORN_H
#define PHAM_BRIESKORN_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

// Result code of every fallible call.
typedef enum pb_error {
  PB_ERROR_OK = 0,
  PB_ERROR_NULL_POINTER = 1,
  PB_ERROR_INVALID_UTF8 = 2,
  PB_ERROR_INVALID_INPUT = 3,
  PB_ERROR_DOMAIN = 4,
  PB_ERROR_NO_WITNESS = 5,
  PB_ERROR_INTERNAL = 6,
} pb_error;

// Membership of a tuple in the Γ family.
typedef enum pb_gamma_class {
  PB_GAMMA_CLASS_NOT_IN_GAMMA = 0,
  PB_GAMMA_CLASS_GAMMA = 1,
  PB_GAMMA_CLASS_GAMMA_PLUS = 2,
  PB_GAMMA_CLASS_GAMMA_MINUS = 3,
} pb_gamma_class;

// Rigidity verdict.
typedef enum pb_status {
  PB_STATUS_RIGID = 0,
  PB_STATUS_NOT_RIGID = 1,
  PB_STATUS_CONJECTURALLY_RIGID = 2,
} pb_status;

// Opaque exponent tuple.
typedef struct pb_tuple pb_tuple;

// Opaque classification result.
typedef struct pb_verdict pb_verdict;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message of the last failing call on this thread, or NULL if none.
// The pointer stays valid until the next failing call on this thread.
const char *pb_last_error_message(void);

// Library version as a static string.
const char *pb_version(void);

// Releases a string returned by this library. NULL is ignored.
//
// # Safety
// `s` must come from this library and not have been freed.
void pb_string_free(char *s);

// Builds a tuple from `len` positive entries.
//
// # Safety
// `entries` must point to `len` readable integers; `out` must be writable.
enum pb_error pb_tuple_new(const uint64_t *entries, uintptr_t len, struct pb_tuple **out);

// Parses a tuple such as `"2,3,5,30"` or `"(2 3 5 30)"`. Entries may
// exceed 64 bits.
//
// # Safety
// `text` must be a NUL-terminated string; `out` must be writable.
enum pb_error pb_tuple_parse(const char *text, struct pb_tuple **out);

// Releases a tuple. NULL is ignored.
//
// # Safety
// `t` must come from `pb_tuple_new` or `pb_tuple_parse` and not have been freed.
void pb_tuple_free(struct pb_tuple *t);

// Number of entries, or 0 for NULL.
//
// # Safety
// `t` must be NULL or a live tuple.
uintptr_t pb_tuple_len(const struct pb_tuple *t);

// Cotype of the tuple.
//
// # Safety
// `t` must be a live tuple; `out` must be writable.
enum pb_error pb_tuple_cotype(const struct pb_tuple *t, uintptr_t *out);

// Γ class of the tuple.
//
// # Safety
// `t` must be a live tuple; `out` must be writable.
enum pb_error pb_tuple_gamma_class(const struct pb_tuple *t, enum pb_gamma_class *out);

// Classifies the tuple.
//
// # Safety
// `t` must be a live tuple; `out` must be writable.
enum pb_error pb_classify(const struct pb_tuple *t, struct pb_verdict **out);

// Releases a verdict. NULL is ignored.
//
// # Safety
// `v` must come from `pb_classify` and not have been freed.
void pb_verdict_free(struct pb_verdict *v);

// Status of a verdict.
//
// # Safety
// `v` must be a live verdict; `out` must be writable.
enum pb_error pb_verdict_status(const struct pb_verdict *v, enum pb_status *out);

// Human-readable proof trace, one step per line.
//
// # Safety
// `v` must be a live verdict; `out` must be writable.
enum pb_error pb_verdict_trace(const struct pb_verdict *v, char **out);

// Verdict as JSON: tuple, status, trace and witness id.
//
// # Safety
// `v` must be a live verdict; `out` must be writable.
enum pb_error pb_verdict_json(const struct pb_verdict *v, char **out);

// Non-rigidity witness of a verdict as JSON. Fails with
// [`PbError::NoWitness`] unless the status is not-rigid.
//
// # Safety
// `v` must be a live verdict; `out` must be writable.
enum pb_error pb_verdict_witness_json(const struct pb_verdict *v, char **out);

// Surface data of a tuple in Γ⁻ with four entries, as JSON.
//
// # Safety
// `t` must be a live tuple; `out` must be writable.
enum pb_error pb_geometry_json(const struct pb_tuple *t, char **out);

// Minimal resolution graph of a tuple as JSON, in the format accepted by
// [`pb_contract_json`].
//
// # Safety
// `t` must be a live tuple; `out` must be writable.
enum pb_error pb_resolution_graph_json(const struct pb_tuple *t, char **out);

// Blows down every isolated contractible curve of a graph given as JSON
// and returns the final graph as JSON.
//
// # Safety
// `graph` must be a NUL-terminated string; `out` must be writable.
enum pb_error pb_contract_json(const char *graph, char **out);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* PHAM_BRIESKORN_H */
