/* C interface to the currycomb transformation engine. */

#ifndef CURRYCOMB_H
#define CURRYCOMB_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Result of a C API call. Matches the process exit codes of the CLI.
typedef enum CurrycombStatus {
  // The call succeeded.
  CURRYCOMB_STATUS_OK = 0,
  // The input was missing, not valid UTF-8, not decodable, or violated
  // a program invariant.
  CURRYCOMB_STATUS_INVALID_INPUT = 1,
  // The pipeline named an unknown rule or the strategy name is unknown.
  CURRYCOMB_STATUS_UNKNOWN_NAME = 2,
  // The rewrite budget ran out before a normal form was reached.
  CURRYCOMB_STATUS_FUEL_EXHAUSTED = 3,
} CurrycombStatus;

// Opaque handle to a decoded, validated program.
typedef struct CurrycombProgram CurrycombProgram;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Detail text for the most recent failing call on this thread. The pointer
// stays valid until the next failing call on the same thread; never free it.
const char *currycomb_last_error_message(void);

// Decode and validate a program from its JSON text. On success `*out`
// receives a handle that must be released with [`currycomb_program_free`].
//
// # Safety
// `json` must be a valid NUL-terminated string and `out` a valid pointer.
enum CurrycombStatus currycomb_program_parse(const char *json, struct CurrycombProgram **out);

// Encode the program back to JSON. Returns null only if `program` is null.
// Release the returned string with [`currycomb_string_free`].
//
// # Safety
// `program` must be null or a handle from this library.
char *currycomb_program_to_json(const struct CurrycombProgram *program);

// Number of functions in the program, or 0 if `program` is null.
//
// # Safety
// `program` must be null or a handle from this library.
size_t currycomb_program_function_count(const struct CurrycombProgram *program);

// Apply a transformation pipeline to every function of the program.
//
// `pipeline` uses the CLI mini-syntax: stages separated by `;`, rules in a
// stage separated by `|`, e.g. `"orFloat; unDollar|caseCancel"` or `"anf"`.
// `strategy` is `"cs"`, `"ms"`, or `"ds"`. `fuel` caps the rewrites per
// function per stage. On success `*out` receives a new handle and, when
// `total_rewrites` is non-null, the rewrite count is stored there.
//
// # Safety
// All pointers must be null or valid; `out` must be a valid pointer.
enum CurrycombStatus currycomb_program_transform(const struct CurrycombProgram *program,
                                                 const char *pipeline,
                                                 const char *strategy,
                                                 size_t fuel,
                                                 struct CurrycombProgram **out,
                                                 size_t *total_rewrites);

// Store whether every function body is in A-normal form into `*result`.
//
// # Safety
// `program` must be null or a handle from this library; `result` must be
// a valid pointer.
enum CurrycombStatus currycomb_program_is_anf(const struct CurrycombProgram *program, bool *result);

// Release a program handle. Null is accepted and ignored.
//
// # Safety
// `program` must be null or an unreleased handle from this library.
void currycomb_program_free(struct CurrycombProgram *program);

// Release a string returned by this library. Null is accepted and ignored.
//
// # Safety
// `text` must be null or an unreleased string from this library.
void currycomb_string_free(char *text);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* CURRYCOMB_H */
