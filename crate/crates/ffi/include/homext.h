#ifndef HOMEXT_H
#define HOMEXT_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum HomextStatus {
  HOMEXT_STATUS_OK = 0,
  HOMEXT_STATUS_NULL_POINTER = 1,
  HOMEXT_STATUS_INVALID_UTF8 = 2,
  HOMEXT_STATUS_PARSE = 3,
  /**
   * The command line was rejected or named missing definitions.
   */
  HOMEXT_STATUS_USAGE = 4,
  /**
   * The command ran and some check failed.
   */
  HOMEXT_STATUS_CHECK_FAILED = 5,
  HOMEXT_STATUS_INTERNAL = 6,
} HomextStatus;

/**
 * A parsed document.
 */
typedef struct HomextDocument HomextDocument;

/**
 * The last error message on this thread, or null. Owned by the library.
 */
const char *homext_last_error(void);

/**
 * Parses `text` into a new document stored in `*out`.
 *
 * # Safety
 * `text` must be a nul-terminated string and `out` a valid pointer.
 */
enum HomextStatus homext_document_parse(const char *text, struct HomextDocument **out);

/**
 * Canonical text of `doc`, stored in `*out`.
 *
 * # Safety
 * `doc` must come from [`homext_document_parse`]; `out` must be valid.
 */
enum HomextStatus homext_document_serialize(const struct HomextDocument *doc, char **out);

/**
 * Number of definitions in `doc`, or -1 for a null handle.
 *
 * # Safety
 * `doc` must be null or come from [`homext_document_parse`].
 */
int64_t homext_document_len(const struct HomextDocument *doc);

/**
 * # Safety
 * `doc` must be null or come from [`homext_document_parse`], and must not
 * be used afterwards.
 */
void homext_document_free(struct HomextDocument *doc);

/**
 * Runs a whitespace-separated command line such as
 * `"check datum --datum D"`. With a non-null `doc` the document file
 * argument may be omitted. The report (or error text) goes to `*out` and
 * the CLI exit code to `*exit_code`.
 *
 * # Safety
 * `doc` must be null or a live handle; `command` a nul-terminated string;
 * `out` and `exit_code` valid pointers.
 */
enum HomextStatus homext_run(const struct HomextDocument *doc,
                             const char *command,
                             char **out,
                             int32_t *exit_code);

/**
 * # Safety
 * `s` must be null or a string returned by this library.
 */
void homext_string_free(char *s);

/**
 * Library version, owned by the library.
 */
const char *homext_version(void);

#endif  /* HOMEXT_H */
