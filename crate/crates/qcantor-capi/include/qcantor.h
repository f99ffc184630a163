#ifndef QCANTOR_H
#define QCANTOR_H

/* Generated by cbindgen from qcantor-capi; do not edit by hand. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/*
 Result code of every C API call.
 */
typedef enum QcsStatus {
  /*
   The call succeeded.
   */
  QCS_STATUS_OK = 0,
  /*
   A required pointer argument was NULL.
   */
  QCS_STATUS_NULL_POINTER = 1,
  /*
   A string argument was not valid UTF-8.
   */
  QCS_STATUS_INVALID_UTF8 = 2,
  /*
   Text input (sequence encoding, rational, block) failed to parse.
   */
  QCS_STATUS_PARSE_ERROR = 3,
  /*
   Arguments were outside the mathematical domain of the operation.
   */
  QCS_STATUS_DOMAIN_ERROR = 4,
  /*
   An index, digit budget, or buffer length was out of range.
   */
  QCS_STATUS_RANGE_ERROR = 5,
  /*
   A stream-backed point could not be separated from an interval
   endpoint within the lookahead budget.
   */
  QCS_STATUS_UNRESOLVED = 6,
  /*
   File input or output failed.
   */
  QCS_STATUS_IO_ERROR = 7,
  /*
   The library panicked; the handle state is still valid but the call
   produced nothing.
   */
  QCS_STATUS_INTERNAL_PANIC = 8,
} QcsStatus;

/*
 Opaque handle to a marker-splitting construction result.
 */
typedef struct QcsAdversarial QcsAdversarial;

/*
 Opaque handle to a base sequence.
 */
typedef struct QcsSequence QcsSequence;

/*
 Opaque handle to a digit stream.
 */
typedef struct QcsStream QcsStream;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/*
 Message for the most recent failure on this thread, or NULL if no call
 has failed yet. The pointer stays valid until the next failing call on
 the same thread; do not free it.
 */
const char *qcs_last_error_message(void);

/*
 Static, never-freed name of a status code (e.g. "parse error").
 */
const char *qcs_status_name(enum QcsStatus status);

/*
 Releases a string allocated by this library. NULL is ignored.
 */
void qcs_string_free(char *s);

/*
 Parses a base-sequence encoding such as "period=2,3",
 "prefix=5;period=2,3", or "prefix=2,2,2" into a new handle.
 */
enum QcsStatus qcs_sequence_parse(const char *text, struct QcsSequence **out);

/*
 Writes the canonical encoding of a sequence.
 */
enum QcsStatus qcs_sequence_format(const struct QcsSequence *seq, char **out);

/*
 Releases a sequence handle. NULL is ignored.
 */
void qcs_sequence_free(struct QcsSequence *seq);

/*
 Writes the base at 1-indexed `position`.
 */
enum QcsStatus qcs_sequence_base_at(const struct QcsSequence *seq, size_t position, uint64_t *out);

/*
 Writes the product of one period of an eventually periodic sequence.
 */
enum QcsStatus qcs_sequence_period_product(const struct QcsSequence *seq, uint64_t *out);

/*
 Writes whether constant bases r and s admit digit-wise conversion, i.e.
 whether both are integer powers of a common integer.
 */
enum QcsStatus qcs_bases_equivalent(uint64_t r, uint64_t s, bool *out);

/*
 Creates the digit stream of rational `value` (a "p/q" or decimal string
 in [0, 1)) over the given sequence.
 */
enum QcsStatus qcs_stream_from_rational(const char *value,
                                        const struct QcsSequence *seq,
                                        struct QcsStream **out);

/*
 Creates a stream from explicit digits over the given sequence; the digits
 are validated against the bases position by position.
 */
enum QcsStatus qcs_stream_from_digits(const struct QcsSequence *seq,
                                      const uint64_t *digits,
                                      size_t digits_len,
                                      struct QcsStream **out);

/*
 Creates the base-b Champernowne stream (all positive integers written in
 base b and concatenated) over the constant sequence (b, b, b, ...).
 */
enum QcsStatus qcs_stream_champernowne(uint64_t base, struct QcsStream **out);

/*
 Releases a stream handle. NULL is ignored.
 */
void qcs_stream_free(struct QcsStream *stream);

/*
 Copies the first n digits of the stream into `out` (capacity `out_len`).
 */
enum QcsStatus qcs_stream_prefix(const struct QcsStream *stream,
                                 size_t n,
                                 uint64_t *out,
                                 size_t out_len);

/*
 Writes the exact value (as a "p/q" string) represented by the given
 digits over the sequence.
 */
enum QcsStatus qcs_reconstruct(const struct QcsSequence *seq,
                               const uint64_t *digits,
                               size_t digits_len,
                               char **out);

/*
 Writes the number of occurrences of the block fully inside the first n
 digits of the stream.
 */
enum QcsStatus qcs_count_block(const struct QcsStream *stream,
                               const uint64_t *block,
                               size_t block_len,
                               size_t n,
                               size_t *out);

/*
 Writes the expected occurrence weight of the block over the first n
 positions (the normalizer of the occurrence ratio) as a "p/q" string.
 */
enum QcsStatus qcs_block_weight(const struct QcsSequence *seq,
                                const uint64_t *block,
                                size_t block_len,
                                size_t n,
                                char **out);

/*
 Writes the n-th orbit point (q_n ... q_1 x mod 1) of a rational value as
 a "p/q" string; n = 0 returns the value itself.
 */
enum QcsStatus qcs_orbit_point(const char *value,
                               const struct QcsSequence *seq,
                               size_t n,
                               char **out);

/*
 Writes the exact star discrepancy of `count` rational points in [0, 1)
 (each a "p/q" or decimal string) as a "p/q" string.
 */
enum QcsStatus qcs_star_discrepancy(const char *const *values, size_t count, char **out);

/*
 Runs the marker-splitting construction on the first n digits of a stream
 over the constant base g^2. Digits equal to g^2 - 1 are split into a pair
 of base-g digits (g-1, g-1); every other digit passes through over base
 g^2. The output never contains the digit g^2 - 1.
 */
enum QcsStatus qcs_adversarial_build(uint64_t g,
                                     const struct QcsStream *stream,
                                     size_t n,
                                     struct QcsAdversarial **out);

/*
 Releases a construction handle. NULL is ignored.
 */
void qcs_adversarial_free(struct QcsAdversarial *handle);

/*
 Writes the number of output digits (input length plus one per split
 marker).
 */
enum QcsStatus qcs_adversarial_len(const struct QcsAdversarial *handle, size_t *out);

/*
 Writes the number of input digits that were split into marker pairs.
 */
enum QcsStatus qcs_adversarial_marker_count(const struct QcsAdversarial *handle, size_t *out);

/*
 Copies the output base sequence (mixing g^2 and g entries) into `out`.
 The required capacity is the value written by `qcs_adversarial_len`.
 */
enum QcsStatus qcs_adversarial_bases(const struct QcsAdversarial *handle,
                                     uint64_t *out,
                                     size_t out_len);

/*
 Copies the output digits into `out`. The required capacity is the value
 written by `qcs_adversarial_len`.
 */
enum QcsStatus qcs_adversarial_digits(const struct QcsAdversarial *handle,
                                      uint64_t *out,
                                      size_t out_len);

/*
 Writes the fraction (as a "p/q" string) of the first m output orbit
 points that land in [lo, hi), where lo and hi are rational strings.
 */
enum QcsStatus qcs_adversarial_frequency(const struct QcsAdversarial *handle,
                                         const char *lo,
                                         const char *hi,
                                         size_t m,
                                         char **out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* QCANTOR_H */
