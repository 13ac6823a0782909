/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#ifndef PRDC_H
#define PRDC_H

#include <stddef.h>
#include <stdint.h>

// Result codes. The non-zero values match the CLI exit codes where they overlap.
typedef enum PrdcStatus {
  PRDC_STATUS_OK = 0,
  PRDC_STATUS_NULL_POINTER = 1,
  PRDC_STATUS_DATA_ERROR = 2,
  PRDC_STATUS_PARAMETER_ERROR = 3,
  PRDC_STATUS_PANIC = 4,
} PrdcStatus;

// Opaque embedding matrix.
typedef struct PrdcEmbeddings PrdcEmbeddings;

// The four metric values and the settings that produced them.
typedef struct PrdcScores {
  double precision;
  double recall;
  double density;
  double coverage;
  size_t k_pr;
  size_t k_dc;
  size_t n_real;
  size_t n_fake;
} PrdcScores;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Copies a row-major `n_samples x dim` array of doubles into a new handle.
enum PrdcStatus prdc_embeddings_from_f64(const double *data,
                                         size_t n_samples,
                                         size_t dim,
                                         struct PrdcEmbeddings **out);

// Like [`prdc_embeddings_from_f64`] for single precision input; values are
// widened to double.
enum PrdcStatus prdc_embeddings_from_f32(const float *data,
                                         size_t n_samples,
                                         size_t dim,
                                         struct PrdcEmbeddings **out);

// Loads an embedding file, choosing the format from its extension.
enum PrdcStatus prdc_embeddings_load(const char *path, struct PrdcEmbeddings **out);

// Releases a handle. Null is ignored.
void prdc_embeddings_free(struct PrdcEmbeddings *handle);

size_t prdc_embeddings_n_samples(const struct PrdcEmbeddings *handle);

size_t prdc_embeddings_dim(const struct PrdcEmbeddings *handle);

// Computes all four metrics. `threads == 0` uses every core.
enum PrdcStatus prdc_compute(const struct PrdcEmbeddings *real,
                             const struct PrdcEmbeddings *fake,
                             size_t k_pr,
                             size_t k_dc,
                             size_t threads,
                             struct PrdcScores *out);

// Expected coverage for identically distributed sets of sizes `n_real`, `n_fake`.
enum PrdcStatus prdc_expected_coverage(uint64_t n_real, uint64_t n_fake, uint64_t k, double *out);

// Smallest k with expected coverage above `1 - epsilon`. `out_coverage` may be null.
enum PrdcStatus prdc_select_k(uint64_t n_real,
                              uint64_t n_fake,
                              double epsilon,
                              uint64_t *out_k,
                              double *out_coverage);

// Message for the most recent failure on this thread, or null. Valid until
// the next call into this library from the same thread.
const char *prdc_last_error(void);

// Library version as a static NUL-terminated string.
const char *prdc_version(void);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* PRDC_H */
