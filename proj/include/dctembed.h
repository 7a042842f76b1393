/* dctembed: DCT-based sentence embedding toolkit, C interface.
 *
 * All functions that can fail return a dcte_status; DCTE_OK is 0. On
 * failure a thread-local message is available from dcte_last_error().
 * Objects behind opaque handles are created by *_create / *_load / gen_*
 * functions and released with their matching *_destroy. Buffers returned
 * through double** / char*** out-parameters are heap-allocated and belong
 * to the caller; release them with dcte_free / dcte_tokens_free.
 */
#ifndef DCTEMBED_H
#define DCTEMBED_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dcte_status {
  DCTE_OK = 0,
  DCTE_INVALID_ARGUMENT = 1,
  DCTE_PARSE_ERROR = 2,
  DCTE_IO_ERROR = 3,
  DCTE_OOV_TOKEN = 4,
  DCTE_DIM_MISMATCH = 5,
  DCTE_EMPTY_INPUT = 6,
  DCTE_INTERNAL = 7
} dcte_status;

/* Stable name of a status code, e.g. "invalid_argument". */
const char* dcte_status_name(dcte_status status);

/* Message of the most recent failure on this thread ("" if none). The
 * pointer stays valid until the next failing call on the same thread. */
const char* dcte_last_error(void);

const char* dcte_version(void);

/* Releases a buffer returned through a double** out-parameter. */
void dcte_free(void* ptr);

/* ---- pooling methods ------------------------------------------------- */

typedef enum dcte_method {
  DCTE_METHOD_DCT = 0,
  DCTE_METHOD_AVG = 1,
  DCTE_METHOD_MAX = 2,
  DCTE_METHOD_DCT_STAR = 3
} dcte_method;

const char* dcte_method_name(dcte_method method);

/* Parses "dct", "avg", "max" or "dct-star". */
dcte_status dcte_method_parse(const char* name, dcte_method* out);

/* Length of a pooled embedding: k_count*dim for dct, dim for avg/max,
 * k_count for dct-star. */
size_t dcte_embedding_length(dcte_method method, size_t k_count, size_t dim);

/* ---- transform plan -------------------------------------------------- */

/* Holds memoized orthogonal DCT-II basis tables for lengths up to a
 * fixed maximum. Safe to share across threads once created. */
typedef struct dcte_plan dcte_plan;

dcte_status dcte_plan_create(size_t max_len, dcte_plan** out);
void dcte_plan_destroy(dcte_plan* plan);
size_t dcte_plan_max_len(const dcte_plan* plan);

/* Forward transform: out[0..n) gets all n coefficients of seq[0..n). */
dcte_status dcte_dct_forward(const dcte_plan* plan, const double* seq, size_t n,
                             double* out);

/* Inverse of dcte_dct_forward up to round-off. */
dcte_status dcte_dct_inverse(const dcte_plan* plan, const double* coeffs,
                             size_t n, double* out);

/* First k_count coefficients only (1 <= k_count <= n). */
dcte_status dcte_dct_truncated(const dcte_plan* plan, const double* seq,
                               size_t n, size_t k_count, double* out);

/* ---- word vectors ---------------------------------------------------- */

typedef enum dcte_oov_policy {
  DCTE_OOV_SKIP = 0, /* drop unknown tokens */
  DCTE_OOV_ZERO = 1, /* substitute a zero vector */
  DCTE_OOV_ERROR = 2 /* fail on the first unknown token */
} dcte_oov_policy;

/* Parses "skip", "zero" or "error". */
dcte_status dcte_oov_policy_parse(const char* name, dcte_oov_policy* out);

typedef struct dcte_table dcte_table;

/* Loads whitespace-separated word vectors: an optional "count dim" header
 * line, then one line per word (token followed by dim numbers). Pass
 * expected_dim = 0 to accept whatever the file declares. */
dcte_status dcte_table_load(const char* path, size_t expected_dim,
                            dcte_oov_policy policy, dcte_table** out);

dcte_status dcte_table_save(const dcte_table* table, const char* path);
void dcte_table_destroy(dcte_table* table);

size_t dcte_table_dim(const dcte_table* table);
size_t dcte_table_size(const dcte_table* table);
size_t dcte_table_duplicates(const dcte_table* table);
dcte_status dcte_table_set_oov_policy(dcte_table* table, dcte_oov_policy policy);

/* Vector of a token (dim floats) or NULL if the token is absent. */
const float* dcte_table_find(const dcte_table* table, const char* token);

/* Token / vector by insertion index (0 <= index < size); NULL if out of
 * range. */
const char* dcte_table_token(const dcte_table* table, size_t index);
const float* dcte_table_vector(const dcte_table* table, size_t index);

/* Synthetic vocabulary for desk-scale probing: token "w<i>" gets a random
 * Gaussian vector plus a shared offset plus a scaled per-band direction
 * (the vocabulary splits into order_bands contiguous id ranges). */
typedef struct dcte_synthetic_config {
  size_t vocab_size;
  size_t dim;
  size_t order_bands;
  double order_strength;
  uint64_t seed;
} dcte_synthetic_config;

/* Fills in the defaults (100 tokens, dim 50, 4 bands, strength 3, seed 1). */
void dcte_synthetic_config_init(dcte_synthetic_config* config);

dcte_status dcte_table_create_synthetic(const dcte_synthetic_config* config,
                                        dcte_oov_policy policy,
                                        dcte_table** out);

/* ---- tokenizing and encoding ----------------------------------------- */

/* Whitespace tokenizer with edge-punctuation stripping and ASCII
 * lowercasing. *out_tokens receives out_count heap-allocated strings. */
dcte_status dcte_tokenize(const char* text, char*** out_tokens,
                          size_t* out_count);
void dcte_tokens_free(char** tokens, size_t count);

/* Tokenizes text and stacks the word vectors into a rows x dim row-major
 * matrix (OOV handling per the table's policy). *out_values is
 * heap-allocated (dcte_free); it is NULL when rows is 0. */
dcte_status dcte_embed_text(const dcte_table* table, const char* text,
                            double** out_values, size_t* out_rows,
                            size_t* out_dim, size_t* out_oov);

/* Pools a rows x dim row-major matrix into out, which must hold
 * dcte_embedding_length(method, k_count, dim) doubles. rows may be 0 for
 * dct (the result is all zeros); avg/max/dct-star fail with
 * DCTE_EMPTY_INPUT. */
dcte_status dcte_encode_matrix(const dcte_plan* plan, const double* values,
                               size_t rows, size_t dim, dcte_method method,
                               size_t k_count, double* out);

/* Tokenize + embed + pool in one call. *out_values is heap-allocated with
 * *out_len entries. A sentence with no usable tokens fails with
 * DCTE_EMPTY_INPUT for avg/max/dct-star and yields zeros for dct. */
dcte_status dcte_encode_text(const dcte_plan* plan, const dcte_table* table,
                             const char* text, dcte_method method,
                             size_t k_count, double** out_values,
                             size_t* out_len, size_t* out_oov);

/* ---- probing datasets ------------------------------------------------ */

typedef struct dcte_dataset dcte_dataset;

/* Sentence-length task: label = index of the length bucket
 * [bucket_min[i], bucket_max[i]]; buckets must not overlap. */
dcte_status dcte_gen_sentlen(size_t vocab_size, const size_t* bucket_min,
                             const size_t* bucket_max, size_t bucket_count,
                             size_t per_bucket, uint64_t seed,
                             dcte_dataset** out);

/* Word-content task: exactly one of target_words designated tokens per
 * sentence; label = target id. */
dcte_status dcte_gen_wc(size_t vocab_size, size_t target_words,
                        size_t per_word, size_t sent_len, uint64_t seed,
                        dcte_dataset** out);

/* Bigram-shift task: base sentences (label 0) paired with copies that have
 * one adjacent token pair swapped (label 1). */
dcte_status dcte_gen_bshift(size_t base_sentences, size_t sent_len,
                            size_t vocab_size, uint64_t seed,
                            dcte_dataset** out);

/* TSV format: split ("tr"/"va"/"te") TAB label TAB space-joined tokens. */
dcte_status dcte_dataset_load_tsv(const char* path, const char* task_name,
                                  dcte_dataset** out);
dcte_status dcte_dataset_save_tsv(const dcte_dataset* dataset,
                                  const char* path);

void dcte_dataset_destroy(dcte_dataset* dataset);
size_t dcte_dataset_size(const dcte_dataset* dataset);
size_t dcte_dataset_label_count(const dcte_dataset* dataset);
const char* dcte_dataset_task(const dcte_dataset* dataset);

/* Row access; the returned strings stay valid for the dataset's lifetime. */
dcte_status dcte_dataset_example(const dcte_dataset* dataset, size_t index,
                                 const char** split, int* label,
                                 const char** sentence);

/* ---- probing classifier ---------------------------------------------- */

typedef struct dcte_classifier_config {
  size_t hidden_size; /* 0 = logistic regression */
  double dropout;
  double learning_rate;
  size_t epochs;
  size_t batch_size;
  uint64_t seed;
} dcte_classifier_config;

/* Fills in the defaults (no hidden layer, no dropout, lr 0.05, 50 epochs,
 * batch 32, seed 0). */
void dcte_classifier_config_init(dcte_classifier_config* config);

/* Standard grid: hidden size in {0, 50, 100, 200, 512} crossed with
 * dropout in {0, 0.1, 0.2}. Returns the grid size; when out is non-NULL,
 * writes up to capacity entries. */
size_t dcte_default_grid(uint64_t seed, dcte_classifier_config* out,
                         size_t capacity);

typedef struct dcte_eval_result {
  dcte_classifier_config selected;
  double dev_accuracy;
  double test_accuracy;
  size_t train_count;
  size_t dev_count;
  size_t test_count;
  size_t oov_tokens;
} dcte_eval_result;

/* Pools every dataset sentence with the given method, trains each grid
 * config on the train split, selects by dev accuracy (ties prefer the
 * smaller hidden size, then the lower dropout), and reports the selected
 * config's test accuracy. parallel != 0 trains configs concurrently;
 * results are identical either way. */
dcte_status dcte_probe_eval(const dcte_table* table,
                            const dcte_dataset* dataset, dcte_method method,
                            size_t k_count,
                            const dcte_classifier_config* configs,
                            size_t config_count, int parallel,
                            dcte_eval_result* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* DCTEMBED_H */
