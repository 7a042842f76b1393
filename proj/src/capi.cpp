#include "dctembed.h"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "classifier.hpp"
#include "dct.hpp"
#include "encoder.hpp"
#include "error.hpp"
#include "evaluation.hpp"
#include "lexicon.hpp"
#include "probing.hpp"

struct dcte_plan {
  dctembed::DctPlan impl;
};

struct dcte_table {
  dctembed::WordEmbeddingTable impl;
};

struct dcte_dataset {
  dctembed::ProbingDataset impl;
  std::vector<std::string> joined;  // space-joined sentences, one per example
};

namespace {

thread_local std::string t_last_error;

dcte_status status_of(dctembed::ErrorCode code) {
  using dctembed::ErrorCode;
  switch (code) {
    case ErrorCode::invalid_argument: return DCTE_INVALID_ARGUMENT;
    case ErrorCode::parse_error: return DCTE_PARSE_ERROR;
    case ErrorCode::io_error: return DCTE_IO_ERROR;
    case ErrorCode::oov_token: return DCTE_OOV_TOKEN;
    case ErrorCode::dim_mismatch: return DCTE_DIM_MISMATCH;
    case ErrorCode::empty_input: return DCTE_EMPTY_INPUT;
  }
  return DCTE_INTERNAL;
}

dcte_status set_error(dcte_status status, std::string message) {
  t_last_error = std::move(message);
  return status;
}

/* Runs fn, translating exceptions into status codes. */
template <typename Fn>
dcte_status guard(Fn&& fn) {
  try {
    fn();
    return DCTE_OK;
  } catch (const dctembed::Error& e) {
    return set_error(status_of(e.code()), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(DCTE_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(DCTE_INTERNAL, e.what());
  }
}

dcte_status require(bool ok, const char* what) {
  if (ok) return DCTE_OK;
  return set_error(DCTE_INVALID_ARGUMENT, what);
}

dctembed::OovPolicy to_policy(dcte_oov_policy policy) {
  switch (policy) {
    case DCTE_OOV_SKIP: return dctembed::OovPolicy::skip;
    case DCTE_OOV_ZERO: return dctembed::OovPolicy::zero_vector;
    case DCTE_OOV_ERROR: return dctembed::OovPolicy::error;
  }
  dctembed::fail(dctembed::ErrorCode::invalid_argument, "unknown oov policy");
}

dctembed::PoolingMethod to_method(dcte_method method) {
  switch (method) {
    case DCTE_METHOD_DCT: return dctembed::PoolingMethod::dct;
    case DCTE_METHOD_AVG: return dctembed::PoolingMethod::avg;
    case DCTE_METHOD_MAX: return dctembed::PoolingMethod::max;
    case DCTE_METHOD_DCT_STAR: return dctembed::PoolingMethod::dct_star;
  }
  dctembed::fail(dctembed::ErrorCode::invalid_argument, "unknown pooling method");
}

dctembed::ClassifierConfig to_config(const dcte_classifier_config& c) {
  dctembed::ClassifierConfig out;
  out.hidden_size = c.hidden_size;
  out.dropout = c.dropout;
  out.learning_rate = c.learning_rate;
  out.epochs = c.epochs;
  out.batch_size = c.batch_size;
  out.seed = c.seed;
  return out;
}

dcte_classifier_config from_config(const dctembed::ClassifierConfig& c) {
  dcte_classifier_config out;
  out.hidden_size = c.hidden_size;
  out.dropout = c.dropout;
  out.learning_rate = c.learning_rate;
  out.epochs = c.epochs;
  out.batch_size = c.batch_size;
  out.seed = c.seed;
  return out;
}

double* copy_out(const std::vector<double>& values) {
  if (values.empty()) return nullptr;
  auto* buf = static_cast<double*>(std::malloc(values.size() * sizeof(double)));
  if (!buf) throw std::bad_alloc();
  std::memcpy(buf, values.data(), values.size() * sizeof(double));
  return buf;
}

dcte_dataset* wrap_dataset(dctembed::ProbingDataset&& dataset) {
  auto handle = std::make_unique<dcte_dataset>();
  handle->impl = std::move(dataset);
  handle->joined.reserve(handle->impl.examples.size());
  for (const dctembed::ProbingExample& ex : handle->impl.examples) {
    std::string line;
    for (std::size_t i = 0; i < ex.tokens.size(); ++i) {
      if (i) line += ' ';
      line += ex.tokens[i];
    }
    handle->joined.push_back(std::move(line));
  }
  return handle.release();
}

}  // namespace

extern "C" {

const char* dcte_status_name(dcte_status status) {
  switch (status) {
    case DCTE_OK: return "ok";
    case DCTE_INVALID_ARGUMENT: return "invalid_argument";
    case DCTE_PARSE_ERROR: return "parse_error";
    case DCTE_IO_ERROR: return "io_error";
    case DCTE_OOV_TOKEN: return "oov_token";
    case DCTE_DIM_MISMATCH: return "dim_mismatch";
    case DCTE_EMPTY_INPUT: return "empty_input";
    case DCTE_INTERNAL: return "internal";
  }
  return "?";
}

const char* dcte_last_error(void) { return t_last_error.c_str(); }

const char* dcte_version(void) { return "1.0.0"; }

void dcte_free(void* ptr) { std::free(ptr); }

/* ---- pooling methods ------------------------------------------------- */

const char* dcte_method_name(dcte_method method) {
  switch (method) {
    case DCTE_METHOD_DCT: return "dct";
    case DCTE_METHOD_AVG: return "avg";
    case DCTE_METHOD_MAX: return "max";
    case DCTE_METHOD_DCT_STAR: return "dct-star";
  }
  return "?";
}

dcte_status dcte_method_parse(const char* name, dcte_method* out) {
  if (dcte_status s = require(name && out, "name and out must be non-NULL")) return s;
  const std::string_view sv(name);
  if (sv == "dct") *out = DCTE_METHOD_DCT;
  else if (sv == "avg") *out = DCTE_METHOD_AVG;
  else if (sv == "max") *out = DCTE_METHOD_MAX;
  else if (sv == "dct-star") *out = DCTE_METHOD_DCT_STAR;
  else return set_error(DCTE_INVALID_ARGUMENT,
                        "unknown method \"" + std::string(sv) +
                            "\" (expected dct, avg, max or dct-star)");
  return DCTE_OK;
}

size_t dcte_embedding_length(dcte_method method, size_t k_count, size_t dim) {
  switch (method) {
    case DCTE_METHOD_DCT: return k_count * dim;
    case DCTE_METHOD_AVG:
    case DCTE_METHOD_MAX: return dim;
    case DCTE_METHOD_DCT_STAR: return k_count;
  }
  return 0;
}

/* ---- transform plan -------------------------------------------------- */

dcte_status dcte_plan_create(size_t max_len, dcte_plan** out) {
  if (dcte_status s = require(out != nullptr, "out must be non-NULL")) return s;
  *out = nullptr;
  return guard([&] { *out = new dcte_plan{dctembed::DctPlan(max_len)}; });
}

void dcte_plan_destroy(dcte_plan* plan) { delete plan; }

size_t dcte_plan_max_len(const dcte_plan* plan) {
  return plan ? plan->impl.max_len() : 0;
}

dcte_status dcte_dct_forward(const dcte_plan* plan, const double* seq, size_t n,
                             double* out) {
  if (dcte_status s = require(plan && seq && out, "plan, seq and out must be non-NULL")) return s;
  return guard([&] {
    const std::vector<double> c = dctembed::dct_forward(plan->impl, {seq, n});
    std::memcpy(out, c.data(), n * sizeof(double));
  });
}

dcte_status dcte_dct_inverse(const dcte_plan* plan, const double* coeffs,
                             size_t n, double* out) {
  if (dcte_status s = require(plan && coeffs && out, "plan, coeffs and out must be non-NULL")) return s;
  return guard([&] {
    const std::vector<double> v = dctembed::dct_inverse(plan->impl, {coeffs, n});
    std::memcpy(out, v.data(), n * sizeof(double));
  });
}

dcte_status dcte_dct_truncated(const dcte_plan* plan, const double* seq,
                               size_t n, size_t k_count, double* out) {
  if (dcte_status s = require(plan && seq && out, "plan, seq and out must be non-NULL")) return s;
  return guard([&] {
    const std::vector<double> c = dctembed::dct_truncated(plan->impl, {seq, n}, k_count);
    std::memcpy(out, c.data(), k_count * sizeof(double));
  });
}

/* ---- word vectors ---------------------------------------------------- */

dcte_status dcte_oov_policy_parse(const char* name, dcte_oov_policy* out) {
  if (dcte_status s = require(name && out, "name and out must be non-NULL")) return s;
  const std::string_view sv(name);
  if (sv == "skip") *out = DCTE_OOV_SKIP;
  else if (sv == "zero") *out = DCTE_OOV_ZERO;
  else if (sv == "error") *out = DCTE_OOV_ERROR;
  else return set_error(DCTE_INVALID_ARGUMENT,
                        "unknown oov policy \"" + std::string(sv) +
                            "\" (expected skip, zero or error)");
  return DCTE_OK;
}

dcte_status dcte_table_load(const char* path, size_t expected_dim,
                            dcte_oov_policy policy, dcte_table** out) {
  if (dcte_status s = require(path && out, "path and out must be non-NULL")) return s;
  *out = nullptr;
  return guard([&] {
    std::optional<std::size_t> expect;
    if (expected_dim > 0) expect = expected_dim;
    *out = new dcte_table{
        dctembed::WordEmbeddingTable::load(path, expect, to_policy(policy))};
  });
}

dcte_status dcte_table_save(const dcte_table* table, const char* path) {
  if (dcte_status s = require(table && path, "table and path must be non-NULL")) return s;
  return guard([&] { table->impl.save(path); });
}

void dcte_table_destroy(dcte_table* table) { delete table; }

size_t dcte_table_dim(const dcte_table* table) {
  return table ? table->impl.dim() : 0;
}

size_t dcte_table_size(const dcte_table* table) {
  return table ? table->impl.size() : 0;
}

size_t dcte_table_duplicates(const dcte_table* table) {
  return table ? table->impl.duplicate_count() : 0;
}

dcte_status dcte_table_set_oov_policy(dcte_table* table, dcte_oov_policy policy) {
  if (dcte_status s = require(table != nullptr, "table must be non-NULL")) return s;
  return guard([&] { table->impl.set_oov_policy(to_policy(policy)); });
}

const float* dcte_table_find(const dcte_table* table, const char* token) {
  if (!table || !token) return nullptr;
  return table->impl.find(token);
}

const char* dcte_table_token(const dcte_table* table, size_t index) {
  if (!table || index >= table->impl.size()) return nullptr;
  return table->impl.token_at(index).c_str();
}

const float* dcte_table_vector(const dcte_table* table, size_t index) {
  if (!table || index >= table->impl.size()) return nullptr;
  return table->impl.vector_at(index);
}

void dcte_synthetic_config_init(dcte_synthetic_config* config) {
  if (!config) return;
  const dctembed::SyntheticVectorConfig defaults;
  config->vocab_size = defaults.vocab_size;
  config->dim = defaults.dim;
  config->order_bands = defaults.order_bands;
  config->order_strength = defaults.order_strength;
  config->seed = defaults.seed;
}

dcte_status dcte_table_create_synthetic(const dcte_synthetic_config* config,
                                        dcte_oov_policy policy,
                                        dcte_table** out) {
  if (dcte_status s = require(config && out, "config and out must be non-NULL")) return s;
  *out = nullptr;
  return guard([&] {
    dctembed::SyntheticVectorConfig c;
    c.vocab_size = config->vocab_size;
    c.dim = config->dim;
    c.order_bands = config->order_bands;
    c.order_strength = config->order_strength;
    c.seed = config->seed;
    dctembed::WordEmbeddingTable table = dctembed::make_synthetic_table(c);
    table.set_oov_policy(to_policy(policy));
    *out = new dcte_table{std::move(table)};
  });
}

/* ---- tokenizing and encoding ----------------------------------------- */

dcte_status dcte_tokenize(const char* text, char*** out_tokens,
                          size_t* out_count) {
  if (dcte_status s = require(text && out_tokens && out_count,
                              "text, out_tokens and out_count must be non-NULL")) return s;
  *out_tokens = nullptr;
  *out_count = 0;
  return guard([&] {
    const std::vector<std::string> tokens = dctembed::tokenize(text);
    auto** arr = static_cast<char**>(std::malloc(sizeof(char*) * std::max<size_t>(tokens.size(), 1)));
    if (!arr) throw std::bad_alloc();
    size_t filled = 0;
    try {
      for (; filled < tokens.size(); ++filled) {
        char* copy = static_cast<char*>(std::malloc(tokens[filled].size() + 1));
        if (!copy) throw std::bad_alloc();
        std::memcpy(copy, tokens[filled].c_str(), tokens[filled].size() + 1);
        arr[filled] = copy;
      }
    } catch (...) {
      for (size_t i = 0; i < filled; ++i) std::free(arr[i]);
      std::free(arr);
      throw;
    }
    *out_tokens = arr;
    *out_count = tokens.size();
  });
}

void dcte_tokens_free(char** tokens, size_t count) {
  if (!tokens) return;
  for (size_t i = 0; i < count; ++i) std::free(tokens[i]);
  std::free(tokens);
}

dcte_status dcte_embed_text(const dcte_table* table, const char* text,
                            double** out_values, size_t* out_rows,
                            size_t* out_dim, size_t* out_oov) {
  if (dcte_status s = require(table && text && out_values && out_rows && out_dim,
                              "table, text and out pointers must be non-NULL")) return s;
  *out_values = nullptr;
  *out_rows = 0;
  *out_dim = 0;
  if (out_oov) *out_oov = 0;
  return guard([&] {
    const std::vector<std::string> tokens = dctembed::tokenize(text);
    dctembed::EmbedResult result = dctembed::embed_tokens(table->impl, tokens);
    *out_values = copy_out(result.matrix.values);
    *out_rows = result.matrix.rows;
    *out_dim = result.matrix.dim;
    if (out_oov) *out_oov = result.oov_count;
  });
}

dcte_status dcte_encode_matrix(const dcte_plan* plan, const double* values,
                               size_t rows, size_t dim, dcte_method method,
                               size_t k_count, double* out) {
  if (dcte_status s = require(plan && out, "plan and out must be non-NULL")) return s;
  if (dcte_status s = require(values != nullptr || rows * dim == 0,
                              "values must be non-NULL for a non-empty matrix")) return s;
  return guard([&] {
    dctembed::SentenceMatrix mat(rows, dim);
    if (rows * dim != 0) {
      std::memcpy(mat.values.data(), values, rows * dim * sizeof(double));
    }
    dctembed::SentenceEmbedding enc;
    switch (to_method(method)) {
      case dctembed::PoolingMethod::dct:
        enc = dctembed::encode_dct(plan->impl, mat, k_count);
        break;
      case dctembed::PoolingMethod::avg:
        enc = dctembed::encode_avg(mat);
        break;
      case dctembed::PoolingMethod::max:
        enc = dctembed::encode_max(mat);
        break;
      case dctembed::PoolingMethod::dct_star:
        enc = dctembed::encode_dct_star(plan->impl, mat, k_count);
        break;
    }
    std::memcpy(out, enc.values.data(), enc.values.size() * sizeof(double));
  });
}

dcte_status dcte_encode_text(const dcte_plan* plan, const dcte_table* table,
                             const char* text, dcte_method method,
                             size_t k_count, double** out_values,
                             size_t* out_len, size_t* out_oov) {
  if (dcte_status s = require(plan && table && text && out_values && out_len,
                              "plan, table, text and out pointers must be non-NULL")) return s;
  *out_values = nullptr;
  *out_len = 0;
  if (out_oov) *out_oov = 0;
  return guard([&] {
    const std::vector<std::string> tokens = dctembed::tokenize(text);
    dctembed::EmbedResult embedded = dctembed::embed_tokens(table->impl, tokens);
    if (out_oov) *out_oov = embedded.oov_count;
    dctembed::SentenceEmbedding enc;
    switch (to_method(method)) {
      case dctembed::PoolingMethod::dct:
        enc = dctembed::encode_dct(plan->impl, embedded.matrix, k_count);
        break;
      case dctembed::PoolingMethod::avg:
        enc = dctembed::encode_avg(embedded.matrix);
        break;
      case dctembed::PoolingMethod::max:
        enc = dctembed::encode_max(embedded.matrix);
        break;
      case dctembed::PoolingMethod::dct_star:
        enc = dctembed::encode_dct_star(plan->impl, embedded.matrix, k_count);
        break;
    }
    *out_values = copy_out(enc.values);
    *out_len = enc.values.size();
  });
}

/* ---- probing datasets ------------------------------------------------ */

dcte_status dcte_gen_sentlen(size_t vocab_size, const size_t* bucket_min,
                             const size_t* bucket_max, size_t bucket_count,
                             size_t per_bucket, uint64_t seed,
                             dcte_dataset** out) {
  if (dcte_status s = require(out != nullptr, "out must be non-NULL")) return s;
  if (dcte_status s = require(bucket_count == 0 || (bucket_min && bucket_max),
                              "bucket arrays must be non-NULL")) return s;
  *out = nullptr;
  return guard([&] {
    std::vector<dctembed::LengthBucket> buckets(bucket_count);
    for (size_t i = 0; i < bucket_count; ++i) {
      buckets[i] = {bucket_min[i], bucket_max[i]};
    }
    *out = wrap_dataset(dctembed::gen_sentlen(vocab_size, buckets, per_bucket, seed));
  });
}

dcte_status dcte_gen_wc(size_t vocab_size, size_t target_words, size_t per_word,
                        size_t sent_len, uint64_t seed, dcte_dataset** out) {
  if (dcte_status s = require(out != nullptr, "out must be non-NULL")) return s;
  *out = nullptr;
  return guard([&] {
    *out = wrap_dataset(
        dctembed::gen_wc(vocab_size, target_words, per_word, sent_len, seed));
  });
}

dcte_status dcte_gen_bshift(size_t base_sentences, size_t sent_len,
                            size_t vocab_size, uint64_t seed,
                            dcte_dataset** out) {
  if (dcte_status s = require(out != nullptr, "out must be non-NULL")) return s;
  *out = nullptr;
  return guard([&] {
    *out = wrap_dataset(
        dctembed::gen_bshift(base_sentences, sent_len, vocab_size, seed));
  });
}

dcte_status dcte_dataset_load_tsv(const char* path, const char* task_name,
                                  dcte_dataset** out) {
  if (dcte_status s = require(path && task_name && out,
                              "path, task_name and out must be non-NULL")) return s;
  *out = nullptr;
  return guard([&] {
    *out = wrap_dataset(dctembed::load_dataset_tsv(path, task_name));
  });
}

dcte_status dcte_dataset_save_tsv(const dcte_dataset* dataset, const char* path) {
  if (dcte_status s = require(dataset && path, "dataset and path must be non-NULL")) return s;
  return guard([&] { dctembed::save_dataset_tsv(dataset->impl, path); });
}

void dcte_dataset_destroy(dcte_dataset* dataset) { delete dataset; }

size_t dcte_dataset_size(const dcte_dataset* dataset) {
  return dataset ? dataset->impl.examples.size() : 0;
}

size_t dcte_dataset_label_count(const dcte_dataset* dataset) {
  return dataset ? dataset->impl.label_count : 0;
}

const char* dcte_dataset_task(const dcte_dataset* dataset) {
  return dataset ? dataset->impl.task.c_str() : nullptr;
}

dcte_status dcte_dataset_example(const dcte_dataset* dataset, size_t index,
                                 const char** split, int* label,
                                 const char** sentence) {
  if (dcte_status s = require(dataset != nullptr, "dataset must be non-NULL")) return s;
  if (index >= dataset->impl.examples.size()) {
    return set_error(DCTE_INVALID_ARGUMENT,
                     "example index " + std::to_string(index) +
                         " out of range (size " +
                         std::to_string(dataset->impl.examples.size()) + ")");
  }
  const dctembed::ProbingExample& ex = dataset->impl.examples[index];
  if (split) {
    // split_name returns a view of a string literal
    *split = dctembed::split_name(ex.split).data();
  }
  if (label) *label = ex.label;
  if (sentence) *sentence = dataset->joined[index].c_str();
  return DCTE_OK;
}

/* ---- probing classifier ---------------------------------------------- */

void dcte_classifier_config_init(dcte_classifier_config* config) {
  if (!config) return;
  *config = from_config(dctembed::ClassifierConfig{});
}

size_t dcte_default_grid(uint64_t seed, dcte_classifier_config* out,
                         size_t capacity) {
  const std::vector<dctembed::ClassifierConfig> grid = dctembed::default_grid(seed);
  if (out) {
    const size_t n = std::min(capacity, grid.size());
    for (size_t i = 0; i < n; ++i) out[i] = from_config(grid[i]);
  }
  return grid.size();
}

dcte_status dcte_probe_eval(const dcte_table* table, const dcte_dataset* dataset,
                            dcte_method method, size_t k_count,
                            const dcte_classifier_config* configs,
                            size_t config_count, int parallel,
                            dcte_eval_result* out) {
  if (dcte_status s = require(table && dataset && out,
                              "table, dataset and out must be non-NULL")) return s;
  if (dcte_status s = require(configs != nullptr && config_count > 0,
                              "configs must hold at least one entry")) return s;
  return guard([&] {
    std::vector<dctembed::ClassifierConfig> grid;
    grid.reserve(config_count);
    for (size_t i = 0; i < config_count; ++i) grid.push_back(to_config(configs[i]));
    const dctembed::EvalReport report = dctembed::evaluate_probing(
        table->impl, dataset->impl, to_method(method), k_count, grid,
        parallel != 0);
    out->selected = from_config(report.selected);
    out->dev_accuracy = report.dev_accuracy;
    out->test_accuracy = report.test_accuracy;
    out->train_count = report.train_count;
    out->dev_count = report.dev_count;
    out->test_count = report.test_count;
    out->oov_tokens = report.oov_tokens;
  });
}

}  // extern "C"
