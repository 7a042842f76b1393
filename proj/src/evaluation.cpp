#include "evaluation.hpp"

#include <algorithm>

#include "error.hpp"

namespace dctembed {

std::size_t required_plan_length(const ProbingDataset& dataset,
                                 const WordEmbeddingTable& table,
                                 PoolingMethod method, std::size_t k_count) {
  switch (method) {
    case PoolingMethod::dct: {
      std::size_t longest = 0;
      for (const ProbingExample& ex : dataset.examples) {
        longest = std::max(longest, ex.tokens.size());
      }
      return std::max({longest, k_count, std::size_t{1}});
    }
    case PoolingMethod::dct_star:
      return std::max(table.dim(), std::size_t{1});
    case PoolingMethod::avg:
    case PoolingMethod::max:
      return 1;
  }
  return 1;
}

ExtractResult extract_features(const DctPlan& plan, const WordEmbeddingTable& table,
                               const ProbingDataset& dataset, PoolingMethod method,
                               std::size_t k_count) {
  if (dataset.examples.empty()) {
    fail(ErrorCode::empty_input, "dataset has no examples");
  }
  if (dataset.label_count < 2) {
    fail(ErrorCode::invalid_argument, "dataset needs at least two labels");
  }
  const std::size_t feat_dim = embedding_length(method, k_count, table.dim());

  ExtractResult out;
  for (SplitFeatures* sf : {&out.train, &out.dev, &out.test}) {
    sf->features.dim = feat_dim;
  }

  for (std::size_t i = 0; i < dataset.examples.size(); ++i) {
    const ProbingExample& ex = dataset.examples[i];
    EmbedResult embedded = embed_tokens(table, ex.tokens);
    out.oov_tokens += embedded.oov_count;
    if (embedded.matrix.rows == 0 && method != PoolingMethod::dct) {
      fail(ErrorCode::empty_input,
           "example " + std::to_string(i) + " has no in-vocabulary tokens; " +
               std::string(method_name(method)) + " pooling needs at least one");
    }

    SentenceEmbedding enc;
    switch (method) {
      case PoolingMethod::dct: enc = encode_dct(plan, embedded.matrix, k_count); break;
      case PoolingMethod::avg: enc = encode_avg(embedded.matrix); break;
      case PoolingMethod::max: enc = encode_max(embedded.matrix); break;
      case PoolingMethod::dct_star:
        enc = encode_dct_star(plan, embedded.matrix, k_count);
        break;
    }

    SplitFeatures& sf = ex.split == Split::train ? out.train
                        : ex.split == Split::dev ? out.dev
                                                 : out.test;
    sf.features.push_row(enc.values);
    sf.labels.push_back(ex.label);
  }
  return out;
}

std::vector<ClassifierConfig> default_grid(std::uint64_t seed) {
  std::vector<ClassifierConfig> grid;
  for (std::size_t hidden : {std::size_t{0}, std::size_t{50}, std::size_t{100},
                             std::size_t{200}, std::size_t{512}}) {
    for (double dropout : {0.0, 0.1, 0.2}) {
      ClassifierConfig config;
      config.hidden_size = hidden;
      config.dropout = dropout;
      config.seed = seed;
      grid.push_back(config);
    }
  }
  return grid;
}

EvalReport evaluate_probing(const WordEmbeddingTable& table,
                            const ProbingDataset& dataset, PoolingMethod method,
                            std::size_t k_count,
                            std::span<const ClassifierConfig> grid,
                            bool parallel) {
  DctPlan plan(required_plan_length(dataset, table, method, k_count));
  ExtractResult extracted = extract_features(plan, table, dataset, method, k_count);

  if (extracted.train.features.count == 0) fail(ErrorCode::empty_input, "train split is empty");
  if (extracted.dev.features.count == 0) fail(ErrorCode::empty_input, "dev split is empty");
  if (extracted.test.features.count == 0) fail(ErrorCode::empty_input, "test split is empty");

  GridSearchResult search = grid_search(
      grid, extracted.train.features, extracted.train.labels,
      extracted.dev.features, extracted.dev.labels, extracted.test.features,
      extracted.test.labels, dataset.label_count, parallel);

  EvalReport report;
  report.task = dataset.task;
  report.method = method;
  report.k_count = k_count;
  report.selected = search.selected;
  report.dev_accuracy = search.dev_accuracy;
  report.test_accuracy = search.test_accuracy;
  report.train_count = extracted.train.features.count;
  report.dev_count = extracted.dev.features.count;
  report.test_count = extracted.test.features.count;
  report.oov_tokens = extracted.oov_tokens;
  return report;
}

}  // namespace dctembed
