#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "classifier.hpp"
#include "dct.hpp"
#include "encoder.hpp"
#include "lexicon.hpp"
#include "probing.hpp"

namespace dctembed {

struct SplitFeatures {
  FeatureMatrix features;
  std::vector<int> labels;
};

/// Smallest plan max_len that can pool every sentence of the dataset with
/// the given method: the longest sentence (at least k_count) for dct, the
/// table dim for dct-star, 1 for avg/max (no transform involved).
std::size_t required_plan_length(const ProbingDataset& dataset,
                                 const WordEmbeddingTable& table,
                                 PoolingMethod method, std::size_t k_count);

struct ExtractResult {
  SplitFeatures train, dev, test;
  std::size_t oov_tokens = 0;
};

/// Pools every example of the dataset into a fixed-length feature row,
/// grouped by split. OOV handling follows the table's policy; a sentence
/// left without any in-vocabulary token is an error for avg/max/dct-star
/// and an all-zero row for dct.
ExtractResult extract_features(const DctPlan& plan, const WordEmbeddingTable& table,
                               const ProbingDataset& dataset, PoolingMethod method,
                               std::size_t k_count);

/// Probing grid: hidden size in {0, 50, 100, 200, 512} crossed with
/// dropout in {0, 0.1, 0.2}; every config trains from the same seed.
std::vector<ClassifierConfig> default_grid(std::uint64_t seed);

struct EvalReport {
  std::string task;
  PoolingMethod method = PoolingMethod::dct;
  std::size_t k_count = 0;
  ClassifierConfig selected;
  double dev_accuracy = 0.0;
  double test_accuracy = 0.0;
  std::size_t train_count = 0;
  std::size_t dev_count = 0;
  std::size_t test_count = 0;
  std::size_t oov_tokens = 0;
};

/// Full probing run: pool features, train every grid config on the train
/// split, pick the config with the best dev accuracy, report its test
/// accuracy. Deterministic for fixed inputs and seeds.
EvalReport evaluate_probing(const WordEmbeddingTable& table,
                            const ProbingDataset& dataset, PoolingMethod method,
                            std::size_t k_count,
                            std::span<const ClassifierConfig> grid,
                            bool parallel = true);

}  // namespace dctembed
