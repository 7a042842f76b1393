#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lexicon.hpp"

namespace dctembed {

enum class Split { train, dev, test };

std::string_view split_name(Split split);  // "tr", "va", "te"

struct ProbingExample {
  Split split = Split::train;
  int label = 0;
  std::vector<std::string> tokens;
};

/// Labeled sentence collection for one probing task, with disjoint
/// train/dev/test splits covering every example.
struct ProbingDataset {
  std::string task;
  std::size_t label_count = 0;
  std::vector<ProbingExample> examples;

  std::vector<std::size_t> indices_of(Split split) const;
};

struct LengthBucket {
  std::size_t min_len = 1;
  std::size_t max_len = 1;
};

/// Length-prediction task: random token sentences whose length falls in a
/// labeled bucket; label = bucket index. 80/10/10 split, stratified per label.
ProbingDataset gen_sentlen(std::size_t vocab_size,
                           const std::vector<LengthBucket>& buckets,
                           std::size_t per_bucket, std::uint64_t seed);

/// Word-content task: each sentence contains exactly one designated target
/// word among non-target fillers; label = target word id.
ProbingDataset gen_wc(std::size_t vocab_size, std::size_t target_words,
                      std::size_t per_word, std::size_t sent_len,
                      std::uint64_t seed);

/// Word-order task: each base sentence is emitted as the original (label 0)
/// and a copy with one random adjacent token pair swapped (label 1); both
/// members of a pair land in the same split. Base sentences follow a
/// canonical positional order: the vocabulary is divided into sent_len
/// contiguous bands and position i draws its token from band i, so the
/// swap is the only order violation a classifier can latch on to.
ProbingDataset gen_bshift(std::size_t base_sentences, std::size_t sent_len,
                          std::size_t vocab_size, std::uint64_t seed);

/// TSV dataset format: one example per line, columns
///   split ("tr"/"va"/"te") <TAB> label <TAB> space-joined tokens
void save_dataset_tsv(const ProbingDataset& dataset, const std::string& path);
ProbingDataset load_dataset_tsv(const std::string& path, std::string task_name);

/// Synthetic word vectors for desk-scale probing runs. Token t gets
///   v_t = g_t + u + order_strength * m_band(t)
/// where g_t is i.i.d. standard normal, u is a shared unit offset (so
/// pooled features carry a length signal), and m_b are per-band unit
/// directions giving tokens a positional-class signature that the bshift
/// generator's band layout lines up with.
struct SyntheticVectorConfig {
  std::size_t vocab_size = 100;
  std::size_t dim = 50;
  std::size_t order_bands = 4;
  double order_strength = 3.0;
  std::uint64_t seed = 1;
};

std::string synthetic_token(std::size_t id);  // "w<id>"

/// Band of a token id when the vocabulary is split into `bands` contiguous
/// ranges; gen_bshift and make_synthetic_table use the same partition.
std::size_t order_band_of(std::size_t token_id, std::size_t vocab_size,
                          std::size_t bands);

WordEmbeddingTable make_synthetic_table(const SyntheticVectorConfig& config);

}  // namespace dctembed
