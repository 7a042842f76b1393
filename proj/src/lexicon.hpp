#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "encoder.hpp"

namespace dctembed {

enum class OovPolicy { skip, zero_vector, error };

struct TokenizerOptions {
  bool lowercase = true;  // ASCII case fold
};

/// Whitespace tokenizer: splits on Unicode whitespace, strips leading and
/// trailing punctuation from each token, optionally lowercases (ASCII).
/// Empty tokens are dropped. Idempotent on its own space-joined output.
std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerOptions& opts = {});

/// Immutable token -> d-dimensional vector map. Vectors are stored as
/// 32-bit floats (the usual distribution format) and widened to doubles
/// when stacked into a SentenceMatrix.
class WordEmbeddingTable {
 public:
  WordEmbeddingTable(std::size_t dim, OovPolicy policy);

  /// Loads the whitespace-separated text format: an optional "count dim"
  /// header line, then one line per word: token followed by dim numbers.
  /// Duplicate tokens keep the first occurrence and are counted.
  static WordEmbeddingTable load(const std::string& path,
                                 std::optional<std::size_t> expected_dim,
                                 OovPolicy policy);

  /// Writes the same text format (with header); floats are printed with
  /// enough digits to round-trip exactly.
  void save(const std::string& path) const;

  /// First insertion wins; returns false (and bumps duplicate_count) on a
  /// repeated token. The vector must have exactly dim() entries.
  bool insert(std::string token, const std::vector<float>& vec);

  std::size_t dim() const noexcept { return dim_; }
  std::size_t size() const noexcept { return tokens_.size(); }
  std::size_t duplicate_count() const noexcept { return duplicates_; }
  OovPolicy oov_policy() const noexcept { return policy_; }
  void set_oov_policy(OovPolicy policy) noexcept { policy_ = policy; }

  /// Pointer to the dim() floats for token, or nullptr if absent.
  const float* find(std::string_view token) const;

  const std::string& token_at(std::size_t index) const { return tokens_[index]; }
  const float* vector_at(std::size_t index) const {
    return values_.data() + index * dim_;
  }

 private:
  std::size_t dim_;
  OovPolicy policy_;
  std::size_t duplicates_ = 0;
  std::vector<std::string> tokens_;  // insertion order
  std::vector<float> values_;        // size() * dim_, row per token
  std::unordered_map<std::string, std::size_t> index_;
};

struct EmbedResult {
  SentenceMatrix matrix;
  std::size_t oov_count = 0;
};

/// Stacks the tokens' vectors into an N×d matrix in token order. OOV
/// handling follows the table's policy: skip drops the row (N shrinks,
/// possibly to 0), zero_vector inserts a zero row, error throws naming
/// the first unknown token.
EmbedResult embed_tokens(const WordEmbeddingTable& table,
                         const std::vector<std::string>& tokens);

}  // namespace dctembed
