#include "probing.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "error.hpp"
#include "rng.hpp"

namespace dctembed {

namespace {

/// Stratified 80/10/10 assignment over groups of examples. Each entry of
/// `groups` is a list of example indices that must share a split (a single
/// example, or a bshift pair). Group order is shuffled per stratum so the
/// split is deterministic in the seed but not in generation order.
void assign_splits(std::vector<ProbingExample>& examples,
                   std::vector<std::vector<std::size_t>> groups, Rng& rng) {
  rng.shuffle(groups);
  const std::size_t n = groups.size();
  const std::size_t n_train = (n * 8) / 10;
  const std::size_t n_dev = n / 10;
  for (std::size_t g = 0; g < n; ++g) {
    Split split = Split::test;
    if (g < n_train) {
      split = Split::train;
    } else if (g < n_train + n_dev) {
      split = Split::dev;
    }
    for (std::size_t idx : groups[g]) examples[idx].split = split;
  }
}

}  // namespace

std::string_view split_name(Split split) {
  switch (split) {
    case Split::train: return "tr";
    case Split::dev: return "va";
    case Split::test: return "te";
  }
  return "?";
}

std::vector<std::size_t> ProbingDataset::indices_of(Split split) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < examples.size(); ++i) {
    if (examples[i].split == split) out.push_back(i);
  }
  return out;
}

std::string synthetic_token(std::size_t id) { return "w" + std::to_string(id); }

std::size_t order_band_of(std::size_t token_id, std::size_t vocab_size,
                          std::size_t bands) {
  return token_id * bands / vocab_size;
}

namespace {

// half-open token-id range of band i; non-empty whenever vocab_size >= bands
std::pair<std::size_t, std::size_t> band_range(std::size_t band,
                                               std::size_t vocab_size,
                                               std::size_t bands) {
  const auto ceil_div = [](std::size_t a, std::size_t b) { return (a + b - 1) / b; };
  return {ceil_div(band * vocab_size, bands),
          ceil_div((band + 1) * vocab_size, bands)};
}

}  // namespace

ProbingDataset gen_sentlen(std::size_t vocab_size,
                           const std::vector<LengthBucket>& buckets,
                           std::size_t per_bucket, std::uint64_t seed) {
  if (vocab_size < 2) fail(ErrorCode::invalid_argument, "vocab_size must be >= 2");
  if (buckets.empty()) fail(ErrorCode::invalid_argument, "need at least one length bucket");
  if (per_bucket == 0) fail(ErrorCode::invalid_argument, "per_bucket must be >= 1");
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    if (buckets[b].min_len < 1 || buckets[b].min_len > buckets[b].max_len) {
      fail(ErrorCode::invalid_argument,
           "bucket " + std::to_string(b) + " has an empty or invalid length range");
    }
    for (std::size_t o = 0; o < b; ++o) {
      if (buckets[b].min_len <= buckets[o].max_len &&
          buckets[o].min_len <= buckets[b].max_len) {
        fail(ErrorCode::invalid_argument,
             "buckets " + std::to_string(o) + " and " + std::to_string(b) + " overlap");
      }
    }
  }

  Rng rng(seed);
  ProbingDataset ds;
  ds.task = "sentlen";
  ds.label_count = buckets.size();
  for (std::size_t b = 0; b < buckets.size(); ++b) {
    const std::size_t first = ds.examples.size();
    for (std::size_t i = 0; i < per_bucket; ++i) {
      ProbingExample ex;
      ex.label = static_cast<int>(b);
      const std::size_t len =
          buckets[b].min_len + rng.below(buckets[b].max_len - buckets[b].min_len + 1);
      ex.tokens.reserve(len);
      for (std::size_t t = 0; t < len; ++t) {
        ex.tokens.push_back(synthetic_token(rng.below(vocab_size)));
      }
      ds.examples.push_back(std::move(ex));
    }
    std::vector<std::vector<std::size_t>> groups(per_bucket);
    for (std::size_t i = 0; i < per_bucket; ++i) groups[i] = {first + i};
    assign_splits(ds.examples, std::move(groups), rng);
  }
  return ds;
}

ProbingDataset gen_wc(std::size_t vocab_size, std::size_t target_words,
                      std::size_t per_word, std::size_t sent_len,
                      std::uint64_t seed) {
  if (sent_len < 1) fail(ErrorCode::invalid_argument, "sent_len must be >= 1");
  if (target_words < 1) fail(ErrorCode::invalid_argument, "target_words must be >= 1");
  if (per_word == 0) fail(ErrorCode::invalid_argument, "per_word must be >= 1");
  if (target_words > vocab_size) {
    fail(ErrorCode::invalid_argument, "target_words exceeds vocab_size");
  }
  if (sent_len > 1 && target_words == vocab_size) {
    fail(ErrorCode::invalid_argument,
         "need non-target filler tokens: target_words must be < vocab_size");
  }

  Rng rng(seed);
  ProbingDataset ds;
  ds.task = "wc";
  ds.label_count = target_words;
  const std::size_t fillers = vocab_size - target_words;
  for (std::size_t w = 0; w < target_words; ++w) {
    const std::size_t first = ds.examples.size();
    for (std::size_t i = 0; i < per_word; ++i) {
      ProbingExample ex;
      ex.label = static_cast<int>(w);
      ex.tokens.resize(sent_len);
      const std::size_t target_pos = rng.below(sent_len);
      for (std::size_t t = 0; t < sent_len; ++t) {
        if (t == target_pos) {
          ex.tokens[t] = synthetic_token(w);
        } else {
          ex.tokens[t] = synthetic_token(target_words + rng.below(fillers));
        }
      }
      ds.examples.push_back(std::move(ex));
    }
    std::vector<std::vector<std::size_t>> groups(per_word);
    for (std::size_t i = 0; i < per_word; ++i) groups[i] = {first + i};
    assign_splits(ds.examples, std::move(groups), rng);
  }
  return ds;
}

ProbingDataset gen_bshift(std::size_t base_sentences, std::size_t sent_len,
                          std::size_t vocab_size, std::uint64_t seed) {
  if (sent_len < 3) fail(ErrorCode::invalid_argument, "sent_len must be >= 3");
  if (base_sentences == 0) fail(ErrorCode::invalid_argument, "base_sentences must be >= 1");
  if (vocab_size < sent_len) {
    fail(ErrorCode::invalid_argument,
         "vocab_size must be >= sent_len so every positional band is non-empty");
  }

  Rng rng(seed);
  ProbingDataset ds;
  ds.task = "bshift";
  ds.label_count = 2;
  ds.examples.reserve(2 * base_sentences);
  std::vector<std::vector<std::size_t>> pairs;
  pairs.reserve(base_sentences);

  for (std::size_t s = 0; s < base_sentences; ++s) {
    // position i draws from vocabulary band i; adjacent bands are disjoint,
    // so any adjacent pair is non-identical by construction
    std::vector<std::size_t> ids(sent_len);
    for (std::size_t i = 0; i < sent_len; ++i) {
      const auto [lo, hi] = band_range(i, vocab_size, sent_len);
      ids[i] = lo + rng.below(hi - lo);
    }
    const std::size_t swap_at = rng.below(sent_len - 1);

    ProbingExample orig;
    orig.label = 0;
    for (std::size_t id : ids) orig.tokens.push_back(synthetic_token(id));

    std::swap(ids[swap_at], ids[swap_at + 1]);
    ProbingExample swapped;
    swapped.label = 1;
    for (std::size_t id : ids) swapped.tokens.push_back(synthetic_token(id));

    pairs.push_back({ds.examples.size(), ds.examples.size() + 1});
    ds.examples.push_back(std::move(orig));
    ds.examples.push_back(std::move(swapped));
  }
  assign_splits(ds.examples, std::move(pairs), rng);
  return ds;
}

void save_dataset_tsv(const ProbingDataset& dataset, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io_error, "cannot write dataset file: " + path);
  for (const auto& ex : dataset.examples) {
    out << split_name(ex.split) << '\t' << ex.label << '\t';
    for (std::size_t t = 0; t < ex.tokens.size(); ++t) {
      if (t > 0) out << ' ';
      out << ex.tokens[t];
    }
    out << '\n';
  }
  if (!out) fail(ErrorCode::io_error, "write failed: " + path);
}

ProbingDataset load_dataset_tsv(const std::string& path, std::string task_name) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot open dataset file: " + path);

  ProbingDataset ds;
  ds.task = std::move(task_name);
  std::string line;
  std::size_t line_no = 0;
  int max_label = -1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t tab1 = line.find('\t');
    const std::size_t tab2 = (tab1 == std::string::npos) ? std::string::npos
                                                         : line.find('\t', tab1 + 1);
    if (tab2 == std::string::npos) {
      fail(ErrorCode::parse_error,
           path + ":" + std::to_string(line_no) + ": expected 3 tab-separated columns");
    }
    ProbingExample ex;
    const std::string split_field = line.substr(0, tab1);
    if (split_field == "tr") {
      ex.split = Split::train;
    } else if (split_field == "va") {
      ex.split = Split::dev;
    } else if (split_field == "te") {
      ex.split = Split::test;
    } else {
      fail(ErrorCode::parse_error,
           path + ":" + std::to_string(line_no) + ": unknown split '" + split_field + "'");
    }
    try {
      std::size_t used = 0;
      const std::string label_field = line.substr(tab1 + 1, tab2 - tab1 - 1);
      ex.label = std::stoi(label_field, &used);
      if (used != label_field.size() || ex.label < 0) throw std::invalid_argument("");
    } catch (const std::exception&) {
      fail(ErrorCode::parse_error,
           path + ":" + std::to_string(line_no) + ": invalid label");
    }
    max_label = std::max(max_label, ex.label);

    const std::string sentence = line.substr(tab2 + 1);
    std::size_t i = 0;
    while (i < sentence.size()) {
      while (i < sentence.size() && sentence[i] == ' ') ++i;
      std::size_t start = i;
      while (i < sentence.size() && sentence[i] != ' ') ++i;
      if (i > start) ex.tokens.push_back(sentence.substr(start, i - start));
    }
    ds.examples.push_back(std::move(ex));
  }
  if (ds.examples.empty()) {
    fail(ErrorCode::empty_input, path + ": dataset is empty");
  }
  ds.label_count = static_cast<std::size_t>(max_label + 1);
  return ds;
}

WordEmbeddingTable make_synthetic_table(const SyntheticVectorConfig& config) {
  if (config.vocab_size < 2) fail(ErrorCode::invalid_argument, "vocab_size must be >= 2");
  if (config.dim == 0) fail(ErrorCode::invalid_argument, "dim must be >= 1");
  if (config.order_bands == 0) fail(ErrorCode::invalid_argument, "order_bands must be >= 1");

  Rng rng(config.seed);
  const auto unit_direction = [&]() {
    std::vector<double> v(config.dim);
    double norm = 0.0;
    for (double& x : v) {
      x = rng.gaussian();
      norm += x * x;
    }
    norm = std::sqrt(norm);
    if (norm == 0.0) v[0] = norm = 1.0;
    for (double& x : v) x /= norm;
    return v;
  };

  const std::vector<double> offset = unit_direction();
  std::vector<std::vector<double>> band_dirs(config.order_bands);
  for (auto& dir : band_dirs) dir = unit_direction();

  WordEmbeddingTable table(config.dim, OovPolicy::skip);
  std::vector<float> vec(config.dim);
  for (std::size_t t = 0; t < config.vocab_size; ++t) {
    const std::size_t band = order_band_of(t, config.vocab_size, config.order_bands);
    for (std::size_t j = 0; j < config.dim; ++j) {
      const double value = rng.gaussian() + offset[j] +
                           config.order_strength * band_dirs[band][j];
      vec[j] = static_cast<float>(value);
    }
    table.insert(synthetic_token(t), vec);
  }
  return table;
}

}  // namespace dctembed
