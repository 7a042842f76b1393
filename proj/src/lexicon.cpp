#include "lexicon.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>

#include "error.hpp"

namespace dctembed {

namespace {

// Decodes one UTF-8 codepoint starting at pos; advances pos. Malformed
// bytes are passed through as single (Latin-1-ish) codepoints rather than
// rejected; the tokenizer must never fail on arbitrary text.
char32_t decode_utf8(std::string_view s, std::size_t& pos) {
  const auto byte = [&](std::size_t i) -> unsigned char {
    return static_cast<unsigned char>(s[i]);
  };
  const unsigned char b0 = byte(pos);
  std::size_t extra = 0;
  char32_t cp = b0;
  if (b0 >= 0xF0) {
    extra = 3;
    cp = b0 & 0x07;
  } else if (b0 >= 0xE0) {
    extra = 2;
    cp = b0 & 0x0F;
  } else if (b0 >= 0xC0) {
    extra = 1;
    cp = b0 & 0x1F;
  }
  if (extra > 0 && pos + extra >= s.size()) {
    // truncated sequence
    ++pos;
    return b0;
  }
  for (std::size_t i = 1; i <= extra; ++i) {
    const unsigned char bi = byte(pos + i);
    if ((bi & 0xC0) != 0x80) {
      ++pos;
      return b0;
    }
    cp = (cp << 6) | (bi & 0x3F);
  }
  pos += extra + 1;
  return cp;
}

bool is_space_cp(char32_t cp) {
  switch (cp) {
    case U' ': case U'\t': case U'\n': case U'\v': case U'\f': case U'\r':
    case 0x0085: case 0x00A0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

bool is_strippable_punct_cp(char32_t cp) {
  if (cp < 0x80) {
    return std::ispunct(static_cast<int>(cp)) != 0;
  }
  switch (cp) {
    case 0x2018: case 0x2019: case 0x201C: case 0x201D:  // curly quotes
    case 0x2013: case 0x2014:                            // en/em dash
    case 0x2026:                                         // ellipsis
    case 0x00AB: case 0x00BB:                            // guillemets
    case 0x00A1: case 0x00BF:                            // inverted !/?
      return true;
    default:
      return false;
  }
}

struct Codepoint {
  char32_t cp;
  std::size_t begin, end;  // byte range in the source
};

std::string finish_token(std::string_view text, const std::vector<Codepoint>& cps,
                         bool lowercase) {
  std::size_t first = 0, last = cps.size();
  while (first < last && is_strippable_punct_cp(cps[first].cp)) ++first;
  while (last > first && is_strippable_punct_cp(cps[last - 1].cp)) --last;
  if (first == last) return {};
  std::string out(text.substr(cps[first].begin, cps[last - 1].end - cps[first].begin));
  if (lowercase) {
    for (char& c : out) {
      c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    }
  }
  return out;
}

/// %.9g round-trips IEEE binary32 exactly.
void append_float(std::string& out, float v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.9g", static_cast<double>(v));
  out += buf;
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text,
                                  const TokenizerOptions& opts) {
  std::vector<std::string> tokens;
  std::vector<Codepoint> current;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t begin = pos;
    const char32_t cp = decode_utf8(text, pos);
    if (is_space_cp(cp)) {
      if (!current.empty()) {
        auto token = finish_token(text, current, opts.lowercase);
        if (!token.empty()) tokens.push_back(std::move(token));
        current.clear();
      }
    } else {
      current.push_back({cp, begin, pos});
    }
  }
  if (!current.empty()) {
    auto token = finish_token(text, current, opts.lowercase);
    if (!token.empty()) tokens.push_back(std::move(token));
  }
  return tokens;
}

WordEmbeddingTable::WordEmbeddingTable(std::size_t dim, OovPolicy policy)
    : dim_(dim), policy_(policy) {
  if (dim == 0) fail(ErrorCode::invalid_argument, "embedding dim must be >= 1");
}

bool WordEmbeddingTable::insert(std::string token, const std::vector<float>& vec) {
  if (token.empty()) fail(ErrorCode::invalid_argument, "token must not be empty");
  if (vec.size() != dim_) {
    fail(ErrorCode::dim_mismatch,
         "vector for '" + token + "' has " + std::to_string(vec.size()) +
             " entries, expected " + std::to_string(dim_));
  }
  for (float v : vec) {
    if (!std::isfinite(v)) {
      fail(ErrorCode::invalid_argument,
           "vector for '" + token + "' contains a non-finite value");
    }
  }
  auto [it, inserted] = index_.try_emplace(std::move(token), tokens_.size());
  if (!inserted) {
    ++duplicates_;
    return false;
  }
  tokens_.push_back(it->first);
  values_.insert(values_.end(), vec.begin(), vec.end());
  return true;
}

const float* WordEmbeddingTable::find(std::string_view token) const {
  const auto it = index_.find(std::string(token));
  if (it == index_.end()) return nullptr;
  return values_.data() + it->second * dim_;
}

namespace {

struct SplitLine {
  std::string_view token;
  std::vector<std::string_view> fields;  // numeric fields
};

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

bool parse_float_field(std::string_view field, float& out) {
  char buf[64];
  if (field.size() >= sizeof(buf)) return false;
  std::memcpy(buf, field.data(), field.size());
  buf[field.size()] = '\0';
  char* end = nullptr;
  out = std::strtof(buf, &end);
  return end == buf + field.size() && std::isfinite(out);
}

bool is_uint_field(std::string_view field) {
  if (field.empty()) return false;
  for (char c : field) {
    if (c < '0' || c > '9') return false;
  }
  return true;
}

}  // namespace

WordEmbeddingTable WordEmbeddingTable::load(const std::string& path,
                                            std::optional<std::size_t> expected_dim,
                                            OovPolicy policy) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::io_error, "cannot open vector file: " + path);

  std::string line;
  std::size_t line_no = 0;
  std::optional<WordEmbeddingTable> table;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto fields = split_ws(line);
    if (fields.empty()) continue;

    // optional header: the first line with exactly two integer fields
    if (!table && line_no == 1 && fields.size() == 2 && is_uint_field(fields[0]) &&
        is_uint_field(fields[1])) {
      const std::size_t dim = std::strtoull(std::string(fields[1]).c_str(), nullptr, 10);
      if (dim == 0) {
        fail(ErrorCode::parse_error, path + ":1: header declares dim 0");
      }
      if (expected_dim && *expected_dim != dim) {
        fail(ErrorCode::dim_mismatch,
             path + ": header dim " + std::to_string(dim) + " does not match expected " +
                 std::to_string(*expected_dim));
      }
      table.emplace(dim, policy);
      continue;
    }

    if (fields.size() < 2) {
      fail(ErrorCode::parse_error,
           path + ":" + std::to_string(line_no) + ": expected a token and at least one value");
    }
    const std::size_t dim_here = fields.size() - 1;
    if (!table) {
      if (expected_dim && *expected_dim != dim_here) {
        fail(ErrorCode::dim_mismatch,
             path + ":" + std::to_string(line_no) + ": vector has " +
                 std::to_string(dim_here) + " entries, expected " +
                 std::to_string(*expected_dim));
      }
      table.emplace(dim_here, policy);
    } else if (dim_here != table->dim()) {
      fail(ErrorCode::parse_error,
           path + ":" + std::to_string(line_no) + ": inconsistent dimensions (" +
               std::to_string(dim_here) + " values, expected " +
               std::to_string(table->dim()) + ")");
    }

    std::vector<float> vec(dim_here);
    for (std::size_t i = 0; i < dim_here; ++i) {
      if (!parse_float_field(fields[i + 1], vec[i])) {
        fail(ErrorCode::parse_error,
             path + ":" + std::to_string(line_no) + ": unparsable number '" +
                 std::string(fields[i + 1]) + "'");
      }
    }
    table->insert(std::string(fields[0]), vec);
  }

  if (!table || table->size() == 0) {
    fail(ErrorCode::empty_input, path + ": no word vectors found");
  }
  return std::move(*table);
}

void WordEmbeddingTable::save(const std::string& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::io_error, "cannot write vector file: " + path);
  std::string buf;
  buf += std::to_string(size());
  buf += ' ';
  buf += std::to_string(dim_);
  buf += '\n';
  out << buf;
  for (std::size_t i = 0; i < size(); ++i) {
    buf.clear();
    buf += tokens_[i];
    const float* row = vector_at(i);
    for (std::size_t j = 0; j < dim_; ++j) {
      buf += ' ';
      append_float(buf, row[j]);
    }
    buf += '\n';
    out << buf;
  }
  if (!out) fail(ErrorCode::io_error, "write failed: " + path);
}

EmbedResult embed_tokens(const WordEmbeddingTable& table,
                         const std::vector<std::string>& tokens) {
  EmbedResult result;
  result.matrix.dim = table.dim();
  result.matrix.values.reserve(tokens.size() * table.dim());

  for (const auto& token : tokens) {
    const float* vec = table.find(token);
    if (vec == nullptr) {
      ++result.oov_count;
      switch (table.oov_policy()) {
        case OovPolicy::skip:
          continue;
        case OovPolicy::zero_vector:
          result.matrix.values.insert(result.matrix.values.end(), table.dim(), 0.0);
          ++result.matrix.rows;
          continue;
        case OovPolicy::error:
          fail(ErrorCode::oov_token, "out-of-vocabulary token: '" + token + "'");
      }
    }
    for (std::size_t j = 0; j < table.dim(); ++j) {
      result.matrix.values.push_back(static_cast<double>(vec[j]));
    }
    ++result.matrix.rows;
  }
  return result;
}

}  // namespace dctembed
