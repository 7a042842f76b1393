#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "dct.hpp"

namespace dctembed {

/// N stacked d-dimensional word vectors, row-major. N may be 0.
struct SentenceMatrix {
  std::size_t rows = 0;
  std::size_t dim = 0;
  std::vector<double> values;  // rows * dim

  SentenceMatrix() = default;
  SentenceMatrix(std::size_t rows_, std::size_t dim_)
      : rows(rows_), dim(dim_), values(rows_ * dim_, 0.0) {}

  double& at(std::size_t r, std::size_t c) { return values[r * dim + c]; }
  double at(std::size_t r, std::size_t c) const { return values[r * dim + c]; }
};

enum class PoolingMethod { dct, avg, max, dct_star };

std::string_view method_name(PoolingMethod method);

struct SentenceEmbedding {
  PoolingMethod method = PoolingMethod::avg;
  std::size_t k_count = 0;  // meaningful for dct / dct_star only
  std::vector<double> values;
};

/// Output length of a pooled embedding: k*d for dct, d for avg/max,
/// k for dct_star.
std::size_t embedding_length(PoolingMethod method, std::size_t k_count,
                             std::size_t dim);

/// DCT pooling: each feature column is transformed independently and the
/// first k_count coefficients are kept, concatenated coefficient-major
/// (values[k*d + j] = coefficient k of column j). Sentences shorter than
/// k_count rows are zero-padded so the transform length is exactly k_count;
/// an empty sentence therefore encodes to the all-zero vector.
SentenceEmbedding encode_dct(const DctPlan& plan, const SentenceMatrix& mat,
                             std::size_t k_count);

/// Column-wise arithmetic mean. Column sums run in value-canonical
/// (ascending) order so row permutations give bit-identical output.
SentenceEmbedding encode_avg(const SentenceMatrix& mat);

/// Column-wise maximum.
SentenceEmbedding encode_max(const SentenceMatrix& mat);

/// Word-level transform variant: each row is transformed along the
/// embedding dimension (length-d transform), the first k_count coefficients
/// are kept, and the per-word results are averaged element-wise.
SentenceEmbedding encode_dct_star(const DctPlan& plan, const SentenceMatrix& mat,
                                  std::size_t k_count);

/// Max absolute deviation between the c[0] coefficient block and
/// sqrt(N) * encode_avg(mat); small by the orthogonal scaling identity.
double c0_avg_max_deviation(const DctPlan& plan, const SentenceMatrix& mat);

}  // namespace dctembed
