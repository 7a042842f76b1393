#include "encoder.hpp"

#include <algorithm>
#include <cmath>

#include "error.hpp"

namespace dctembed {

namespace {

void check_matrix(const SentenceMatrix& mat) {
  if (mat.values.size() != mat.rows * mat.dim) {
    fail(ErrorCode::invalid_argument, "matrix storage does not match rows*dim");
  }
  for (double v : mat.values) {
    if (!std::isfinite(v)) {
      fail(ErrorCode::invalid_argument, "matrix contains a non-finite value");
    }
  }
}

void require_rows(const SentenceMatrix& mat, std::string_view op) {
  if (mat.rows == 0) {
    fail(ErrorCode::empty_input,
         std::string(op) + " is undefined for an empty sentence");
  }
}

}  // namespace

std::string_view method_name(PoolingMethod method) {
  switch (method) {
    case PoolingMethod::dct: return "dct";
    case PoolingMethod::avg: return "avg";
    case PoolingMethod::max: return "max";
    case PoolingMethod::dct_star: return "dct-star";
  }
  return "?";
}

std::size_t embedding_length(PoolingMethod method, std::size_t k_count,
                             std::size_t dim) {
  switch (method) {
    case PoolingMethod::dct: return k_count * dim;
    case PoolingMethod::avg:
    case PoolingMethod::max: return dim;
    case PoolingMethod::dct_star: return k_count;
  }
  return 0;
}

SentenceEmbedding encode_dct(const DctPlan& plan, const SentenceMatrix& mat,
                             std::size_t k_count) {
  check_matrix(mat);
  if (k_count == 0) fail(ErrorCode::invalid_argument, "k_count must be >= 1");
  if (mat.dim == 0) fail(ErrorCode::invalid_argument, "matrix dim must be >= 1");
  const std::size_t len = std::max(mat.rows, k_count);  // zero-pad short sentences
  if (len > plan.max_len()) {
    fail(ErrorCode::invalid_argument,
         "effective length " + std::to_string(len) + " exceeds plan max_len " +
             std::to_string(plan.max_len()));
  }

  SentenceEmbedding out;
  out.method = PoolingMethod::dct;
  out.k_count = k_count;
  out.values.resize(k_count * mat.dim);

  std::vector<double> column(len, 0.0);
  std::vector<double> coeffs(k_count);
  for (std::size_t j = 0; j < mat.dim; ++j) {
    for (std::size_t r = 0; r < mat.rows; ++r) column[r] = mat.at(r, j);
    for (std::size_t r = mat.rows; r < len; ++r) column[r] = 0.0;
    dct_truncated_into(plan, column.data(), len, k_count, coeffs.data());
    for (std::size_t k = 0; k < k_count; ++k) {
      out.values[k * mat.dim + j] = coeffs[k];
    }
  }
  return out;
}

SentenceEmbedding encode_avg(const SentenceMatrix& mat) {
  check_matrix(mat);
  require_rows(mat, "avg pooling");

  SentenceEmbedding out;
  out.method = PoolingMethod::avg;
  out.values.resize(mat.dim);

  std::vector<double> column(mat.rows);
  for (std::size_t j = 0; j < mat.dim; ++j) {
    for (std::size_t r = 0; r < mat.rows; ++r) column[r] = mat.at(r, j);
    // canonical summation order: equal row multisets sum bit-identically
    std::sort(column.begin(), column.end());
    double sum = 0.0;
    for (double v : column) sum += v;
    out.values[j] = sum / static_cast<double>(mat.rows);
  }
  return out;
}

SentenceEmbedding encode_max(const SentenceMatrix& mat) {
  check_matrix(mat);
  require_rows(mat, "max pooling");

  SentenceEmbedding out;
  out.method = PoolingMethod::max;
  out.values.resize(mat.dim);
  for (std::size_t j = 0; j < mat.dim; ++j) {
    double best = mat.at(0, j);
    for (std::size_t r = 1; r < mat.rows; ++r) {
      best = std::max(best, mat.at(r, j));
    }
    out.values[j] = best;
  }
  return out;
}

SentenceEmbedding encode_dct_star(const DctPlan& plan, const SentenceMatrix& mat,
                                  std::size_t k_count) {
  check_matrix(mat);
  require_rows(mat, "word-level dct pooling");
  if (k_count == 0) fail(ErrorCode::invalid_argument, "k_count must be >= 1");
  if (k_count > mat.dim) {
    fail(ErrorCode::invalid_argument,
         "k_count " + std::to_string(k_count) + " exceeds embedding dim " +
             std::to_string(mat.dim));
  }
  if (mat.dim > plan.max_len()) {
    fail(ErrorCode::invalid_argument,
         "embedding dim " + std::to_string(mat.dim) + " exceeds plan max_len " +
             std::to_string(plan.max_len()));
  }

  SentenceEmbedding out;
  out.method = PoolingMethod::dct_star;
  out.k_count = k_count;
  out.values.assign(k_count, 0.0);

  std::vector<double> coeffs(k_count);
  for (std::size_t r = 0; r < mat.rows; ++r) {
    dct_truncated_into(plan, mat.values.data() + r * mat.dim, mat.dim, k_count,
                       coeffs.data());
    for (std::size_t k = 0; k < k_count; ++k) out.values[k] += coeffs[k];
  }
  for (double& v : out.values) v /= static_cast<double>(mat.rows);
  return out;
}

double c0_avg_max_deviation(const DctPlan& plan, const SentenceMatrix& mat) {
  require_rows(mat, "c0/avg comparison");
  const SentenceEmbedding c = encode_dct(plan, mat, 1);
  const SentenceEmbedding a = encode_avg(mat);
  const double root_n = std::sqrt(static_cast<double>(mat.rows));
  double worst = 0.0;
  for (std::size_t j = 0; j < mat.dim; ++j) {
    worst = std::max(worst, std::abs(c.values[j] - root_n * a.values[j]));
  }
  return worst;
}

}  // namespace dctembed
