#include "dct.hpp"

#include <cmath>

#include "error.hpp"

namespace dctembed {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::shared_ptr<const std::vector<double>> build_table(std::size_t n) {
  auto table = std::make_shared<std::vector<double>>(n * n);
  const double s0 = std::sqrt(1.0 / static_cast<double>(n));
  const double sk = std::sqrt(2.0 / static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const double scale = (k == 0) ? s0 : sk;
    for (std::size_t i = 0; i < n; ++i) {
      const double angle = kPi / static_cast<double>(n) *
                           (static_cast<double>(i) + 0.5) * static_cast<double>(k);
      (*table)[k * n + i] = scale * std::cos(angle);
    }
  }
  return table;
}

void check_length(const DctPlan& plan, std::size_t n) {
  if (n == 0) fail(ErrorCode::empty_input, "transform input must not be empty");
  if (n > plan.max_len()) {
    fail(ErrorCode::invalid_argument,
         "sequence length " + std::to_string(n) + " exceeds plan max_len " +
             std::to_string(plan.max_len()));
  }
}

void check_finite(std::span<const double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) {
      fail(ErrorCode::invalid_argument, "sequence contains a non-finite value");
    }
  }
}

}  // namespace

DctPlan::DctPlan(std::size_t max_len) : max_len_(max_len) {
  if (max_len == 0) fail(ErrorCode::invalid_argument, "plan max_len must be >= 1");
  tables_.resize(max_len + 1);
}

const double* DctPlan::basis(std::size_t n) const {
  check_length(*this, n);
  std::lock_guard<std::mutex> lock(mu_);
  if (!tables_[n]) tables_[n] = build_table(n);
  return tables_[n]->data();
}

void dct_truncated_into(const DctPlan& plan, const double* seq, std::size_t n,
                        std::size_t k_count, double* out) {
  const double* table = plan.basis(n);
  for (std::size_t k = 0; k < k_count; ++k) {
    const double* row = table + k * n;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      sum += row[i] * seq[i];
    }
    out[k] = sum;
  }
}

std::vector<double> dct_truncated(const DctPlan& plan, std::span<const double> seq,
                                  std::size_t k_count) {
  check_length(plan, seq.size());
  check_finite(seq);
  if (k_count == 0) fail(ErrorCode::invalid_argument, "k_count must be >= 1");
  if (k_count > seq.size()) {
    fail(ErrorCode::invalid_argument,
         "k_count " + std::to_string(k_count) + " exceeds sequence length " +
             std::to_string(seq.size()));
  }
  std::vector<double> out(k_count);
  dct_truncated_into(plan, seq.data(), seq.size(), k_count, out.data());
  return out;
}

std::vector<double> dct_forward(const DctPlan& plan, std::span<const double> seq) {
  return dct_truncated(plan, seq, seq.size());
}

std::vector<double> dct_inverse(const DctPlan& plan, std::span<const double> coeffs) {
  check_length(plan, coeffs.size());
  check_finite(coeffs);
  const std::size_t n = coeffs.size();
  const double* table = plan.basis(n);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      sum += table[k * n + i] * coeffs[k];
    }
    out[i] = sum;
  }
  return out;
}

}  // namespace dctembed
