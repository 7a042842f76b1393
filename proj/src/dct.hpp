#pragma once

#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

namespace dctembed {

/// Precomputed orthogonal DCT-II basis tables.
///
/// For a sequence length n the table is the n×n row-major matrix
///   B[k][i] = s(k) * cos(pi/n * (i + 1/2) * k)
/// with s(0) = sqrt(1/n) and s(k>=1) = sqrt(2/n), which makes B orthogonal:
/// the forward transform is c = B v and the inverse is v = B^T c.
///
/// Tables are built lazily, one per requested length, and memoized; a
/// constructed plan is immutable from the caller's point of view and safe
/// to share across threads.
class DctPlan {
 public:
  /// max_len >= 1 is the largest supported sequence length.
  explicit DctPlan(std::size_t max_len);

  std::size_t max_len() const noexcept { return max_len_; }

  /// Basis table for length n (1 <= n <= max_len), row-major n*n.
  /// The returned pointer stays valid for the lifetime of the plan.
  const double* basis(std::size_t n) const;

 private:
  std::size_t max_len_;
  mutable std::mutex mu_;
  // index by length; slot 0 unused
  mutable std::vector<std::shared_ptr<const std::vector<double>>> tables_;
};

/// All n coefficients of the orthogonal DCT-II of seq.
std::vector<double> dct_forward(const DctPlan& plan, std::span<const double> seq);

/// Inverse transform; dct_inverse(dct_forward(v)) == v up to round-off.
std::vector<double> dct_inverse(const DctPlan& plan, std::span<const double> coeffs);

/// First k_count coefficients only (1 <= k_count <= seq length); bit-identical
/// to the prefix of dct_forward since both share one kernel and summation order.
std::vector<double> dct_truncated(const DctPlan& plan, std::span<const double> seq,
                                  std::size_t k_count);

/// Unchecked hot-path kernel: writes the first k_count coefficients of
/// seq[0..n) to out. Summation order is ascending index, always.
void dct_truncated_into(const DctPlan& plan, const double* seq, std::size_t n,
                        std::size_t k_count, double* out);

}  // namespace dctembed
