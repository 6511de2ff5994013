#pragma once

#include <cstdint>
#include <vector>

#include "bcqp/block_qp.hpp"
#include "bcqp/factor.hpp"
#include "bcqp/matrix.hpp"

namespace bcqp {

// Symmetric boolean nonzero pattern (true = structurally nonzero).
class BoolPattern {
 public:
  BoolPattern() = default;
  explicit BoolPattern(int size) : size_(size), cells_(static_cast<std::size_t>(size) * size, 0) {}

  static BoolPattern of(const Matrix& m);

  int size() const { return size_; }
  bool at(int i, int j) const { return cells_[static_cast<std::size_t>(i) * size_ + j] != 0; }
  void set(int i, int j, bool v) { cells_[static_cast<std::size_t>(i) * size_ + j] = v ? 1 : 0; }

 private:
  int size_ = 0;
  std::vector<std::uint8_t> cells_;
};

// Result of replaying a pivot sequence with boolean algebra only.
struct PatternResult {
  BoolPattern lower;                     // predicted pattern of L (unit diagonal set)
  std::vector<long long> fill_per_step;  // lower-triangle fill positions per pivot

  long long nnz() const;
  long long total_fill() const;
  long long structured_fill(const std::vector<PivotRecord>& log) const;
};

// Replays the exact pivot sequence of a factorization on the boolean pattern
// of the original matrix. Accidental numeric cancellation is ignored, which
// diverges from the engine only on measure-zero inputs.
PatternResult simulate_pattern(const BoolPattern& pattern,
                               const std::vector<PivotRecord>& pivot_log);

// Closed-form nnz(L) for dense-Hessian problems with generic constraint
// entries; exact for any block elimination order.
long long predict_nnz_dense_h(int n, const std::vector<BlockDims>& blocks);

}  // namespace bcqp
