#pragma once

#include <vector>

#include "bcqp/matrix.hpp"

namespace bcqp {

// A sparsity-preserving 2x2 pivot candidate [[h_ll, a_rl],[a_rl, 0]] pairing
// variable column l with constraint row r of the same block. Indices are
// original KKT indices.
struct StructuredCandidate {
  int col = -1;        // variable column l
  int row = -1;        // constraint row r
  double h_ll = 0.0;   // current diagonal value at (l,l)
  double a_rl = 0.0;   // current value at (r,l)
  double ratio = 0.0;  // |h_ll| / |a_rl|
};

// Original row/column indices still available for structured pivoting,
// grouped per block and kept in ascending order.
struct BlockAvailability {
  std::vector<std::vector<int>> rows;
  std::vector<std::vector<int>> cols;
};

// Infinity-norm condition number of [[h_ll, a_rl],[a_rl, 0]] in closed form:
// (1 + |h_ll|/|a_rl|)^2, or +inf when a_rl = 0.
double cond_inf_zero_corner(double h_ll, double a_rl);

// Picks the minimum-condition candidate within one block. `position_of` maps
// original KKT indices to current positions in `work`. Equal ratios break
// toward the smallest (row, col) original index pair. Throws
// StructurallySingularError when every candidate has a_rl = 0.
StructuredCandidate select_structured_pivot(const Matrix& work,
                                            const std::vector<int>& position_of,
                                            const BlockAvailability& avail,
                                            int block);

// Bounded Bunch-Kaufman pivot choice on the trailing window of a working
// matrix. `first`/`second` are absolute positions in `work`.
struct BbkPivot {
  int dim = 1;
  int first = -1;
  int second = -1;
};

// Growth-bound parameter alpha = (1 + sqrt(17)) / 8.
double bbk_alpha();

// Applies the BBK rule to the symmetric window work[offset.., offset..].
// Throws SingularMatrixError when the probed column is entirely zero.
BbkPivot bbk_select(const Matrix& work, int offset);

}  // namespace bcqp
