#include "bcqp/pivot_select.hpp"

#include <cmath>
#include <limits>

#include "bcqp/errors.hpp"

namespace bcqp {

double cond_inf_zero_corner(double h_ll, double a_rl) {
  if (a_rl == 0.0) return std::numeric_limits<double>::infinity();
  const double t = 1.0 + std::abs(h_ll) / std::abs(a_rl);
  return t * t;
}

StructuredCandidate select_structured_pivot(const Matrix& work,
                                            const std::vector<int>& position_of,
                                            const BlockAvailability& avail,
                                            int block) {
  StructuredCandidate best;
  bool found = false;

  // Ranking by condition number reduces to ranking by |h_ll|/|a_rl|, so per
  // column only the row with the largest |a_rl| needs to be considered.
  for (int col : avail.cols[block]) {
    const int pc = position_of[col];
    int best_row = -1;
    double best_mag = 0.0;
    for (int row : avail.rows[block]) {
      const double mag = std::abs(work(position_of[row], pc));
      if (mag > best_mag) {
        best_mag = mag;
        best_row = row;
      }
    }
    if (best_row < 0) continue;  // column has no admissible row

    const double h = work(pc, pc);
    const double ratio = std::abs(h) / best_mag;
    if (!found || ratio < best.ratio ||
        (ratio == best.ratio &&
         (best_row < best.row || (best_row == best.row && col < best.col)))) {
      best.col = col;
      best.row = best_row;
      best.h_ll = h;
      best.a_rl = work(position_of[best_row], pc);
      best.ratio = ratio;
      found = true;
    }
  }

  if (!found)
    throw StructurallySingularError(
        "no structured pivot candidate with nonzero constraint entry in block " +
        std::to_string(block + 1));
  return best;
}

double bbk_alpha() { return (1.0 + std::sqrt(17.0)) / 8.0; }

namespace {

// Largest off-diagonal magnitude in column `col` of the window, and the
// first (lowest) position attaining it.
struct ColumnMax {
  double gamma = 0.0;
  int row = -1;
};

ColumnMax column_max(const Matrix& work, int offset, int col) {
  ColumnMax cm;
  const int s = work.rows();
  for (int i = offset; i < s; ++i) {
    if (i == col) continue;
    const double mag = std::abs(work(i, col));
    if (mag > cm.gamma) {
      cm.gamma = mag;
      cm.row = i;
    }
  }
  return cm;
}

}  // namespace

BbkPivot bbk_select(const Matrix& work, int offset) {
  const double alpha = bbk_alpha();
  const ColumnMax first = column_max(work, offset, offset);

  if (first.gamma == 0.0) {
    if (work(offset, offset) == 0.0)
      throw SingularMatrixError("pivot column is entirely zero");
    return {1, offset, -1};
  }
  if (std::abs(work(offset, offset)) >= alpha * first.gamma)
    return {1, offset, -1};

  int l = offset;
  double gamma_l = first.gamma;
  for (;;) {
    const int r = column_max(work, offset, l).row;
    const ColumnMax in_r = column_max(work, offset, r);
    const double gamma_r = in_r.gamma;
    if (std::abs(work(r, r)) >= alpha * gamma_r) return {1, r, -1};
    // Exact equality: gamma strictly increases otherwise, and equality is
    // reached at the column pair realizing the maximum.
    if (gamma_l == gamma_r) return {2, l, r};
    l = r;
    gamma_l = gamma_r;
  }
}

}  // namespace bcqp
