#include "bcqp/pattern.hpp"

#include <algorithm>

#include "bcqp/errors.hpp"

namespace bcqp {

BoolPattern BoolPattern::of(const Matrix& m) {
  BoolPattern p(m.rows());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) p.set(i, j, m(i, j) != 0.0);
  return p;
}

long long PatternResult::nnz() const {
  long long count = 0;
  for (int i = 0; i < lower.size(); ++i)
    for (int j = 0; j <= i; ++j)
      if (lower.at(i, j)) ++count;
  return count;
}

long long PatternResult::total_fill() const {
  long long total = 0;
  for (long long f : fill_per_step) total += f;
  return total;
}

long long PatternResult::structured_fill(const std::vector<PivotRecord>& log) const {
  long long total = 0;
  for (std::size_t i = 0; i < log.size() && i < fill_per_step.size(); ++i)
    if (log[i].phase == PivotPhase::Structured) total += fill_per_step[i];
  return total;
}

PatternResult simulate_pattern(const BoolPattern& pattern,
                               const std::vector<PivotRecord>& pivot_log) {
  const int s = pattern.size();
  BoolPattern work = pattern;
  PatternResult out;
  out.lower = BoolPattern(s);
  for (int i = 0; i < s; ++i) out.lower.set(i, i, true);

  std::vector<int> pos(s), position_of(s);
  for (int i = 0; i < s; ++i) pos[i] = position_of[i] = i;
  int eliminated = 0;

  auto swap_positions = [&](int a, int b) {
    if (a == b) return;
    for (int j = 0; j < s; ++j) {
      bool tmp = work.at(a, j);
      work.set(a, j, work.at(b, j));
      work.set(b, j, tmp);
    }
    for (int i = 0; i < s; ++i) {
      bool tmp = work.at(i, a);
      work.set(i, a, work.at(i, b));
      work.set(i, b, tmp);
    }
    for (int j = 0; j < eliminated; ++j) {
      bool tmp = out.lower.at(a, j);
      out.lower.set(a, j, out.lower.at(b, j));
      out.lower.set(b, j, tmp);
    }
    std::swap(pos[a], pos[b]);
    position_of[pos[a]] = a;
    position_of[pos[b]] = b;
  };

  for (const PivotRecord& rec : pivot_log) {
    const int q = eliminated;
    if (rec.index1 < 0 || rec.index1 >= s ||
        (rec.dim == 2 && (rec.index2 < 0 || rec.index2 >= s)))
      throw InvariantError("pivot log index out of range");
    swap_positions(q, position_of[rec.index1]);
    if (rec.dim == 2) swap_positions(q + 1, position_of[rec.index2]);

    long long fill = 0;
    if (rec.dim == 1) {
      // L column = pattern of C; update(i,j) = C(i) & C(j).
      for (int i = q + 1; i < s; ++i) out.lower.set(i, q, work.at(i, q));
      for (int i = q + 1; i < s; ++i) {
        if (!work.at(i, q)) continue;
        for (int j = q + 1; j <= i; ++j) {
          if (!work.at(j, q) || work.at(i, j)) continue;
          ++fill;
          work.set(i, j, true);
          work.set(j, i, true);
        }
      }
    } else {
      // B^-1 = (1/det) [[b22, -b21], [-b21, b11]]; a zero entry of the pivot
      // block gives an exactly zero entry of the inverse.
      const bool inv11 = rec.b22 != 0.0;
      const bool inv21 = rec.b21 != 0.0;
      const bool inv22 = rec.b11 != 0.0;
      for (int i = q + 2; i < s; ++i) {
        const bool c1 = work.at(i, q);
        const bool c2 = work.at(i, q + 1);
        out.lower.set(i, q, (c1 && inv11) || (c2 && inv21));
        out.lower.set(i, q + 1, (c1 && inv21) || (c2 && inv22));
      }
      for (int i = q + 2; i < s; ++i) {
        const bool l1 = out.lower.at(i, q);
        const bool l2 = out.lower.at(i, q + 1);
        if (!l1 && !l2) continue;
        for (int j = q + 2; j <= i; ++j) {
          if (work.at(i, j)) continue;
          const bool update =
              (l1 && work.at(j, q)) || (l2 && work.at(j, q + 1));
          if (!update) continue;
          ++fill;
          work.set(i, j, true);
          work.set(j, i, true);
        }
      }
    }
    out.fill_per_step.push_back(fill);
    eliminated += rec.dim;
  }

  return out;
}

long long predict_nnz_dense_h(int n, const std::vector<BlockDims>& blocks) {
  long long m = 0;
  for (const BlockDims& b : blocks) {
    if (b.m_i <= 0 || b.m_i >= b.n_i)
      throw InvariantError("prediction requires 0 < m_i < n_i in every block");
    m += b.m_i;
  }
  if (m >= n) throw InvariantError("prediction requires m < n");

  const long long s = n + m;
  const long long d = n - m;
  // Unit diagonal, dense trailing factor, and the three structural
  // contributions of each structured pivot pair.
  long long total = s + d * (d - 1) / 2 + m * n - m * (m + 1) / 2;
  for (const BlockDims& b : blocks) {
    const long long mi = b.m_i, ni = b.n_i;
    total += mi * ni - mi * (mi + 1) / 2;  // remaining block variables
    total += mi * (mi - 1) / 2;           // remaining block constraint rows
  }
  return total;
}

}  // namespace bcqp
