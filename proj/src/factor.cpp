#include "bcqp/factor.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "bcqp/errors.hpp"

namespace bcqp {

long long Factorization::structured_fill() const {
  long long total = 0;
  for (std::size_t i = 0; i < pivot_log.size(); ++i)
    if (pivot_log[i].phase == PivotPhase::Structured) total += fill_per_step[i];
  return total;
}

EliminationState make_state(const KktMatrix& kkt) {
  EliminationState st;
  st.work = kkt.entries;
  const int s = kkt.size();
  st.pos.resize(s);
  st.position_of.resize(s);
  for (int i = 0; i < s; ++i) st.pos[i] = st.position_of[i] = i;

  const BlockLayout& layout = kkt.layout;
  st.avail.rows.resize(layout.block_count());
  st.avail.cols.resize(layout.block_count());
  for (int b = 0; b < layout.block_count(); ++b) {
    for (int r = layout.rows[b].begin; r < layout.rows[b].end; ++r)
      st.avail.rows[b].push_back(r);
    for (int c = layout.cols[b].begin; c < layout.cols[b].end; ++c)
      st.avail.cols[b].push_back(c);
    st.avail_blocks.push_back(b);
  }
  return st;
}

namespace {

Factorization make_factorization(int s) {
  Factorization f;
  f.size = s;
  f.perm.resize(s);
  for (int i = 0; i < s; ++i) f.perm[i] = i;
  f.unit_lower = Matrix::identity(s);
  return f;
}

// Symmetric swap of current positions a and b, including the already
// computed multiplier rows of L.
void swap_positions(EliminationState& st, Factorization& f, int a, int b) {
  if (a == b) return;
  const int s = st.work.rows();
  for (int j = 0; j < s; ++j) std::swap(st.work(a, j), st.work(b, j));
  for (int i = 0; i < s; ++i) std::swap(st.work(i, a), st.work(i, b));
  for (int j = 0; j < st.eliminated; ++j)
    std::swap(f.unit_lower(a, j), f.unit_lower(b, j));
  std::swap(st.pos[a], st.pos[b]);
  st.position_of[st.pos[a]] = a;
  st.position_of[st.pos[b]] = b;
}

}  // namespace

long long eliminate_once(EliminationState& st, Factorization& f,
                         PivotPhase phase, int dim, int pos1, int pos2,
                         double ratio) {
  const int q = st.eliminated;
  const int s = st.work.rows();

  swap_positions(st, f, q, pos1);
  if (dim == 2) {
    if (pos2 == q) pos2 = pos1;
    swap_positions(st, f, q + 1, pos2);
  }

  Matrix& w = st.work;
  Matrix& lower = f.unit_lower;
  long long fill = 0;
  DiagBlock block;
  block.dim = dim;

  if (dim == 1) {
    const double b11 = w(q, q);
    if (b11 == 0.0) throw SingularPivotError("1x1 pivot is zero");
    block.b11 = b11;

    for (int i = q + 1; i < s; ++i) {
      const double c = w(i, q);
      const double mult = c == 0.0 ? 0.0 : c / b11;
      lower(i, q) = mult;
      if (phase == PivotPhase::Dense)
        f.dense_growth = std::max(f.dense_growth, std::abs(mult));
    }
    for (int i = q + 1; i < s; ++i) {
      const double li = lower(i, q);
      if (li == 0.0) continue;
      for (int j = q + 1; j <= i; ++j) {
        const double cj = w(j, q);
        if (cj == 0.0) continue;
        double& target = w(i, j);
        if (target == 0.0) ++fill;
        target -= li * cj;
        w(j, i) = target;
      }
    }
  } else {
    const double b11 = w(q, q);
    const double b21 = w(q + 1, q);
    const double b22 = w(q + 1, q + 1);
    if (phase == PivotPhase::Structured && b22 != 0.0)
      throw InvariantError("structured pivot corner is not exactly zero");
    const double det = b11 * b22 - b21 * b21;
    if (det == 0.0) throw SingularPivotError("2x2 pivot block is singular");
    block.b11 = b11;
    block.b21 = b21;
    block.b22 = b22;
    const double i11 = b22 / det;
    const double i21 = -b21 / det;
    const double i22 = b11 / det;

    for (int i = q + 2; i < s; ++i) {
      const double c1 = w(i, q);
      const double c2 = w(i, q + 1);
      const double l1 = c1 * i11 + c2 * i21;
      const double l2 = c1 * i21 + c2 * i22;
      lower(i, q) = l1;
      lower(i, q + 1) = l2;
      if (phase == PivotPhase::Dense)
        f.dense_growth =
            std::max({f.dense_growth, std::abs(l1), std::abs(l2)});
    }

    // Rows with a zero first multiplier receive updates only in the columns
    // where the second pivot column is nonzero; for structured pivots these
    // are the remaining variable columns of the pivot block.
    std::vector<int> second_cols;
    for (int j = q + 2; j < s; ++j)
      if (w(j, q + 1) != 0.0) second_cols.push_back(j);

    for (int i = q + 2; i < s; ++i) {
      const double l1 = lower(i, q);
      const double l2 = lower(i, q + 1);
      if (l1 == 0.0 && l2 == 0.0) continue;
      if (l1 == 0.0) {
        for (int j : second_cols) {
          if (j > i) break;
          const double u = l2 * w(j, q + 1);
          if (u == 0.0) continue;
          double& target = w(i, j);
          if (target == 0.0) ++fill;
          target -= u;
          w(j, i) = target;
        }
      } else {
        for (int j = q + 2; j <= i; ++j) {
          const double u = l1 * w(j, q) + l2 * w(j, q + 1);
          if (u == 0.0) continue;
          double& target = w(i, j);
          if (target == 0.0) ++fill;
          target -= u;
          w(j, i) = target;
        }
      }
    }
  }

  PivotRecord rec;
  rec.phase = phase;
  rec.dim = dim;
  rec.index1 = st.pos[q];
  rec.index2 = dim == 2 ? st.pos[q + 1] : -1;
  rec.ratio = ratio;
  rec.b11 = block.b11;
  rec.b21 = block.b21;
  rec.b22 = block.b22;
  f.pivot_log.push_back(rec);
  f.fill_per_step.push_back(fill);
  f.blocks.push_back(block);
  st.eliminated += dim;
  return fill;
}

void structured_phase(EliminationState& st, Factorization& f,
                      SplitMix64& block_rng) {
  int m = 0;
  for (const std::vector<int>& rows : st.avail.rows)
    m += static_cast<int>(rows.size());

  for (int t = 0; t < m; ++t) {
    const int b =
        st.avail_blocks[block_rng.index(st.avail_blocks.size())];
    const StructuredCandidate cand =
        select_structured_pivot(st.work, st.position_of, st.avail, b);
    eliminate_once(st, f, PivotPhase::Structured, 2, st.position_of[cand.col],
                   st.position_of[cand.row], cand.ratio);

    std::erase(st.avail.cols[b], cand.col);
    std::erase(st.avail.rows[b], cand.row);
    if (st.avail.rows[b].empty()) std::erase(st.avail_blocks, b);
  }
}

void dense_phase(EliminationState& st, Factorization& f) {
  const int s = st.work.rows();
  while (st.eliminated < s) {
    const BbkPivot p = bbk_select(st.work, st.eliminated);
    eliminate_once(st, f, PivotPhase::Dense, p.dim, p.first, p.second, 0.0);
  }
}

Factorization factorize_block_kkt(const KktMatrix& kkt, std::uint64_t seed) {
  EliminationState st = make_state(kkt);
  Factorization f = make_factorization(kkt.size());
  f.seed = seed;
  SplitMix64 block_rng(seed, RngStream::BlockChoice);
  structured_phase(st, f, block_rng);
  dense_phase(st, f);
  f.perm = st.pos;
  return f;
}

Factorization factorize_dense_bbk(const KktMatrix& kkt) {
  EliminationState st = make_state(kkt);
  Factorization f = make_factorization(kkt.size());
  dense_phase(st, f);
  f.perm = st.pos;
  return f;
}

Matrix reconstruct(const Factorization& f) {
  const int s = f.size;
  const Matrix& lower = f.unit_lower;

  Matrix lb(s, s);  // L * B
  int q = 0;
  for (const DiagBlock& b : f.blocks) {
    if (b.dim == 1) {
      for (int i = 0; i < s; ++i) lb(i, q) = lower(i, q) * b.b11;
    } else {
      for (int i = 0; i < s; ++i) {
        lb(i, q) = lower(i, q) * b.b11 + lower(i, q + 1) * b.b21;
        lb(i, q + 1) = lower(i, q) * b.b21 + lower(i, q + 1) * b.b22;
      }
    }
    q += b.dim;
  }

  Matrix out(s, s);
  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) {
      double sum = 0.0;
      // L*B has one superdiagonal entry inside each 2x2 block, hence i+1.
      const int kmax = std::min(std::min(i + 1, j), s - 1);
      for (int k = 0; k <= kmax; ++k) sum += lb(i, k) * lower(j, k);
      out(f.perm[i], f.perm[j]) = sum;
    }
  return out;
}

long long nnz(const Factorization& f) {
  long long count = 0;
  for (int i = 0; i < f.size; ++i)
    for (int j = 0; j <= i; ++j)
      if (f.unit_lower(i, j) != 0.0) ++count;
  return count;
}

long long solve_flops(const Factorization& f) {
  long long flops = 4 * (nnz(f) - f.size);  // forward + backward substitution
  for (const DiagBlock& b : f.blocks) flops += b.dim == 1 ? 1 : 6;
  return flops;
}

}  // namespace bcqp
