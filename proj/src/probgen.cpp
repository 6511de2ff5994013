#include "bcqp/probgen.hpp"

#include <algorithm>

#include "bcqp/errors.hpp"
#include "bcqp/rng.hpp"

namespace bcqp {

BlockQp generate(const GenSpec& spec) {
  if (spec.n <= 0) throw InvariantError("generation spec requires n > 0");
  if (spec.blocks.empty()) throw InvariantError("generation spec has no blocks");
  if (!(spec.h_density > 0.0 && spec.h_density <= 1.0))
    throw InvariantError("Hessian density must lie in (0,1]");
  int sum_n = 0, sum_m = 0;
  for (const BlockDims& b : spec.blocks) {
    if (b.n_i <= 0 || b.m_i <= 0 || b.m_i >= b.n_i)
      throw InvariantError("each block requires 0 < m_i < n_i");
    sum_n += b.n_i;
    sum_m += b.m_i;
  }
  if (sum_n != spec.n) throw InvariantError("block n_i do not sum to n");
  if (sum_m >= spec.n) throw InvariantError("generated problem requires m < n");

  const int n = spec.n;
  BlockQp p;
  p.n = n;
  p.m = sum_m;
  p.blocks = spec.blocks;

  SplitMix64 h_rng(spec.seed, RngStream::Hessian);
  p.hessian = Matrix(n, n);
  if (spec.h_density == 1.0) {
    Matrix hat(n, n);
    double max_entry = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const double v = h_rng.uniform01();
        hat(i, j) = v;
        max_entry = std::max(max_entry, v);
      }
    // H = Hhat Hhat' / max(Hhat), computed on the lower triangle and
    // mirrored so the result is bitwise symmetric.
    for (int i = 0; i < n; ++i) {
      const double* ri = hat.row(i);
      for (int j = 0; j <= i; ++j) {
        const double* rj = hat.row(j);
        double sum = 0.0;
        for (int k = 0; k < n; ++k) sum += ri[k] * rj[k];
        const double v = sum / max_entry;
        p.hessian(i, j) = v;
        p.hessian(j, i) = v;
      }
    }
  } else {
    SplitMix64 pattern_rng(spec.seed, RngStream::SparsityPattern);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        if (pattern_rng.uniform01() >= spec.h_density) continue;
        const double v = h_rng.uniform01();
        p.hessian(i, j) = v;
        p.hessian(j, i) = v;
      }
  }

  SplitMix64 c_rng(spec.seed, RngStream::Linear);
  p.linear.resize(n);
  for (double& v : p.linear) v = c_rng.uniform01();

  SplitMix64 e_rng(spec.seed, RngStream::Rhs);
  p.rhs.resize(p.m);
  for (double& v : p.rhs) v = e_rng.uniform01();

  SplitMix64 a_rng(spec.seed, RngStream::Constraint);
  for (const BlockDims& b : spec.blocks) {
    Matrix a(b.m_i, b.n_i);
    for (int i = 0; i < b.m_i; ++i)
      for (int j = 0; j < b.n_i; ++j) a(i, j) = a_rng.uniform01();
    p.constraint_blocks.push_back(std::move(a));
  }

  return p;
}

}  // namespace bcqp
