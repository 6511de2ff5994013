#include "bcqp/solve.hpp"

#include <cmath>

#include "bcqp/errors.hpp"

namespace bcqp {

std::vector<double> solve_with_factorization(const Factorization& f,
                                             std::span<const double> v) {
  const int s = f.size;
  if (static_cast<int>(v.size()) != s)
    throw InvariantError("right-hand side length does not match factorization");
  const Matrix& lower = f.unit_lower;

  // z1 : L z1 = P'v
  std::vector<double> z(s);
  for (int i = 0; i < s; ++i) {
    double sum = v[f.perm[i]];
    const double* row = lower.row(i);
    for (int j = 0; j < i; ++j) sum -= row[j] * z[j];
    z[i] = sum;
  }

  // z2 : B z2 = z1, explicit 1x1 / 2x2 block solves
  int q = 0;
  for (const DiagBlock& b : f.blocks) {
    if (b.dim == 1) {
      if (b.b11 == 0.0) throw SingularBlockError("singular 1x1 diagonal block");
      z[q] /= b.b11;
    } else {
      const double det = b.b11 * b.b22 - b.b21 * b.b21;
      if (det == 0.0) throw SingularBlockError("singular 2x2 diagonal block");
      const double y1 = z[q], y2 = z[q + 1];
      z[q] = (b.b22 * y1 - b.b21 * y2) / det;
      z[q + 1] = (-b.b21 * y1 + b.b11 * y2) / det;
    }
    q += b.dim;
  }

  // z3 : L' z3 = z2
  for (int i = s - 1; i >= 0; --i) {
    double sum = z[i];
    for (int j = i + 1; j < s; ++j) sum -= lower(j, i) * z[j];
    z[i] = sum;
  }

  // z = P z3
  std::vector<double> out(s);
  for (int i = 0; i < s; ++i) out[f.perm[i]] = z[i];
  return out;
}

QpSolution solve_qp(const BlockQp& problem, std::uint64_t seed) {
  const KktMatrix kkt = assemble_kkt(problem);
  const std::vector<double> x0(problem.n, 0.0);
  const std::vector<double> v = build_rhs(problem, x0).stacked();

  const Factorization f = factorize_block_kkt(kkt, seed);
  const std::vector<double> z = solve_with_factorization(f, v);

  QpSolution sol;
  sol.x.assign(problem.n, 0.0);
  for (int i = 0; i < problem.n; ++i) sol.x[i] = -z[i];  // z holds [-p; lambda]
  sol.lambda.assign(z.begin() + problem.n, z.end());
  sol.residual = kkt_residual(kkt, z, v);
  return sol;
}

double kkt_residual(const KktMatrix& kkt, std::span<const double> z,
                    std::span<const double> v) {
  const int s = kkt.size();
  if (static_cast<int>(z.size()) != s || static_cast<int>(v.size()) != s)
    throw InvariantError("residual vector lengths do not match K");
  double sum = 0.0;
  for (int i = 0; i < s; ++i) {
    double r = -v[i];
    const double* row = kkt.entries.row(i);
    for (int j = 0; j < s; ++j) r += row[j] * z[j];
    sum += r * r;
  }
  return std::sqrt(sum);
}

}  // namespace bcqp
