#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "bcqp/block_qp.hpp"
#include "bcqp/factor.hpp"

namespace bcqp {

struct QpSolution {
  std::vector<double> x;       // x*
  std::vector<double> lambda;  // lambda*
  double residual = 0.0;       // ||K z - v||_2 of the stacked KKT solution
};

// Solves K z = v through the factorization: forward substitution, block
// diagonal solve, backward substitution, final reordering.
std::vector<double> solve_with_factorization(const Factorization& fact,
                                             std::span<const double> v);

// Assembles and factorizes the KKT system with x0 = 0 and returns the QP
// solution with its residual.
QpSolution solve_qp(const BlockQp& problem, std::uint64_t seed);

// ||K z - v||_2 by a straightforward dense mat-vec, independent of the
// factorization code paths.
double kkt_residual(const KktMatrix& kkt, std::span<const double> z,
                    std::span<const double> v);

}  // namespace bcqp
