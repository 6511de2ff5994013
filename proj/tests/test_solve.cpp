#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bcqp/errors.hpp"
#include "bcqp/factor.hpp"
#include "bcqp/probgen.hpp"
#include "bcqp/rng.hpp"
#include "bcqp/solve.hpp"

using namespace bcqp;

namespace {

KktMatrix kkt_from_matrix(Matrix m) {
  BlockLayout layout;
  layout.n = m.rows();
  layout.m = 0;
  return KktMatrix{std::move(m), layout};
}

}  // namespace

TEST_CASE("solving with K = I returns the right-hand side") {
  const Factorization f = factorize_dense_bbk(kkt_from_matrix(Matrix::identity(4)));
  const std::vector<double> v = {1.0, -2.0, 3.5, 0.0};
  CHECK(solve_with_factorization(f, v) == v);
}

TEST_CASE("solving with the antidiagonal swap matrix swaps the entries") {
  Matrix k(2, 2);
  k(0, 1) = k(1, 0) = 1.0;
  const Factorization f = factorize_dense_bbk(kkt_from_matrix(std::move(k)));
  const std::vector<double> v = {3.0, 5.0};
  const std::vector<double> z = solve_with_factorization(f, v);
  CHECK(z[0] == 5.0);
  CHECK(z[1] == 3.0);
}

TEST_CASE("random 12x12 solve has a tiny residual") {
  SplitMix64 rng(17);
  Matrix k(12, 12);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j <= i; ++j) {
      const double v = rng.uniform01() * 4.0 - 2.0;
      k(i, j) = k(j, i) = v;
    }
  std::vector<double> v(12);
  for (double& x : v) x = rng.uniform01() * 2.0 - 1.0;

  const KktMatrix kkt = kkt_from_matrix(k);
  const Factorization f = factorize_dense_bbk(kkt);
  const std::vector<double> z = solve_with_factorization(f, v);
  CHECK(kkt_residual(kkt, z, v) <=
        1e-10 * k.frobenius_norm() * norm2(z));
}

TEST_CASE("known solution: H = I, c = 0, one constraint x1 + x2 = 2") {
  BlockQp p;
  p.n = 2;
  p.m = 1;
  p.blocks = {{2, 1}};
  p.hessian = Matrix::identity(2);
  Matrix a(1, 2);
  a(0, 0) = a(0, 1) = 1.0;
  p.constraint_blocks = {a};
  p.linear = {0.0, 0.0};
  p.rhs = {2.0};

  const QpSolution sol = solve_qp(p, 1);
  CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sol.x[1] == doctest::Approx(1.0).epsilon(1e-12));
  // Stationarity: H x* + c - A' lambda* = 0, so lambda* = 1.
  CHECK(sol.lambda[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sol.residual <= 1e-12);
}

TEST_CASE("known solution: H = 2I, c = (-2,-2), constraint x1 - x2 = 0") {
  BlockQp p;
  p.n = 2;
  p.m = 1;
  p.blocks = {{2, 1}};
  p.hessian = Matrix(2, 2);
  p.hessian(0, 0) = p.hessian(1, 1) = 2.0;
  Matrix a(1, 2);
  a(0, 0) = 1.0;
  a(0, 1) = -1.0;
  p.constraint_blocks = {a};
  p.linear = {-2.0, -2.0};
  p.rhs = {0.0};

  const QpSolution sol = solve_qp(p, 1);
  CHECK(sol.x[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(sol.x[1] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(sol.lambda[0]) <= 1e-12);
}

TEST_CASE("kkt_residual is an independent check") {
  const KktMatrix kkt = kkt_from_matrix(Matrix::identity(3));
  const std::vector<double> z = {1.0, 2.0, 3.0};
  SUBCASE("exact solution gives zero") {
    CHECK(kkt_residual(kkt, z, z) == 0.0);
  }
  SUBCASE("unit perturbation of one entry gives the column norm times delta") {
    std::vector<double> zp = z;
    zp[1] += 0.25;
    CHECK(kkt_residual(kkt, zp, z) == doctest::Approx(0.25).epsilon(1e-15));
  }
}

TEST_CASE("generated problems: feasibility and stationarity of the solution") {
  GenSpec spec;
  spec.n = 30;
  spec.blocks = {{10, 3}, {20, 7}};
  for (std::uint64_t seed : {4ULL, 5ULL, 6ULL}) {
    spec.seed = seed;
    const BlockQp p = generate(spec);
    const QpSolution sol = solve_qp(p, seed);
    CHECK(sol.residual <= 1e-8);

    // A x* = e, block by block.
    int row = 0, col = 0;
    for (int b = 0; b < p.block_count(); ++b) {
      const Matrix& a = p.constraint_blocks[b];
      for (int i = 0; i < a.rows(); ++i) {
        double ax = 0.0;
        for (int j = 0; j < a.cols(); ++j) ax += a(i, j) * sol.x[col + j];
        CHECK(std::abs(ax - p.rhs[row]) <= 1e-8);
        ++row;
      }
      col += a.cols();
    }

    // H x* + c - A' lambda* = 0.
    std::vector<double> grad = matvec(p.hessian, sol.x);
    for (int i = 0; i < p.n; ++i) grad[i] += p.linear[i];
    row = 0;
    col = 0;
    for (int b = 0; b < p.block_count(); ++b) {
      const Matrix& a = p.constraint_blocks[b];
      for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j)
          grad[col + j] -= a(i, j) * sol.lambda[row + i];
      }
      row += a.rows();
      col += a.cols();
    }
    for (int i = 0; i < p.n; ++i) CHECK(std::abs(grad[i]) <= 1e-8);
  }
}

TEST_CASE("structured and dense-baseline solves agree") {
  GenSpec spec;
  spec.n = 20;
  spec.blocks = {{8, 3}, {12, 4}};
  spec.seed = 13;
  const BlockQp p = generate(spec);
  const KktMatrix kkt = assemble_kkt(p);
  const KktRhs rhs = build_rhs(p, std::vector<double>(p.n, 0.0));
  const std::vector<double> v = rhs.stacked();

  const std::vector<double> z1 =
      solve_with_factorization(factorize_block_kkt(kkt, 2), v);
  const std::vector<double> z2 =
      solve_with_factorization(factorize_dense_bbk(kkt), v);
  for (int i = 0; i < kkt.size(); ++i)
    CHECK(std::abs(z1[i] - z2[i]) <= 1e-7 * (1.0 + std::abs(z2[i])));
}

TEST_CASE("a planted solution is recovered") {
  GenSpec spec;
  spec.n = 16;
  spec.blocks = {{16, 5}};
  spec.seed = 23;
  const BlockQp p = generate(spec);
  const KktMatrix kkt = assemble_kkt(p);

  SplitMix64 rng(55);
  std::vector<double> z_true(kkt.size());
  for (double& x : z_true) x = rng.uniform01() * 2.0 - 1.0;
  const std::vector<double> v = matvec(kkt.entries, z_true);

  const std::vector<double> z =
      solve_with_factorization(factorize_block_kkt(kkt, 3), v);
  for (int i = 0; i < kkt.size(); ++i)
    CHECK(z[i] == doctest::Approx(z_true[i]).epsilon(1e-7));
}

TEST_CASE("a singular diagonal block is reported") {
  Factorization f;
  f.size = 1;
  f.perm = {0};
  f.unit_lower = Matrix::identity(1);
  f.blocks = {{1, 0.0, 0.0, 0.0}};
  const std::vector<double> v = {1.0};
  CHECK_THROWS_AS(solve_with_factorization(f, v), SingularBlockError);
}
