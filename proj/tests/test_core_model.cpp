#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "bcqp/block_qp.hpp"
#include "bcqp/errors.hpp"
#include "bcqp/probgen.hpp"
#include "bcqp/rng.hpp"

using namespace bcqp;

namespace {

BlockQp tiny_problem() {
  // n=2, one 1x2 constraint block.
  BlockQp p;
  p.n = 2;
  p.m = 1;
  p.blocks = {{2, 1}};
  p.hessian = Matrix(2, 2);
  p.hessian(0, 0) = 4.0;
  p.hessian(0, 1) = p.hessian(1, 0) = 1.5;
  p.hessian(1, 1) = 3.0;
  Matrix a(1, 2);
  a(0, 0) = 2.0;
  a(0, 1) = 5.0;
  p.constraint_blocks = {a};
  p.linear = {1.0, -2.0};
  p.rhs = {7.0};
  return p;
}

// Full constraint matrix assembled from the blocks, for independent checks.
Matrix full_constraint(const BlockQp& p) {
  Matrix a(p.m, p.n);
  int row = 0, col = 0;
  for (int b = 0; b < p.block_count(); ++b) {
    const Matrix& ab = p.constraint_blocks[b];
    for (int i = 0; i < ab.rows(); ++i)
      for (int j = 0; j < ab.cols(); ++j) a(row + i, col + j) = ab(i, j);
    row += ab.rows();
    col += ab.cols();
  }
  return a;
}

}  // namespace

TEST_CASE("assemble_kkt places H, A blocks and zero corner") {
  const BlockQp p = tiny_problem();
  const KktMatrix kkt = assemble_kkt(p);
  REQUIRE(kkt.size() == 3);
  CHECK(kkt.entries(2, 2) == 0.0);
  CHECK(kkt.entries(2, 0) == 2.0);
  CHECK(kkt.entries(2, 1) == 5.0);
  CHECK(kkt.entries(0, 2) == 2.0);
  CHECK(kkt.entries(0, 0) == 4.0);
}

TEST_CASE("assemble_kkt matches the two-block 10x10 sample structure") {
  GenSpec spec;
  spec.n = 6;
  spec.blocks = {{3, 2}, {3, 2}};
  spec.seed = 7;
  const KktMatrix kkt = assemble_kkt(generate(spec));
  REQUIRE(kkt.size() == 10);

  // Expected nonzero pattern: dense Hessian corner, block-diagonal
  // constraint strips, zero constraint-constraint corner.
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      bool expected;
      if (i < 6 && j < 6)
        expected = true;
      else if (i >= 6 && j >= 6)
        expected = false;
      else {
        const int row = std::max(i, j), col = std::min(i, j);
        expected = (row < 8) ? col < 3 : col >= 3;
      }
      CHECK(((kkt.entries(i, j) != 0.0) == expected));
    }

  SUBCASE("layout covers contiguous non-overlapping ranges") {
    CHECK(kkt.layout.cols[0].begin == 0);
    CHECK(kkt.layout.cols[0].end == 3);
    CHECK(kkt.layout.cols[1].end == 6);
    CHECK(kkt.layout.rows[0].begin == 6);
    CHECK(kkt.layout.rows[1].end == 10);
  }
}

TEST_CASE("assembled matrix is bitwise symmetric with exact zero regions") {
  GenSpec spec;
  spec.n = 20;
  spec.blocks = {{8, 3}, {12, 5}};
  spec.seed = 3;
  const BlockQp p = generate(spec);
  const KktMatrix kkt = assemble_kkt(p);
  const int s = kkt.size();

  for (int i = 0; i < s; ++i)
    for (int j = 0; j < s; ++j) CHECK(kkt.entries(i, j) == kkt.entries(j, i));
  for (int i = p.n; i < s; ++i)
    for (int j = p.n; j < s; ++j) CHECK(kkt.entries(i, j) == 0.0);
  for (int b = 0; b < kkt.layout.block_count(); ++b)
    for (int r = kkt.layout.rows[b].begin; r < kkt.layout.rows[b].end; ++r)
      for (int j = 0; j < p.n; ++j)
        if (j < kkt.layout.cols[b].begin || j >= kkt.layout.cols[b].end)
          CHECK(kkt.entries(r, j) == 0.0);

  SUBCASE("structural nonzero count is n^2 + 2 sum(m_i n_i)") {
    long long count = 0;
    for (int i = 0; i < s; ++i)
      for (int j = 0; j < s; ++j)
        if (kkt.entries(i, j) != 0.0) ++count;
    long long expected = static_cast<long long>(p.n) * p.n;
    for (const BlockDims& b : p.blocks) expected += 2LL * b.m_i * b.n_i;
    CHECK(count == expected);
  }
}

TEST_CASE("assemble_kkt rejects inconsistent dimensions") {
  BlockQp p = tiny_problem();
  p.blocks[0].n_i = 3;  // no longer sums to n
  CHECK_THROWS_AS(assemble_kkt(p), InvariantError);
}

TEST_CASE("build_rhs at x0 = 0 gives g = c, h = -e") {
  const BlockQp p = tiny_problem();
  const std::vector<double> x0(p.n, 0.0);
  const KktRhs rhs = build_rhs(p, x0);
  CHECK(rhs.g == p.linear);
  CHECK(rhs.h == std::vector<double>{-7.0});
}

TEST_CASE("build_rhs at a feasible point has h = 0") {
  BlockQp p = tiny_problem();
  const std::vector<double> x0 = {1.0, 1.0};
  p.rhs = {2.0 * 1.0 + 5.0 * 1.0};  // e = A x0
  const KktRhs rhs = build_rhs(p, x0);
  CHECK(rhs.h[0] == 0.0);
}

TEST_CASE("build_rhs matches an independent mat-vec") {
  GenSpec spec;
  spec.n = 14;
  spec.blocks = {{6, 2}, {8, 3}};
  spec.seed = 11;
  const BlockQp p = generate(spec);
  SplitMix64 rng(99);
  std::vector<double> x0(p.n);
  for (double& v : x0) v = rng.uniform01() * 2.0 - 1.0;

  const KktRhs rhs = build_rhs(p, x0);
  const std::vector<double> hx = matvec(p.hessian, x0);
  const std::vector<double> ax = matvec(full_constraint(p), x0);
  for (int i = 0; i < p.n; ++i)
    CHECK(rhs.g[i] == doctest::Approx(p.linear[i] + hx[i]).epsilon(1e-14));
  for (int i = 0; i < p.m; ++i)
    CHECK(rhs.h[i] == doctest::Approx(ax[i] - p.rhs[i]).epsilon(1e-14));
}

TEST_CASE("problem file round trip is bitwise exact") {
  GenSpec spec;
  spec.n = 9;
  spec.blocks = {{4, 1}, {5, 2}};
  spec.seed = 21;
  const BlockQp p = generate(spec);

  std::stringstream buffer;
  write_problem(p, buffer);
  const BlockQp q = read_problem(buffer);

  CHECK(q.n == p.n);
  CHECK(q.m == p.m);
  CHECK(q.blocks == p.blocks);
  CHECK(q.hessian == p.hessian);
  CHECK(q.linear == p.linear);
  CHECK(q.rhs == p.rhs);
  for (int b = 0; b < p.block_count(); ++b)
    CHECK(q.constraint_blocks[b] == p.constraint_blocks[b]);
}

TEST_CASE("reading a file whose blocks do not sum to n fails") {
  GenSpec spec;
  spec.n = 9;
  spec.blocks = {{4, 1}, {5, 2}};
  const BlockQp p = generate(spec);
  std::stringstream buffer;
  write_problem(p, buffer);

  std::string text = buffer.str();
  const std::string needle = "\n4 1 5 2\n";
  text.replace(text.find(needle), needle.size(), "\n3 1 5 2\n");
  std::stringstream bad(text);
  CHECK_THROWS_AS(read_problem(bad), InvariantError);
}

TEST_CASE("empty file is a parse error at line 1") {
  std::stringstream empty;
  try {
    read_problem(empty);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
  }
}

TEST_CASE("malformed numeric row reports its line") {
  std::stringstream in("BLOCKQP 1\n2 1 1\n2 1\n1 0\n0 bad\n");
  CHECK_THROWS_AS(read_problem(in), ParseError);
}
