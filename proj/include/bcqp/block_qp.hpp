#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "bcqp/matrix.hpp"

namespace bcqp {

struct BlockDims {
  int n_i = 0;  // variables in the block
  int m_i = 0;  // constraints in the block
  friend bool operator==(const BlockDims&, const BlockDims&) = default;
};

// Equality-constrained QP  min 1/2 x'Hx + c'x  s.t.  Ax = e  where A is
// block diagonal with blocks A_i.
struct BlockQp {
  int n = 0;  // total variables
  int m = 0;  // total constraints
  std::vector<BlockDims> blocks;
  Matrix hessian;                         // n x n symmetric
  std::vector<Matrix> constraint_blocks;  // A_i, each m_i x n_i
  std::vector<double> linear;             // c, length n
  std::vector<double> rhs;                // e, length m

  int block_count() const { return static_cast<int>(blocks.size()); }

  // Throws InvariantError naming the first violated invariant.
  void validate() const;
};

// Index ranges of each block inside the assembled KKT matrix: variable
// columns come first (grouped by block), then constraint rows.
struct BlockLayout {
  struct Range {
    int begin = 0;  // first index
    int end = 0;    // one past last
  };
  int n = 0;
  int m = 0;
  std::vector<Range> cols;  // variable-column range per block, within [0, n)
  std::vector<Range> rows;  // constraint-row range per block, within [n, n+m)

  int size() const { return n + m; }
  int block_count() const { return static_cast<int>(cols.size()); }
};

// Dense symmetric KKT matrix [[H, A'],[A, 0]] plus block metadata.
struct KktMatrix {
  Matrix entries;
  BlockLayout layout;

  int size() const { return entries.rows(); }
};

// Right-hand side of the KKT system: g = c + Hx, h = Ax - e.
struct KktRhs {
  std::vector<double> g;
  std::vector<double> h;

  std::vector<double> stacked() const;
};

KktMatrix assemble_kkt(const BlockQp& problem);
KktRhs build_rhs(const BlockQp& problem, std::span<const double> x0);

// BLOCKQP v1 text format.
BlockQp read_problem(std::istream& in);
BlockQp read_problem(const std::string& path);
void write_problem(const BlockQp& problem, std::ostream& out);
void write_problem(const BlockQp& problem, const std::string& path);

}  // namespace bcqp
