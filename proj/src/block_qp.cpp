#include "bcqp/block_qp.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "bcqp/errors.hpp"

namespace bcqp {

void BlockQp::validate() const {
  if (blocks.empty()) throw InvariantError("problem has no constraint blocks");
  int sum_n = 0, sum_m = 0;
  for (const BlockDims& b : blocks) {
    if (b.n_i <= 0 || b.m_i <= 0)
      throw InvariantError("block dimensions must be positive");
    if (b.m_i >= b.n_i)
      throw InvariantError("block must satisfy m_i < n_i");
    sum_n += b.n_i;
    sum_m += b.m_i;
  }
  if (sum_n != n) throw InvariantError("sum of block n_i does not equal n");
  if (sum_m != m) throw InvariantError("sum of block m_i does not equal m");
  if (m >= n) throw InvariantError("problem must satisfy m < n");
  if (hessian.rows() != n || hessian.cols() != n)
    throw InvariantError("Hessian dimension does not equal n");
  if (!hessian.is_symmetric()) throw InvariantError("Hessian is not symmetric");
  if (static_cast<int>(constraint_blocks.size()) != block_count())
    throw InvariantError("constraint block count does not equal N");
  for (int i = 0; i < block_count(); ++i) {
    const Matrix& a = constraint_blocks[i];
    if (a.rows() != blocks[i].m_i || a.cols() != blocks[i].n_i)
      throw InvariantError("constraint block " + std::to_string(i + 1) +
                           " has wrong dimensions");
  }
  if (static_cast<int>(linear.size()) != n)
    throw InvariantError("linear term length does not equal n");
  if (static_cast<int>(rhs.size()) != m)
    throw InvariantError("rhs length does not equal m");
}

std::vector<double> KktRhs::stacked() const {
  std::vector<double> v = g;
  v.insert(v.end(), h.begin(), h.end());
  return v;
}

KktMatrix assemble_kkt(const BlockQp& problem) {
  problem.validate();
  const int n = problem.n;
  const int s = n + problem.m;

  BlockLayout layout;
  layout.n = n;
  layout.m = problem.m;
  int col = 0, row = n;
  for (const BlockDims& b : problem.blocks) {
    layout.cols.push_back({col, col + b.n_i});
    layout.rows.push_back({row, row + b.m_i});
    col += b.n_i;
    row += b.m_i;
  }

  Matrix k(s, s, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) k(i, j) = problem.hessian(i, j);
  for (int b = 0; b < problem.block_count(); ++b) {
    const Matrix& a = problem.constraint_blocks[b];
    const int r0 = layout.rows[b].begin;
    const int c0 = layout.cols[b].begin;
    for (int i = 0; i < a.rows(); ++i)
      for (int j = 0; j < a.cols(); ++j) {
        k(r0 + i, c0 + j) = a(i, j);
        k(c0 + j, r0 + i) = a(i, j);
      }
  }
  return KktMatrix{std::move(k), std::move(layout)};
}

KktRhs build_rhs(const BlockQp& problem, std::span<const double> x0) {
  if (static_cast<int>(x0.size()) != problem.n)
    throw InvariantError("starting point length does not equal n");
  KktRhs out;
  out.g.assign(problem.n, 0.0);
  for (int i = 0; i < problem.n; ++i) {
    double sum = problem.linear[i];
    const double* r = problem.hessian.row(i);
    for (int j = 0; j < problem.n; ++j) sum += r[j] * x0[j];
    out.g[i] = sum;
  }
  out.h.assign(problem.m, 0.0);
  int row = 0, col = 0;
  for (int b = 0; b < problem.block_count(); ++b) {
    const Matrix& a = problem.constraint_blocks[b];
    for (int i = 0; i < a.rows(); ++i) {
      double sum = -problem.rhs[row];
      for (int j = 0; j < a.cols(); ++j) sum += a(i, j) * x0[col + j];
      out.h[row] = sum;
      ++row;
    }
    col += a.cols();
  }
  return out;
}

namespace {

// Line-oriented tokenizer that remembers the current line for errors.
class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  int line() const { return line_; }

  std::string next_line() {
    std::string text;
    if (!std::getline(in_, text)) throw ParseError(line_ + 1, "unexpected end of file");
    ++line_;
    return text;
  }

  // Reads exactly `count` doubles from the next line.
  void read_doubles(int count, double* out) {
    std::istringstream ss(next_line());
    for (int i = 0; i < count; ++i) {
      if (!(ss >> out[i]))
        throw ParseError(line_, "expected " + std::to_string(count) + " numeric values");
    }
    std::string extra;
    if (ss >> extra) throw ParseError(line_, "trailing content on line");
  }

 private:
  std::istream& in_;
  int line_ = 0;
};

}  // namespace

BlockQp read_problem(std::istream& in) {
  LineReader reader(in);

  {
    std::istringstream ss(reader.next_line());
    std::string magic;
    int version = 0;
    if (!(ss >> magic >> version) || magic != "BLOCKQP" || version != 1)
      throw ParseError(reader.line(), "expected header \"BLOCKQP 1\"");
  }

  BlockQp p;
  int big_n = 0;
  {
    std::istringstream ss(reader.next_line());
    if (!(ss >> p.n >> p.m >> big_n) || p.n <= 0 || p.m <= 0 || big_n <= 0)
      throw ParseError(reader.line(), "expected positive \"n m N\"");
  }
  {
    std::istringstream ss(reader.next_line());
    for (int i = 0; i < big_n; ++i) {
      BlockDims b;
      if (!(ss >> b.n_i >> b.m_i))
        throw ParseError(reader.line(), "expected " + std::to_string(big_n) +
                                            " block dimension pairs");
      p.blocks.push_back(b);
    }
  }

  // Check dimension invariants before parsing the numeric body so that a
  // bad header is reported as what it is.
  {
    int sum_n = 0, sum_m = 0;
    for (const BlockDims& b : p.blocks) {
      if (b.m_i <= 0 || b.m_i >= b.n_i)
        throw InvariantError("block must satisfy 0 < m_i < n_i");
      sum_n += b.n_i;
      sum_m += b.m_i;
    }
    if (sum_n != p.n) throw InvariantError("sum of block n_i does not equal n");
    if (sum_m != p.m) throw InvariantError("sum of block m_i does not equal m");
    if (p.m >= p.n) throw InvariantError("problem must satisfy m < n");
  }

  p.hessian = Matrix(p.n, p.n);
  for (int i = 0; i < p.n; ++i) reader.read_doubles(p.n, p.hessian.row(i));
  p.linear.assign(p.n, 0.0);
  reader.read_doubles(p.n, p.linear.data());
  p.rhs.assign(p.m, 0.0);
  reader.read_doubles(p.m, p.rhs.data());
  for (const BlockDims& b : p.blocks) {
    Matrix a(b.m_i, b.n_i);
    for (int i = 0; i < b.m_i; ++i) reader.read_doubles(b.n_i, a.row(i));
    p.constraint_blocks.push_back(std::move(a));
  }

  p.validate();
  return p;
}

BlockQp read_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path);
  return read_problem(in);
}

namespace {

void write_row(std::ostream& out, const double* values, int count) {
  char buf[32];
  for (int j = 0; j < count; ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", values[j]);
    out << (j ? " " : "") << buf;
  }
  out << '\n';
}

}  // namespace

void write_problem(const BlockQp& p, std::ostream& out) {
  p.validate();
  out << "BLOCKQP 1\n";
  out << p.n << ' ' << p.m << ' ' << p.block_count() << '\n';
  for (int i = 0; i < p.block_count(); ++i)
    out << (i ? " " : "") << p.blocks[i].n_i << ' ' << p.blocks[i].m_i;
  out << '\n';
  for (int i = 0; i < p.n; ++i) write_row(out, p.hessian.row(i), p.n);
  write_row(out, p.linear.data(), p.n);
  write_row(out, p.rhs.data(), p.m);
  for (const Matrix& a : p.constraint_blocks)
    for (int i = 0; i < a.rows(); ++i) write_row(out, a.row(i), a.cols());
}

void write_problem(const BlockQp& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path + " for writing");
  write_problem(p, out);
}

}  // namespace bcqp
