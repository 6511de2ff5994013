#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "bcqp/block_qp.hpp"

namespace bcqp {

struct BenchRow {
  int n = 0;
  std::vector<BlockDims> blocks;
  double density = 1.0;
  int instances = 10;
  std::uint64_t seed = 0;
  bool baseline = false;  // also run the whole-matrix BBK baseline
};

// Per-row benchmark record; means are taken over exactly `instances` runs.
struct NnzReport {
  int n = 0;
  std::string block_spec;
  double density = 1.0;
  int instances = 0;
  std::uint64_t seed = 0;
  double nnz_ours = 0.0;
  std::optional<double> nnz_bbk;
  std::optional<long long> predicted_nnz;  // only when density = 1
  long long fill_structured = 0;
  double time_factor_ms = 0.0;
  double time_solve_ms = 0.0;
  double residual = 0.0;
  double flops_ours = 0.0;  // substitution flop proxy
  std::optional<double> flops_bbk;
  int retries = 0;
  std::string error;  // nonempty when every instance of the row failed
};

std::vector<NnzReport> run_bench(const std::vector<BenchRow>& rows,
                                 std::ostream* log = nullptr);

// CSV schema (fixed order):
// n,block_spec,density,instances,seed,nnz_ours,nnz_bbk,predicted_nnz,
// fill_structured,time_factor_ms,time_solve_ms,residual
void write_csv(const std::vector<NnzReport>& reports, std::ostream& out);

}  // namespace bcqp
