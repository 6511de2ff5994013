#include "bcqp/bench.hpp"

#include <chrono>
#include <cstdio>
#include <ostream>

#include "bcqp/blockspec.hpp"
#include "bcqp/errors.hpp"
#include "bcqp/factor.hpp"
#include "bcqp/pattern.hpp"
#include "bcqp/probgen.hpp"
#include "bcqp/solve.hpp"

namespace bcqp {

namespace {

double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

// Seed bump for singular-instance retries; large and odd so retried seeds
// do not collide with the other instances of the row.
constexpr std::uint64_t kRetryStride = 0x9E3779B9ULL;
constexpr int kMaxRetries = 5;

}  // namespace

std::vector<NnzReport> run_bench(const std::vector<BenchRow>& rows,
                                 std::ostream* log) {
  std::vector<NnzReport> reports;
  for (const BenchRow& row : rows) {
    NnzReport rep;
    rep.n = row.n;
    rep.block_spec = format_block_spec(row.blocks);
    rep.density = row.density;
    rep.instances = row.instances;
    rep.seed = row.seed;

    GenSpec spec;
    spec.n = row.n;
    spec.blocks = row.blocks;
    spec.h_density = row.density;

    int completed = 0;
    double sum_nnz = 0.0, sum_bbk = 0.0, sum_factor_ms = 0.0,
           sum_solve_ms = 0.0, sum_residual = 0.0, sum_flops = 0.0,
           sum_flops_bbk = 0.0;
    long long fill_total = 0;
    std::string last_error;

    for (int k = 0; k < row.instances; ++k) {
      std::uint64_t seed = row.seed + static_cast<std::uint64_t>(k);
      bool done = false;
      for (int attempt = 0; attempt <= kMaxRetries && !done; ++attempt) {
        try {
          spec.seed = seed;
          const BlockQp problem = generate(spec);
          const KktMatrix kkt = assemble_kkt(problem);

          auto t0 = std::chrono::steady_clock::now();
          const Factorization f = factorize_block_kkt(kkt, seed);
          const double factor_ms = elapsed_ms(t0);

          const std::vector<double> x0(problem.n, 0.0);
          const std::vector<double> v = build_rhs(problem, x0).stacked();
          t0 = std::chrono::steady_clock::now();
          const std::vector<double> z = solve_with_factorization(f, v);
          const double solve_ms = elapsed_ms(t0);

          sum_nnz += static_cast<double>(nnz(f));
          sum_flops += static_cast<double>(solve_flops(f));
          fill_total += f.structured_fill();
          sum_factor_ms += factor_ms;
          sum_solve_ms += solve_ms;
          sum_residual += kkt_residual(kkt, z, v);

          if (row.baseline) {
            const Factorization base = factorize_dense_bbk(kkt);
            sum_bbk += static_cast<double>(nnz(base));
            sum_flops_bbk += static_cast<double>(solve_flops(base));
          }
          ++completed;
          done = true;
        } catch (const Error& e) {
          last_error = e.what();
          ++rep.retries;
          seed += kRetryStride;
          if (log)
            *log << "instance " << k << " of row " << rep.block_spec
                 << " failed (" << e.what() << "), retrying with seed "
                 << seed << "\n";
        }
      }
    }

    if (completed == 0) {
      rep.error = last_error.empty() ? "no instances completed" : last_error;
    } else {
      rep.nnz_ours = sum_nnz / completed;
      rep.flops_ours = sum_flops / completed;
      if (row.baseline) {
        rep.nnz_bbk = sum_bbk / completed;
        rep.flops_bbk = sum_flops_bbk / completed;
      }
      rep.fill_structured = fill_total;
      rep.time_factor_ms = sum_factor_ms / completed;
      rep.time_solve_ms = sum_solve_ms / completed;
      rep.residual = sum_residual / completed;
    }
    if (row.density == 1.0)
      rep.predicted_nnz = predict_nnz_dense_h(row.n, row.blocks);

    if (log)
      *log << rep.block_spec << " n=" << rep.n << " density=" << rep.density
           << " nnz_ours=" << rep.nnz_ours << " flops_ours=" << rep.flops_ours
           << (rep.nnz_bbk ? " nnz_bbk=" + std::to_string(*rep.nnz_bbk) : "")
           << (rep.flops_bbk ? " flops_bbk=" + std::to_string(*rep.flops_bbk)
                             : "")
           << " fill_structured=" << rep.fill_structured
           << " retries=" << rep.retries << "\n";
    reports.push_back(std::move(rep));
  }
  return reports;
}

namespace {

std::string number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void write_csv(const std::vector<NnzReport>& reports, std::ostream& out) {
  out << "n,block_spec,density,instances,seed,nnz_ours,nnz_bbk,predicted_nnz,"
         "fill_structured,time_factor_ms,time_solve_ms,residual\n";
  for (const NnzReport& r : reports) {
    out << r.n << ',' << r.block_spec << ',' << number(r.density) << ','
        << r.instances << ',' << r.seed << ',' << number(r.nnz_ours) << ','
        << (r.nnz_bbk ? number(*r.nnz_bbk) : "") << ','
        << (r.predicted_nnz ? std::to_string(*r.predicted_nnz) : "") << ','
        << r.fill_structured << ',' << number(r.time_factor_ms) << ','
        << number(r.time_solve_ms) << ',' << number(r.residual) << '\n';
  }
}

}  // namespace bcqp
