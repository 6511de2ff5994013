#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bcqp/bench.hpp"
#include "bcqp/block_qp.hpp"
#include "bcqp/blockspec.hpp"
#include "bcqp/errors.hpp"
#include "bcqp/factor.hpp"
#include "bcqp/pattern.hpp"
#include "bcqp/probgen.hpp"
#include "bcqp/solve.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 1;
constexpr int kExitNumerical = 2;

int run_generate(int n, const std::string& blocks, double density,
                 std::uint64_t seed, const std::string& out_path) {
  bcqp::GenSpec spec;
  spec.n = n;
  spec.blocks = bcqp::parse_block_spec(blocks);
  spec.h_density = density;
  spec.seed = seed;
  const bcqp::BlockQp problem = bcqp::generate(spec);
  if (out_path.empty() || out_path == "-")
    bcqp::write_problem(problem, std::cout);
  else
    bcqp::write_problem(problem, out_path);
  return 0;
}

int run_factorize(const std::string& in_path, const std::string& strategy,
                  std::uint64_t seed, const std::string& stats_path) {
  const bcqp::BlockQp problem = bcqp::read_problem(in_path);
  const bcqp::KktMatrix kkt = bcqp::assemble_kkt(problem);

  const auto t0 = std::chrono::steady_clock::now();
  const bcqp::Factorization f = strategy == "bbk"
                                    ? bcqp::factorize_dense_bbk(kkt)
                                    : bcqp::factorize_block_kkt(kkt, seed);
  const double factor_ms =
      std::chrono::duration<double, std::milli>(
          std::chrono::steady_clock::now() - t0)
          .count();

  int dense_1x1 = 0, dense_2x2 = 0, structured = 0;
  for (const bcqp::PivotRecord& rec : f.pivot_log) {
    if (rec.phase == bcqp::PivotPhase::Structured)
      ++structured;
    else
      ++(rec.dim == 1 ? dense_1x1 : dense_2x2);
  }

  json stats = {
      {"strategy", strategy},
      {"n", problem.n},
      {"m", problem.m},
      {"s", kkt.size()},
      {"seed", seed},
      {"nnz", bcqp::nnz(f)},
      {"solve_flops", bcqp::solve_flops(f)},
      {"fill_in_structured_phase", f.structured_fill()},
      {"dense_growth", f.dense_growth},
      {"time_factor_ms", factor_ms},
      {"pivots_structured", structured},
      {"pivots_dense_1x1", dense_1x1},
      {"pivots_dense_2x2", dense_2x2},
  };
  if (stats_path.empty() || stats_path == "-") {
    std::cout << stats.dump(2) << "\n";
  } else {
    std::ofstream out(stats_path);
    if (!out) throw bcqp::Error("cannot open " + stats_path + " for writing");
    out << stats.dump(2) << "\n";
  }
  return 0;
}

int run_solve(const std::string& in_path, std::uint64_t seed,
              bool print_solution) {
  const bcqp::BlockQp problem = bcqp::read_problem(in_path);
  const bcqp::QpSolution sol = bcqp::solve_qp(problem, seed);
  std::cout << "residual " << sol.residual << "\n";
  if (print_solution) {
    for (std::size_t i = 0; i < sol.x.size(); ++i)
      std::cout << "x[" << i + 1 << "] = " << sol.x[i] << "\n";
    for (std::size_t i = 0; i < sol.lambda.size(); ++i)
      std::cout << "lambda[" << i + 1 << "] = " << sol.lambda[i] << "\n";
  }
  return 0;
}

std::vector<bcqp::BenchRow> rows_from_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw bcqp::Error("cannot open config " + path);
  json config = json::parse(in);
  if (config.is_object() && config.contains("rows")) config = config["rows"];
  if (!config.is_array())
    throw bcqp::Error("bench config must be an array of rows");

  std::vector<bcqp::BenchRow> rows;
  for (const json& item : config) {
    bcqp::BenchRow row;
    row.n = item.at("vars").get<int>();
    row.blocks = bcqp::parse_block_spec(item.at("blocks").get<std::string>());
    row.density = item.value("density", 1.0);
    row.instances = item.value("instances", 10);
    row.seed = item.value("seed", std::uint64_t{0});
    row.baseline = item.value("baseline", false);
    rows.push_back(std::move(row));
  }
  return rows;
}

int run_bench_cmd(const std::string& config_path, int n,
                  const std::string& blocks, double density, int instances,
                  std::uint64_t seed, bool baseline,
                  const std::string& csv_path) {
  std::vector<bcqp::BenchRow> rows;
  if (!config_path.empty()) {
    rows = rows_from_config(config_path);
  } else {
    if (n <= 0 || blocks.empty())
      throw CLI::ValidationError("bench",
                                 "either --config or --vars and --blocks are required");
    bcqp::BenchRow row;
    row.n = n;
    row.blocks = bcqp::parse_block_spec(blocks);
    row.density = density;
    row.instances = instances;
    row.seed = seed;
    row.baseline = baseline;
    rows.push_back(std::move(row));
  }

  const std::vector<bcqp::NnzReport> reports = bcqp::run_bench(rows, &std::cerr);
  if (csv_path.empty() || csv_path == "-") {
    bcqp::write_csv(reports, std::cout);
  } else {
    std::ofstream out(csv_path);
    if (!out) throw bcqp::Error("cannot open " + csv_path + " for writing");
    bcqp::write_csv(reports, out);
  }
  for (const bcqp::NnzReport& r : reports)
    if (!r.error.empty()) throw bcqp::Error("row " + r.block_spec + ": " + r.error);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Block-constrained QP factorization benchmark"};
  app.require_subcommand(1);

  int vars = 0;
  std::string blocks;
  double density = 1.0;
  std::uint64_t seed = 0;
  std::string out_path, in_path, stats_path, config_path, csv_path;
  std::string strategy = "structured";
  int instances = 10;
  bool baseline = false;
  bool print_solution = false;

  CLI::App* generate = app.add_subcommand("generate", "Generate a random problem file");
  generate->add_option("--vars", vars, "Number of variables")->required();
  generate->add_option("--blocks", blocks, "Block spec, e.g. 10x(50x10)")->required();
  generate->add_option("--density", density, "Hessian density in (0,1]");
  generate->add_option("--seed", seed, "Random seed");
  generate->add_option("--out", out_path, "Output path (default stdout)");

  CLI::App* factorize = app.add_subcommand("factorize", "Factorize a problem file");
  factorize->add_option("--in", in_path, "BLOCKQP v1 input file")->required();
  factorize->add_option("--strategy", strategy, "structured or bbk")
      ->check(CLI::IsMember({"structured", "bbk"}));
  factorize->add_option("--seed", seed, "Random seed for block selection");
  factorize->add_option("--stats-out", stats_path, "Stats JSON path (default stdout)");

  CLI::App* solve = app.add_subcommand("solve", "Solve the QP in a problem file");
  solve->add_option("--in", in_path, "BLOCKQP v1 input file")->required();
  solve->add_option("--seed", seed, "Random seed for block selection");
  solve->add_flag("--print-solution", print_solution, "Print x and lambda");

  CLI::App* bench = app.add_subcommand("bench", "Run a benchmark batch");
  bench->add_option("--config", config_path, "JSON config with benchmark rows");
  bench->add_option("--vars", vars, "Number of variables (inline row)");
  bench->add_option("--blocks", blocks, "Block spec (inline row)");
  bench->add_option("--density", density, "Hessian density in (0,1]");
  bench->add_option("--instances", instances, "Instances per row");
  bench->add_option("--seed", seed, "Base seed");
  bench->add_flag("--baseline", baseline, "Also run the whole-matrix BBK baseline");
  bench->add_option("--csv-out", csv_path, "CSV output path (default stdout)");

  CLI::App* predict = app.add_subcommand("predict-nnz", "Closed-form nnz(L) for dense H");
  predict->add_option("--vars", vars, "Number of variables")->required();
  predict->add_option("--blocks", blocks, "Block spec")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (generate->parsed())
      return run_generate(vars, blocks, density, seed, out_path);
    if (factorize->parsed())
      return run_factorize(in_path, strategy, seed, stats_path);
    if (solve->parsed()) return run_solve(in_path, seed, print_solution);
    if (bench->parsed())
      return run_bench_cmd(config_path, vars, blocks, density, instances, seed,
                           baseline, csv_path);
    if (predict->parsed()) {
      std::cout << bcqp::predict_nnz_dense_h(vars, bcqp::parse_block_spec(blocks))
                << "\n";
      return 0;
    }
  } catch (const CLI::Error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const bcqp::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const bcqp::InvariantError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const bcqp::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return 0;
}
