#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cfp/bench.hpp"
#include "cfp/dinkelbach.hpp"
#include "cfp/error.hpp"
#include "cfp/heuristic.hpp"
#include "cfp/instance.hpp"
#include "cfp/oracle.hpp"
#include "cfp/solution.hpp"
#include "cfp/two_index_model.hpp"

namespace cfp::cli {

namespace fs = std::filesystem;

namespace {

struct HeuristicFlags {
  double seconds = 5.0;
  int restarts = 50;
  std::uint64_t seed = 1;

  SearchConfig config(Regime regime) const {
    SearchConfig cfg;
    cfg.restarts = restarts;
    cfg.time_budget = std::chrono::milliseconds(static_cast<std::int64_t>(seconds * 1000));
    cfg.rng_seed = seed;
    cfg.regime = regime;
    return cfg;
  }

  void add_to(CLI::App* cmd) {
    cmd->add_option("--heuristic-time", seconds, "Heuristic time budget in seconds")->capture_default_str();
    cmd->add_option("--restarts", restarts, "Heuristic restarts")->capture_default_str()->check(CLI::PositiveNumber);
    cmd->add_option("--seed", seed, "Heuristic RNG seed")->capture_default_str();
  }
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  out << text;
}

std::string join(const std::vector<int>& xs) {
  if (xs.empty()) return "-";
  std::string s;
  for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? "," : "") + std::to_string(xs[k]);
  return s;
}

int cmd_validate(const std::vector<std::string>& paths, std::ostream& out) {
  std::vector<std::string> files;
  for (const auto& p : paths) {
    if (fs::is_directory(p)) {
      std::vector<std::string> found;
      for (const auto& e : fs::directory_iterator(p))
        if (e.is_regular_file() && e.path().extension() == ".cfp") found.push_back(e.path().string());
      std::sort(found.begin(), found.end());
      files.insert(files.end(), found.begin(), found.end());
    } else {
      files.push_back(p);
    }
  }
  int failed = 0;
  for (const auto& f : files) {
    try {
      const Instance inst = load_instance(f);
      const ValidationReport rep = validate_instance(inst);
      out << f << ": ok m=" << inst.m << " p=" << inst.p << " n1=" << rep.n1 << " density=" << rep.density.str()
          << " (" << format_fixed4(rep.density) << ") zero_rows=" << join(rep.zero_rows)
          << " zero_cols=" << join(rep.zero_cols) << "\n";
      for (const auto& w : rep.warnings) out << "  warning: " << w << "\n";
    } catch (const Error& e) {
      ++failed;
      out << f << ": error " << e.what() << "\n";
    }
  }
  out << "validated " << files.size() << " files: " << files.size() - failed << " ok, " << failed << " failed\n";
  return failed ? 1 : 0;
}

void print_feasibility(std::ostream& out, const Instance& inst, const Solution& sol) {
  for (Regime r : {Regime::NoResidual, Regime::AllowResidual}) {
    const Feasibility f = check_feasible(inst, sol, r);
    out << to_string(r) << ": " << (f.feasible ? "feasible" : "infeasible");
    for (std::size_t k = 0; k < f.violations.size(); ++k) out << (k ? "; " : " (") << f.violations[k];
    if (!f.violations.empty()) out << ")";
    out << "\n";
  }
}

Seed make_seed(const std::string& text, const Instance& inst, Regime regime, const HeuristicFlags& h) {
  if (text == "heuristic") return seed_from(inst, regime, {SeedKind::Heuristic, Rational(0), h.config(regime)});
  if (text == "zero") return seed_from(inst, regime, {SeedKind::Zero, Rational(0), {}});
  return seed_from(inst, regime, {SeedKind::Literature, parse_rational(text), {}});
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact cell formation solver (grouping efficacy, variable number of cells)", "cfp"};
  app.require_subcommand(1);

  std::vector<std::string> validate_paths;
  auto* validate = app.add_subcommand("validate", "Parse and check instance files or directories of .cfp files");
  validate->add_option("paths", validate_paths, "Instance files or directories")->required();

  std::string eff_instance, eff_solution;
  auto* efficacy_cmd = app.add_subcommand("efficacy", "Evaluate a solution file");
  efficacy_cmd->add_option("instance", eff_instance)->required();
  efficacy_cmd->add_option("solution", eff_solution)->required();

  std::string solve_instance, solve_regime = "no-residual", solve_seed = "heuristic", solve_backend = "internal",
                              solve_output;
  std::optional<double> solve_time;
  int solve_workers = 1;
  bool solve_quiet = false;
  HeuristicFlags solve_h;
  auto* solve = app.add_subcommand("solve", "Solve an instance to optimality");
  solve->add_option("instance", solve_instance)->required();
  solve->add_option("--regime", solve_regime)->check(CLI::IsMember({"no-residual", "allow-residual"}))
      ->capture_default_str();
  solve->add_option("--seed-lambda", solve_seed, "heuristic | zero | <rational> | <decimal>")->capture_default_str();
  solve->add_option("--time-limit", solve_time, "Seconds for the exact phase");
  solve->add_option("--backend", solve_backend)->check(CLI::IsMember({"internal", "lp-export"}))
      ->capture_default_str();
  solve->add_option("-o,--output", solve_output, "Solution file (default: instance path with .sol)");
  solve->add_option("--workers", solve_workers, "Search threads")->check(CLI::PositiveNumber)->capture_default_str();
  solve->add_flag("-q,--quiet", solve_quiet, "Suppress per-iteration lines");
  solve_h.add_to(solve);

  std::string oracle_instance, oracle_regime = "no-residual", oracle_output;
  OracleLimits oracle_limits;
  auto* oracle = app.add_subcommand("oracle", "Exhaustive search on tiny instances");
  oracle->add_option("instance", oracle_instance)->required();
  oracle->add_option("--regime", oracle_regime)->check(CLI::IsMember({"no-residual", "allow-residual"}))
      ->capture_default_str();
  oracle->add_option("--max-machines", oracle_limits.max_machines)->capture_default_str();
  oracle->add_option("--max-parts", oracle_limits.max_parts)->capture_default_str();
  oracle->add_option("-o,--output", oracle_output, "Write the optimal solution here");

  std::string bench_manifest, bench_csv_path;
  std::optional<double> bench_time;
  HeuristicFlags bench_h;
  int bench_workers = 1;
  auto* bench = app.add_subcommand("bench", "Solve every instance of a manifest and compare with expectations");
  bench->add_option("manifest", bench_manifest)->required();
  bench->add_option("--csv", bench_csv_path, "Write CSV results here");
  bench->add_option("--time-limit", bench_time, "Seconds per instance for the exact phase");
  bench->add_option("--workers", bench_workers)->check(CLI::PositiveNumber)->capture_default_str();
  bench_h.add_to(bench);

  std::string lp_instance, lp_regime = "no-residual", lp_lambda, lp_output;
  auto* export_lp_cmd = app.add_subcommand("export-lp", "Write the two-index model for one parameter value");
  export_lp_cmd->add_option("instance", lp_instance)->required();
  export_lp_cmd->add_option("--lambda", lp_lambda, "Parameter as rational or decimal")->required();
  export_lp_cmd->add_option("--regime", lp_regime)->check(CLI::IsMember({"no-residual", "allow-residual"}))
      ->capture_default_str();
  export_lp_cmd->add_option("-o,--output", lp_output, "LP file (default: stdout)");

  std::vector<const char*> argv{"cfp"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*validate) return cmd_validate(validate_paths, out);

    if (*efficacy_cmd) {
      const Instance inst = load_instance(eff_instance);
      const Solution sol = load_solution(eff_solution, inst);
      out << efficacy_report(inst, sol) << "\n";
      print_feasibility(out, inst, sol);
      return 0;
    }

    if (*solve) {
      const Instance inst = load_instance(solve_instance);
      const Regime regime = parse_regime(solve_regime);
      const auto start = std::chrono::steady_clock::now();
      const Seed seed = make_seed(solve_seed, inst, regime, solve_h);
      const Budget budget = solve_time ? Budget::seconds(*solve_time) : Budget::unlimited();
      fs::path sol_path = solve_output.empty() ? fs::path(solve_instance).replace_extension(".sol") : fs::path(solve_output);

      std::unique_ptr<Subsolver> sub;
      if (solve_backend == "lp-export") {
        fs::path stem = sol_path;
        stem.replace_extension();
        sub = std::make_unique<LpExportSubsolver>(stem, [&err](const fs::path& lp, const Budget& b) {
          err << "wrote " << lp.string() << "; solve it and write 'name value' lines to " << lp.string()
              << ".values\n";
          return LpExportSubsolver::poll_values_file(lp, b);
        });
      } else {
        sub = std::make_unique<PartitionBnbSubsolver>(SubproblemOptions{true, true, solve_workers});
      }
      IterationLogger log;
      if (!solve_quiet) log = [&out](const std::string& line) { out << line << "\n"; };
      const SolveOutcome outcome = dinkelbach_solve(inst, regime, seed, *sub, budget, log);
      const auto ms =
          std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
      if (!outcome.solution) {
        out << "status=" << to_string(outcome.status) << " time_ms=" << ms << "\n";
        return 0;
      }
      const Solution& sol = *outcome.solution;
      write_text(sol_path, write_solution(sol));
      out << "status=" << to_string(outcome.status) << " efficacy=" << raw_efficacy(inst, sol) << " ("
          << format_fixed4(sol.efficacy) << ") cells=" << sol.c << " iters=" << outcome.iterations()
          << " nodes=" << outcome.total_nodes() << " time_ms=" << ms << "\n";
      return 0;
    }

    if (*oracle) {
      const Instance inst = load_instance(oracle_instance);
      const OracleResult res = oracle_solve(inst, parse_regime(oracle_regime), oracle_limits);
      out << efficacy_report(inst, res.solution) << "\n";
      out << "cells=" << res.solution.c << " evaluated=" << res.evaluated << "\n";
      if (!oracle_output.empty()) write_text(oracle_output, write_solution(res.solution));
      return 0;
    }

    if (*bench) {
      const std::string text = [&] {
        std::ifstream in(bench_manifest);
        if (!in) throw Error("cannot open '" + bench_manifest + "'");
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
      }();
      const auto entries = parse_manifest(text, fs::path(bench_manifest).parent_path().string());
      BenchOptions options;
      options.time_limit_s = bench_time;
      options.heuristic = bench_h.config(Regime::NoResidual);
      options.subproblem.workers = bench_workers;
      const auto rows = run_bench(entries, options);
      out << bench_table(rows);
      if (!bench_csv_path.empty()) write_text(bench_csv_path, bench_csv(rows));
      return bench_exit_code(rows);
    }

    if (*export_lp_cmd) {
      const Instance inst = load_instance(lp_instance);
      const LinearModel model = build_model(inst, parse_rational(lp_lambda), parse_regime(lp_regime));
      const std::string text = export_lp(model);
      if (lp_output.empty())
        out << text;
      else
        write_text(lp_output, text);
      return 0;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace cfp::cli
