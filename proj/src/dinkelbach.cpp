#include "cfp/dinkelbach.hpp"

#include <fstream>
#include <thread>

#include "cfp/error.hpp"
#include "cfp/two_index_model.hpp"

namespace cfp {

SubproblemResult PartitionBnbSubsolver::maximize(const Instance& inst, const Rational& lambda, Regime regime,
                                                 const Solution& incumbent, const Budget& budget) {
  return solve_subproblem(inst, lambda, regime, incumbent, budget, options_);
}

SubproblemResult LpExportSubsolver::maximize(const Instance& inst, const Rational& lambda, Regime regime,
                                             const Solution& incumbent, const Budget& budget) {
  const auto start = std::chrono::steady_clock::now();
  ++iteration_;
  const LinearModel model = build_model(inst, lambda, regime);
  std::filesystem::path lp_path = stem_;
  lp_path += ".iter" + std::to_string(iteration_) + ".lp";
  {
    std::ofstream out(lp_path);
    if (!out) throw Error("cannot write '" + lp_path.string() + "'");
    out << export_lp(model);
  }
  written_.push_back(lp_path);

  SubproblemResult result;
  result.best = incumbent;
  result.value = scaled_objective(inst, incumbent, lambda);
  const auto text = wait_(lp_path, budget);
  if (!text) {
    result.exhausted = true;
  } else {
    const RelationAssignment assign = assignment_from_values(inst, read_variable_values(*text));
    if (!satisfies(model, assign)) throw Error("external solution violates the model in '" + lp_path.string() + "'");
    Solution decoded = decode(inst, assign, regime);
    const std::int64_t value = objective_value(model, assign);
    if (value > result.value) {
      result.best = canonicalize(decoded);
      result.value = value;
    }
  }
  result.stats.time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return result;
}

std::optional<std::string> LpExportSubsolver::poll_values_file(const std::filesystem::path& lp_path,
                                                               const Budget& budget) {
  std::filesystem::path values = lp_path;
  values += ".values";
  for (;;) {
    if (std::filesystem::exists(values)) {
      std::ifstream in(values);
      return std::string(std::istreambuf_iterator<char>(in), {});
    }
    if (budget.expired()) return std::nullopt;
    std::this_thread::sleep_for(std::chrono::milliseconds(200));
  }
}

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::TimeLimit: return "TimeLimit";
    case SolveStatus::Infeasible: return "Infeasible";
  }
  return "?";
}

std::uint64_t SolveOutcome::total_nodes() const {
  std::uint64_t n = 0;
  for (const auto& h : history) n += h.stats.nodes;
  return n;
}

Seed seed_from(const Instance& inst, Regime regime, const SeedSource& source) {
  switch (source.kind) {
    case SeedKind::Zero: return {Rational(0), std::nullopt};
    case SeedKind::Literature: return {source.literature, std::nullopt};
    case SeedKind::Heuristic: {
      SearchConfig cfg = source.heuristic;
      cfg.regime = regime;
      Solution sol = heuristic_solve(inst, cfg);
      const Rational lambda = sol.efficacy;
      return {lambda, std::move(sol)};
    }
  }
  return {};
}

SolveOutcome dinkelbach_solve(const Instance& inst, Regime regime, const Seed& seed, Subsolver& subsolver,
                              const Budget& budget, const IterationLogger& log) {
  if (seed.lambda < Rational(0) || seed.lambda > Rational(1)) throw Error("seed lambda must lie in [0, 1]");

  Solution best = single_cell_solution(inst);
  if (seed.solution && check_feasible(inst, *seed.solution, regime).feasible) {
    Solution s = *seed.solution;
    refresh(inst, s);
    if (s.efficacy > best.efficacy) best = std::move(s);
  }

  SolveOutcome outcome;
  Rational lambda = seed.lambda;
  for (;;) {
    SubproblemResult res = subsolver.maximize(inst, lambda, regime, best, budget);
    outcome.history.push_back({lambda, res.value, res.stats});
    if (log)
      log("iter=" + std::to_string(outcome.iterations()) + " lambda=" + lambda.str() + " F=" +
          std::to_string(res.value) + " nodes=" + std::to_string(res.stats.nodes) +
          " time_ms=" + std::to_string(res.stats.time_ms));
    if (res.best.efficacy > best.efficacy) best = res.best;

    if (res.exhausted) {
      outcome.status = SolveStatus::TimeLimit;
      outcome.lambda_final = best.efficacy;
      outcome.solution = std::move(best);
      return outcome;
    }
    if (res.value == 0) {
      outcome.status = SolveStatus::Optimal;
      outcome.lambda_final = lambda;
      outcome.solution = std::move(res.best);
      return outcome;
    }
    lambda = res.best.efficacy;
  }
}

}  // namespace cfp
