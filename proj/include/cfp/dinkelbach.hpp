#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cfp/heuristic.hpp"
#include "cfp/instance.hpp"
#include "cfp/partition_bnb.hpp"
#include "cfp/rational.hpp"
#include "cfp/solution.hpp"

namespace cfp {

/// Exact maximizer of the scaled objective den * n1_in - num * (n0_in + n1)
/// for one parameter value.
class Subsolver {
public:
  virtual ~Subsolver() = default;
  virtual SubproblemResult maximize(const Instance& inst, const Rational& lambda, Regime regime,
                                    const Solution& incumbent, const Budget& budget) = 0;
};

/// Native branch-and-bound over machine partitions.
class PartitionBnbSubsolver : public Subsolver {
public:
  explicit PartitionBnbSubsolver(SubproblemOptions options = {}) : options_(options) {}
  SubproblemResult maximize(const Instance& inst, const Rational& lambda, Regime regime, const Solution& incumbent,
                            const Budget& budget) override;

private:
  SubproblemOptions options_;
};

/// File-level round trip through an external MILP solver: each call writes
/// the model as `<stem>.iter<k>.lp` and hands the path to `wait_for_values`,
/// which returns the text of a `name value` solution for it, or nothing when
/// the budget ran out.
class LpExportSubsolver : public Subsolver {
public:
  using Waiter = std::function<std::optional<std::string>(const std::filesystem::path& lp_path, const Budget&)>;

  LpExportSubsolver(std::filesystem::path stem, Waiter wait_for_values)
      : stem_(std::move(stem)), wait_(std::move(wait_for_values)) {}

  SubproblemResult maximize(const Instance& inst, const Rational& lambda, Regime regime, const Solution& incumbent,
                            const Budget& budget) override;

  const std::vector<std::filesystem::path>& written() const { return written_; }

  /// Polls for `<lp_path>.values` until it exists or the budget expires.
  static std::optional<std::string> poll_values_file(const std::filesystem::path& lp_path, const Budget& budget);

private:
  std::filesystem::path stem_;
  Waiter wait_;
  int iteration_ = 0;
  std::vector<std::filesystem::path> written_;
};

enum class SolveStatus { Optimal, TimeLimit, Infeasible };

std::string_view to_string(SolveStatus s);

struct IterationRecord {
  Rational lambda;
  std::int64_t value = 0;
  SubproblemStats stats;
};

struct SolveOutcome {
  SolveStatus status = SolveStatus::TimeLimit;
  std::optional<Solution> solution;
  Rational lambda_final;
  std::vector<IterationRecord> history;

  int iterations() const { return static_cast<int>(history.size()); }
  std::uint64_t total_nodes() const;
};

/// Starting parameter plus, when known, a solution that attains it.
struct Seed {
  Rational lambda;
  std::optional<Solution> solution;
};

enum class SeedKind { Zero, Literature, Heuristic };

struct SeedSource {
  SeedKind kind = SeedKind::Heuristic;
  Rational literature;  // used by SeedKind::Literature
  SearchConfig heuristic;
};

Seed seed_from(const Instance& inst, Regime regime, const SeedSource& source);

/// One `iter=<k> lambda=<num>/<den> F=<int> nodes=<int> time_ms=<int>` line
/// per iteration.
using IterationLogger = std::function<void(const std::string&)>;

/// Parametric iteration: solve max F(lambda); stop when the maximum is
/// exactly zero, otherwise move lambda to the efficacy of the maximizer.
/// Seeds above the optimum give a negative maximum and move lambda down once.
SolveOutcome dinkelbach_solve(const Instance& inst, Regime regime, const Seed& seed, Subsolver& subsolver,
                              const Budget& budget, const IterationLogger& log = {});

}  // namespace cfp
