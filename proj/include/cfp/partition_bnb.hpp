#pragma once

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "cfp/instance.hpp"
#include "cfp/rational.hpp"
#include "cfp/solution.hpp"

namespace cfp {

/// Per-entry contribution to the scaled subproblem objective for
/// lambda = num/den: den for a one, -num for a zero. The objective of a
/// grouping is the sum of weights of all in-cell entries minus num * n1.
struct WeightMatrix {
  int m = 0;
  int p = 0;
  std::int64_t q = 1;      // lambda denominator
  std::int64_t pnum = 0;   // lambda numerator
  std::int64_t n1 = 0;
  std::vector<std::int64_t> w;            // m * p, row-major
  std::vector<std::int64_t> pos_col_sums;  // per part, sum of positive weights

  std::int64_t at(int i, int j) const { return w[static_cast<std::size_t>(i) * p + j]; }
  std::int64_t constant() const { return -pnum * n1; }
};

WeightMatrix make_weights(const Instance& inst, const Rational& lambda);

/// Scaled objective den * n1_in - num * (n0_in + n1) of a solution.
std::int64_t scaled_objective(const Instance& inst, const Solution& sol, const Rational& lambda);

struct PartAssignment {
  std::vector<int> part_cell;
  std::int64_t total = 0;  // sum of per-part contributions, constant excluded
  bool feasible = true;
};

/// Optimal part labels for a fixed machine grouping (labels 1..c, every
/// label used).
///
/// AllowResidual: each part goes to its best cell when that contribution is
/// positive, otherwise residual; ties go to the lowest label. NoResidual:
/// greedy best cell, then if some cell received no part, a minimum-loss
/// matching of cells to distinct covering parts. Infeasible when c > p.
PartAssignment best_part_assignment(const WeightMatrix& weights, std::span<const int> machine_cell, int c,
                                    Regime regime);

/// Partial machine grouping in restricted-growth form. `rgs[t]` is the
/// 1-based label of the t-th machine in `order`.
struct SearchNode {
  std::vector<int> order;  // machine visiting order
  std::vector<int> rgs;    // labels of order[0..depth)
  int cells() const;
  int depth() const { return static_cast<int>(rgs.size()); }
};

/// Upper bound on the scaled objective of any completion of `node`: each part
/// takes the best of its existing cell sums (or 0) plus the positive weights
/// of the machines not yet placed.
std::int64_t node_bound(const WeightMatrix& weights, const SearchNode& node);

/// Wall-clock and node limits shared by the search routines.
struct Budget {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::optional<std::uint64_t> node_limit;

  static Budget unlimited() { return {}; }
  static Budget seconds(double s);
  bool expired() const { return deadline && std::chrono::steady_clock::now() >= *deadline; }
};

struct SubproblemStats {
  std::uint64_t nodes = 0;
  std::uint64_t pruned_bound = 0;
  std::uint64_t pruned_voids = 0;
  std::uint64_t leaves = 0;
  int max_depth = 0;
  std::int64_t time_ms = 0;
};

struct SubproblemOptions {
  bool bound_pruning = true;
  bool void_pruning = true;
  int workers = 1;
};

struct SubproblemResult {
  Solution best;
  std::int64_t value = std::numeric_limits<std::int64_t>::min();
  bool exhausted = false;
  SubproblemStats stats;
};

/// Maximizes den * n1_in - num * (n0_in + n1) over all solutions feasible
/// under `regime` by depth-first search over machine partitions.
///
/// `incumbent` must be feasible; only strictly better solutions replace it,
/// so when nothing beats it the result is the incumbent with its value.
/// Machines are branched densest row first; labels are capped at min(m, p)
/// under NoResidual. On budget exhaustion the best found is returned with
/// `exhausted` set.
SubproblemResult solve_subproblem(const Instance& inst, const Rational& lambda, Regime regime,
                                  const Solution& incumbent, const Budget& budget,
                                  const SubproblemOptions& options = {});

/// Machine visiting order: decreasing row sum, ties by index.
std::vector<int> branching_order(const Instance& inst);

}  // namespace cfp
