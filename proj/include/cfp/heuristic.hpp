#pragma once

#include <chrono>
#include <cstdint>
#include <vector>

#include "cfp/instance.hpp"
#include "cfp/solution.hpp"

namespace cfp {

struct SearchConfig {
  int restarts = 50;
  std::chrono::milliseconds time_budget{5000};
  std::uint64_t rng_seed = 1;
  Regime regime = Regime::NoResidual;
};

/// Part labels maximizing efficacy for a fixed machine grouping (labels
/// 1..c, all used). Runs the parametric iteration over the separable part
/// choice until its value reaches zero.
Solution optimal_part_placement(const Instance& inst, const std::vector<int>& machine_cell, int c, Regime regime);

/// Multi-start hill climbing over machine groupings with parts always placed
/// optimally. Moves: relocate a machine to another or a new cell, merge two
/// cells, split a cell into its best two-way partition. Only strict
/// efficacy improvements are accepted. With a binding restart count the
/// result depends only on the seed.
Solution heuristic_solve(const Instance& inst, const SearchConfig& cfg);

}  // namespace cfp
