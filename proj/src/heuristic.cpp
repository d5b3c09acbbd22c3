#include "cfp/heuristic.hpp"

#include <algorithm>
#include <random>

#include "cfp/error.hpp"
#include "cfp/partition_bnb.hpp"

namespace cfp {

namespace {

// Relabels to restricted-growth form and returns the number of cells.
int normalize(std::vector<int>& labels) {
  std::vector<int> map(labels.size() + 2, 0);
  int next = 0;
  for (int& v : labels) {
    if (map[v] == 0) map[v] = ++next;
    v = map[v];
  }
  return next;
}

class LocalSearch {
public:
  LocalSearch(const Instance& inst, const SearchConfig& cfg)
      : inst_(inst), cfg_(cfg), deadline_(std::chrono::steady_clock::now() + cfg.time_budget) {}

  bool timed_out() const { return std::chrono::steady_clock::now() >= deadline_; }

  int max_cells() const { return cfg_.regime == Regime::NoResidual ? std::min(inst_.m, inst_.p) : inst_.m; }

  Solution evaluate(std::vector<int> labels) const {
    const int c = normalize(labels);
    return optimal_part_placement(inst_, labels, c, cfg_.regime);
  }

  // Hill-climbs from `start` until no move improves efficacy strictly.
  Solution climb(Solution cur) {
    bool improved = true;
    while (improved && !timed_out()) {
      improved = try_relocate(cur) || try_merge(cur) || try_split(cur);
    }
    return cur;
  }

private:
  bool accept(Solution& cur, Solution cand) const {
    if (cand.efficacy > cur.efficacy) {
      cur = std::move(cand);
      return true;
    }
    return false;
  }

  bool try_relocate(Solution& cur) const {
    const int c = cur.c;
    for (int i = 0; i < inst_.m; ++i) {
      const int own = cur.machine_cell[i];
      const bool alone = std::count(cur.machine_cell.begin(), cur.machine_cell.end(), own) == 1;
      for (int target = 1; target <= c + 1; ++target) {
        if (target == own) continue;
        if (target == c + 1 && (alone || c + 1 > max_cells())) continue;
        std::vector<int> labels = cur.machine_cell;
        labels[i] = target;
        if (accept(cur, evaluate(std::move(labels)))) return true;
      }
    }
    return false;
  }

  bool try_merge(Solution& cur) const {
    for (int a = 1; a <= cur.c; ++a) {
      for (int b = a + 1; b <= cur.c; ++b) {
        std::vector<int> labels = cur.machine_cell;
        for (int& v : labels)
          if (v == b) v = a;
        if (accept(cur, evaluate(std::move(labels)))) return true;
      }
    }
    return false;
  }

  // Best two-way split of one cell. Cells above 12 machines only try
  // splitting off single machines, which relocation to a new cell covers.
  bool try_split(Solution& cur) const {
    if (cur.c + 1 > max_cells()) return false;
    for (int k = 1; k <= cur.c; ++k) {
      std::vector<int> members;
      for (int i = 0; i < inst_.m; ++i)
        if (cur.machine_cell[i] == k) members.push_back(i);
      const int s = static_cast<int>(members.size());
      if (s < 2 || s > 12) continue;
      Solution best = cur;
      // Subsets that exclude members[0] move to the new cell.
      for (std::uint32_t mask = 1; mask < (1u << (s - 1)); ++mask) {
        std::vector<int> labels = cur.machine_cell;
        for (int t = 1; t < s; ++t)
          if (mask & (1u << (t - 1))) labels[members[t]] = cur.c + 1;
        Solution cand = evaluate(std::move(labels));
        if (cand.efficacy > best.efficacy) best = std::move(cand);
        if (timed_out()) break;
      }
      if (accept(cur, std::move(best))) return true;
    }
    return false;
  }

  const Instance& inst_;
  const SearchConfig& cfg_;
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace

Solution optimal_part_placement(const Instance& inst, const std::vector<int>& machine_cell, int c, Regime regime) {
  Rational lambda(0);
  for (;;) {
    const WeightMatrix weights = make_weights(inst, lambda);
    PartAssignment parts = best_part_assignment(weights, machine_cell, c, regime);
    if (!parts.feasible) throw Error("no feasible part placement for this grouping");
    Solution sol = make_solution(inst, machine_cell, std::move(parts.part_cell), c);
    if (parts.total + weights.constant() <= 0) return sol;
    lambda = sol.efficacy;
  }
}

Solution heuristic_solve(const Instance& inst, const SearchConfig& cfg) {
  if (cfg.restarts < 1) throw Error("restarts must be at least 1");
  if (cfg.regime == Regime::NoResidual && (inst.m == 1 || inst.p == 1)) return single_cell_solution(inst);

  LocalSearch search(inst, cfg);
  std::mt19937_64 rng(cfg.rng_seed);
  Solution best = search.evaluate(std::vector<int>(inst.m, 1));
  if (inst.m == 1) return best;

  for (int r = 0; r < cfg.restarts; ++r) {
    if (r > 0 && search.timed_out()) break;
    std::uniform_int_distribution<int> cell_count(1, search.max_cells());
    const int c = cell_count(rng);
    std::uniform_int_distribution<int> label(1, c);
    std::vector<int> labels(inst.m);
    for (int& v : labels) v = label(rng);
    Solution local = search.climb(search.evaluate(std::move(labels)));
    if (local.efficacy > best.efficacy) best = std::move(local);
  }
  return best;
}

}  // namespace cfp
