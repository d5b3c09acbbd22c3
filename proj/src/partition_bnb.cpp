#include "cfp/partition_bnb.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

#include "cfp/error.hpp"
#include "cfp/matching.hpp"

namespace cfp {

namespace {

constexpr std::int64_t kNone = std::numeric_limits<std::int64_t>::min() / 4;

// Part labels from per-(cell, part) weight sums `sums` (c rows of p).
PartAssignment assign_parts(std::span<const std::int64_t> sums, int c, int p, Regime regime) {
  PartAssignment out;
  out.part_cell.assign(p, 0);
  if (regime == Regime::AllowResidual) {
    for (int j = 0; j < p; ++j) {
      std::int64_t best = 0;
      for (int k = 0; k < c; ++k) {
        const std::int64_t v = sums[static_cast<std::size_t>(k) * p + j];
        if (v > best) {
          best = v;
          out.part_cell[j] = k + 1;
        }
      }
      out.total += best;
    }
    return out;
  }

  if (c > p || c < 1) {
    out.feasible = false;
    return out;
  }
  std::vector<std::int64_t> best(p, kNone);
  std::vector<int> covered(c, 0);
  for (int j = 0; j < p; ++j) {
    for (int k = 0; k < c; ++k) {
      const std::int64_t v = sums[static_cast<std::size_t>(k) * p + j];
      if (v > best[j]) {
        best[j] = v;
        out.part_cell[j] = k + 1;
      }
    }
    out.total += best[j];
    ++covered[out.part_cell[j] - 1];
  }
  if (std::all_of(covered.begin(), covered.end(), [](int n) { return n > 0; })) return out;

  // Every cell needs a distinct representative part; the rest keep their
  // best cell. Loss of using part j for cell k is best_j - sum_kj.
  std::vector<std::int64_t> loss(static_cast<std::size_t>(c) * p);
  for (int k = 0; k < c; ++k)
    for (int j = 0; j < p; ++j)
      loss[static_cast<std::size_t>(k) * p + j] = best[j] - sums[static_cast<std::size_t>(k) * p + j];
  const Assignment match = min_cost_assignment(loss, c, p);
  for (int k = 0; k < c; ++k) out.part_cell[match.col_of_row[k]] = k + 1;
  out.total -= match.cost;
  return out;
}

struct Shared {
  std::atomic<std::int64_t> best_value;
  std::atomic<bool> stop{false};
  std::atomic<bool> exhausted{false};
  std::atomic<std::uint64_t> nodes{0};
  std::mutex mutex;
  std::vector<int> best_machines;  // by original machine index, labels 1..c
  std::vector<int> best_parts;
  int best_cells = 0;
  bool improved = false;
};

class Worker {
public:
  Worker(const WeightMatrix& w, const std::vector<int>& order, Regime regime, int cap, std::int64_t void_cap,
         const Budget& budget, const SubproblemOptions& options, Shared& shared)
      : w_(w), order_(order), regime_(regime), cap_(cap), void_cap_(void_cap), budget_(budget), options_(options),
        shared_(shared), m_(w.m), p_(w.p) {
    ccs_.assign(static_cast<std::size_t>(cap_) * p_, 0);
    zeros_.assign(static_cast<std::size_t>(cap_) * p_, 0);
    labels_.assign(m_, 0);
    top1_.assign(static_cast<std::size_t>(m_) * p_, 0);
    top2_.assign(static_cast<std::size_t>(m_) * p_, 0);
    top1_cell_.assign(static_cast<std::size_t>(m_) * p_, 0);
    future_.assign(m_ + 1, 0);
    for (int d = m_ - 1; d >= 0; --d) {
      std::int64_t s = 0;
      for (int j = 0; j < p_; ++j) s += std::max<std::int64_t>(w_.at(order_[d], j), 0);
      future_[d] = future_[d + 1] + s;
    }
  }

  // Replays a prefix of labels (0-based) and searches below it.
  void run(const std::vector<int>& prefix) {
    int cells = 0;
    for (std::size_t d = 0; d < prefix.size(); ++d) {
      apply(static_cast<int>(d), prefix[d]);
      cells = std::max(cells, prefix[d] + 1);
    }
    dfs(static_cast<int>(prefix.size()), cells);
    for (int d = static_cast<int>(prefix.size()) - 1; d >= 0; --d) undo(d, prefix[d]);
    flush_nodes();
  }

  SubproblemStats stats;

private:
  void apply(int d, int label) {
    const int i = order_[d];
    labels_[d] = label;
    std::int64_t* row = &ccs_[static_cast<std::size_t>(label) * p_];
    int* zrow = &zeros_[static_cast<std::size_t>(label) * p_];
    for (int j = 0; j < p_; ++j) {
      const std::int64_t v = w_.at(i, j);
      row[j] += v;
      zrow[j] += v != w_.q ? 1 : 0;
    }
  }

  void undo(int d, int label) {
    const int i = order_[d];
    std::int64_t* row = &ccs_[static_cast<std::size_t>(label) * p_];
    int* zrow = &zeros_[static_cast<std::size_t>(label) * p_];
    for (int j = 0; j < p_; ++j) {
      const std::int64_t v = w_.at(i, j);
      row[j] -= v;
      zrow[j] -= v != w_.q ? 1 : 0;
    }
  }

  void flush_nodes() {
    shared_.nodes.fetch_add(pending_nodes_, std::memory_order_relaxed);
    pending_nodes_ = 0;
  }

  bool out_of_budget() {
    if (shared_.stop.load(std::memory_order_relaxed)) return true;
    if ((stats.nodes & 1023) != 0) return false;
    flush_nodes();
    const bool over_nodes =
        budget_.node_limit && shared_.nodes.load(std::memory_order_relaxed) >= *budget_.node_limit;
    if (over_nodes || budget_.expired()) {
      shared_.exhausted = true;
      shared_.stop = true;
      return true;
    }
    return false;
  }

  std::int64_t best() const { return shared_.best_value.load(std::memory_order_relaxed); }

  void dfs(int d, int cells) {
    if (out_of_budget()) return;
    ++stats.nodes;
    ++pending_nodes_;
    stats.max_depth = std::max(stats.max_depth, d);
    if (d == m_) {
      leaf(cells);
      return;
    }

    const int i = order_[d];
    std::int64_t* t1 = &top1_[static_cast<std::size_t>(d) * p_];
    std::int64_t* t2 = &top2_[static_cast<std::size_t>(d) * p_];
    int* t1c = &top1_cell_[static_cast<std::size_t>(d) * p_];
    for (int j = 0; j < p_; ++j) {
      std::int64_t a = kNone, b = kNone;
      int ac = -1;
      for (int k = 0; k < cells; ++k) {
        const std::int64_t v = ccs_[static_cast<std::size_t>(k) * p_ + j];
        if (v > a) {
          b = a;
          a = v;
          ac = k;
        } else if (v > b) {
          b = v;
        }
      }
      t1[j] = a;
      t2[j] = b;
      t1c[j] = ac;
    }

    const std::int64_t base = future_[d + 1] + w_.constant();
    const int max_label = std::min(cells + 1, cap_);
    for (int l = 0; l < max_label; ++l) {
      if (options_.bound_pruning) {
        std::int64_t bound = base;
        const std::int64_t* row = &ccs_[static_cast<std::size_t>(l) * p_];
        for (int j = 0; j < p_; ++j) {
          const std::int64_t own = (l < cells ? row[j] : 0) + w_.at(i, j);
          const std::int64_t other = t1c[j] == l ? t2[j] : t1[j];
          bound += std::max({own, other, std::int64_t{0}});
        }
        if (bound <= best()) {
          ++stats.pruned_bound;
          continue;
        }
      }
      apply(d, l);
      const int next_cells = std::max(cells, l + 1);
      if (void_prune(d + 1, next_cells)) {
        ++stats.pruned_voids;
      } else {
        dfs(d + 1, next_cells);
      }
      undo(d, l);
      if (shared_.stop.load(std::memory_order_relaxed)) return;
    }
  }

  // Every completion with efficacy above lambda has at most void_cap_ voids.
  // When no part can escape to a new cell, each part carries at least the
  // zeros of its emptiest existing cell.
  bool void_prune(int depth, int cells) {
    if (void_cap_ < 0 || !options_.void_pruning || regime_ != Regime::NoResidual) return false;
    if (depth == m_ || cells < cap_) return false;
    if (best() < 0) return false;
    std::int64_t lower = 0;
    for (int j = 0; j < p_; ++j) {
      int least = std::numeric_limits<int>::max();
      for (int k = 0; k < cells; ++k) least = std::min(least, zeros_[static_cast<std::size_t>(k) * p_ + j]);
      lower += least;
      if (lower > void_cap_) return true;
    }
    return false;
  }

  void leaf(int cells) {
    ++stats.leaves;
    const std::span<const std::int64_t> sums(ccs_.data(), static_cast<std::size_t>(cells) * p_);
    if (regime_ == Regime::NoResidual) {
      std::int64_t greedy = 0;
      for (int j = 0; j < p_; ++j) {
        std::int64_t b = kNone;
        for (int k = 0; k < cells; ++k) b = std::max(b, sums[static_cast<std::size_t>(k) * p_ + j]);
        greedy += b;
      }
      if (greedy + w_.constant() <= best()) return;
    }
    PartAssignment parts = assign_parts(sums, cells, p_, regime_);
    if (!parts.feasible) return;
    const std::int64_t value = parts.total + w_.constant();
    if (value <= best()) return;

    std::lock_guard lock(shared_.mutex);
    if (value <= shared_.best_value.load()) return;
    shared_.best_value = value;
    shared_.best_machines.assign(m_, 0);
    for (int d = 0; d < m_; ++d) shared_.best_machines[order_[d]] = labels_[d] + 1;
    shared_.best_parts = std::move(parts.part_cell);
    shared_.best_cells = cells;
    shared_.improved = true;
  }

  const WeightMatrix& w_;
  const std::vector<int>& order_;
  Regime regime_;
  int cap_;
  std::int64_t void_cap_;
  const Budget& budget_;
  const SubproblemOptions& options_;
  Shared& shared_;
  int m_;
  int p_;
  std::uint64_t pending_nodes_ = 0;
  std::vector<std::int64_t> ccs_;
  std::vector<int> zeros_;
  std::vector<int> labels_;
  std::vector<std::int64_t> top1_, top2_;
  std::vector<int> top1_cell_;
  std::vector<std::int64_t> future_;
};

// Restricted-growth prefixes of length `depth` with labels below `cap`.
void enumerate_prefixes(int depth, int cap, std::vector<int>& cur, int cells, std::vector<std::vector<int>>& out) {
  if (static_cast<int>(cur.size()) == depth) {
    out.push_back(cur);
    return;
  }
  for (int l = 0; l < std::min(cells + 1, cap); ++l) {
    cur.push_back(l);
    enumerate_prefixes(depth, cap, cur, std::max(cells, l + 1), out);
    cur.pop_back();
  }
}

}  // namespace

WeightMatrix make_weights(const Instance& inst, const Rational& lambda) {
  WeightMatrix w;
  w.m = inst.m;
  w.p = inst.p;
  w.q = lambda.den();
  w.pnum = lambda.num();
  w.n1 = inst.n1;
  w.w.resize(static_cast<std::size_t>(inst.m) * inst.p);
  w.pos_col_sums.assign(inst.p, 0);
  for (int i = 0; i < inst.m; ++i) {
    for (int j = 0; j < inst.p; ++j) {
      const std::int64_t v = inst.at(i, j) ? w.q : -w.pnum;
      w.w[static_cast<std::size_t>(i) * inst.p + j] = v;
      w.pos_col_sums[j] += std::max<std::int64_t>(v, 0);
    }
  }
  return w;
}

std::int64_t scaled_objective(const Instance& inst, const Solution& sol, const Rational& lambda) {
  const auto counts = count_cells(inst, sol.machine_cell, sol.part_cell);
  return lambda.den() * counts.n1_in - lambda.num() * (counts.n0_in + inst.n1);
}

PartAssignment best_part_assignment(const WeightMatrix& weights, std::span<const int> machine_cell, int c,
                                    Regime regime) {
  if (static_cast<int>(machine_cell.size()) != weights.m) throw Error("machine label count mismatch");
  std::vector<std::int64_t> sums(static_cast<std::size_t>(std::max(c, 0)) * weights.p, 0);
  for (int i = 0; i < weights.m; ++i) {
    const int k = machine_cell[i];
    if (k < 1 || k > c) throw Error("machine label out of range in grouping");
    for (int j = 0; j < weights.p; ++j) sums[static_cast<std::size_t>(k - 1) * weights.p + j] += weights.at(i, j);
  }
  return assign_parts(sums, c, weights.p, regime);
}

int SearchNode::cells() const { return rgs.empty() ? 0 : *std::max_element(rgs.begin(), rgs.end()); }

std::int64_t node_bound(const WeightMatrix& weights, const SearchNode& node) {
  const int d = node.depth();
  const int c = node.cells();
  std::vector<std::int64_t> sums(static_cast<std::size_t>(c) * weights.p, 0);
  for (int t = 0; t < d; ++t)
    for (int j = 0; j < weights.p; ++j)
      sums[static_cast<std::size_t>(node.rgs[t] - 1) * weights.p + j] += weights.at(node.order[t], j);
  std::int64_t bound = weights.constant();
  for (int j = 0; j < weights.p; ++j) {
    std::int64_t best = 0;
    for (int k = 0; k < c; ++k) best = std::max(best, sums[static_cast<std::size_t>(k) * weights.p + j]);
    for (int t = d; t < weights.m; ++t) best += std::max<std::int64_t>(weights.at(node.order[t], j), 0);
    bound += best;
  }
  return bound;
}

Budget Budget::seconds(double s) {
  Budget b;
  b.deadline = std::chrono::steady_clock::now() +
               std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(s));
  return b;
}

std::vector<int> branching_order(const Instance& inst) {
  std::vector<int> order(inst.m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return inst.row_sum(a) > inst.row_sum(b); });
  return order;
}

SubproblemResult solve_subproblem(const Instance& inst, const Rational& lambda, Regime regime,
                                  const Solution& incumbent, const Budget& budget, const SubproblemOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  const WeightMatrix weights = make_weights(inst, lambda);
  const std::vector<int> order = branching_order(inst);
  const int cap = regime == Regime::NoResidual ? std::min(inst.m, inst.p) : inst.m;
  const std::int64_t void_cap = (lambda.num() > 0 && inst.n1 > 0) ? void_upper_bound(inst.n1, lambda) : -1;

  Shared shared;
  shared.best_value = scaled_objective(inst, incumbent, lambda);

  SubproblemResult result;
  const auto finish = [&](std::vector<SubproblemStats> parts) {
    for (const auto& s : parts) {
      result.stats.nodes += s.nodes;
      result.stats.pruned_bound += s.pruned_bound;
      result.stats.pruned_voids += s.pruned_voids;
      result.stats.leaves += s.leaves;
      result.stats.max_depth = std::max(result.stats.max_depth, s.max_depth);
    }
  };

  if (budget.expired() || (budget.node_limit && *budget.node_limit == 0)) {
    shared.exhausted = true;
  } else if (options.workers <= 1) {
    Worker worker(weights, order, regime, cap, void_cap, budget, options, shared);
    worker.run({});
    finish({worker.stats});
  } else {
    std::vector<std::vector<int>> tasks;
    std::vector<int> cur;
    int depth = 1;
    while (depth < inst.m) {
      tasks.clear();
      enumerate_prefixes(depth, cap, cur, 0, tasks);
      if (static_cast<int>(tasks.size()) >= 8 * options.workers) break;
      ++depth;
    }
    if (tasks.empty()) enumerate_prefixes(std::min(depth, inst.m), cap, cur, 0, tasks);

    std::atomic<std::size_t> next{0};
    std::vector<SubproblemStats> per_worker(options.workers);
    std::vector<std::thread> threads;
    for (int t = 0; t < options.workers; ++t) {
      threads.emplace_back([&, t] {
        Worker worker(weights, order, regime, cap, void_cap, budget, options, shared);
        for (std::size_t k = next++; k < tasks.size() && !shared.stop; k = next++) worker.run(tasks[k]);
        per_worker[t] = worker.stats;
      });
    }
    for (auto& th : threads) th.join();
    finish(per_worker);
  }

  if (shared.improved) {
    result.best = canonicalize(make_solution(inst, shared.best_machines, shared.best_parts, shared.best_cells));
    refresh(inst, result.best);
  } else {
    result.best = incumbent;
  }
  result.value = shared.best_value;
  result.exhausted = shared.exhausted;
  result.stats.time_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace cfp
