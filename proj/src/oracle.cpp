#include "cfp/oracle.hpp"

#include <vector>

#include "cfp/error.hpp"

namespace cfp {

namespace {

class Enumerator {
public:
  Enumerator(const Instance& inst, Regime regime) : inst_(inst), regime_(regime) {
    machines_.assign(inst.m, 0);
    parts_.assign(inst.p, 0);
  }

  OracleResult run() {
    machine_level(0, 0);
    result_.solution = make_solution(inst_, best_machines_, best_parts_, best_c_);
    result_.efficacy = result_.solution.efficacy;
    return result_;
  }

private:
  void machine_level(int i, int cells) {
    if (i == inst_.m) {
      cells_ = cells;
      part_count_.assign(cells + 1, 0);
      part_level(0, 0, 0);
      return;
    }
    for (int label = 1; label <= cells + 1; ++label) {
      machines_[i] = label;
      machine_level(i + 1, std::max(cells, label));
    }
  }

  void part_level(int j, int n1_in, int n0_in) {
    if (j == inst_.p) {
      ++result_.evaluated;
      if (regime_ == Regime::NoResidual)
        for (int k = 1; k <= cells_; ++k)
          if (part_count_[k] == 0) return;
      const Rational value = efficacy_from_counts(inst_.n1, n1_in, n0_in);
      if (!have_best_ || value > best_value_) {
        have_best_ = true;
        best_value_ = value;
        best_machines_ = machines_;
        best_parts_ = parts_;
        best_c_ = cells_;
      }
      return;
    }
    const int first = regime_ == Regime::NoResidual ? 1 : 0;
    for (int label = first; label <= cells_; ++label) {
      int ones = 0, zeros = 0;
      if (label != 0)
        for (int i = 0; i < inst_.m; ++i)
          if (machines_[i] == label) (inst_.at(i, j) ? ones : zeros)++;
      parts_[j] = label;
      ++part_count_[label];
      part_level(j + 1, n1_in + ones, n0_in + zeros);
      --part_count_[label];
    }
  }

  const Instance& inst_;
  Regime regime_;
  std::vector<int> machines_, parts_, part_count_;
  int cells_ = 0;
  bool have_best_ = false;
  Rational best_value_;
  std::vector<int> best_machines_, best_parts_;
  int best_c_ = 0;
  OracleResult result_;
};

}  // namespace

OracleResult oracle_solve(const Instance& inst, Regime regime, const OracleLimits& limits) {
  if (inst.m > limits.max_machines || inst.p > limits.max_parts)
    throw Error("instance " + std::to_string(inst.m) + "x" + std::to_string(inst.p) +
                " exceeds the exhaustive search guard " + std::to_string(limits.max_machines) + "x" +
                std::to_string(limits.max_parts) + "; raise the limits explicitly to enumerate it");
  return Enumerator(inst, regime).run();
}

}  // namespace cfp
