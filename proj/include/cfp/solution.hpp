#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "cfp/instance.hpp"
#include "cfp/rational.hpp"

namespace cfp {

/// Cell-size regime.
///  - NoResidual: every machine and part sits in a cell; every cell has at
///    least one machine and one part (singletons allowed).
///  - AllowResidual: label 0 is allowed, cells may lack machines or parts.
enum class Regime { NoResidual, AllowResidual };

std::string_view to_string(Regime r);
/// Accepts "no-residual" / "allow-residual".
Regime parse_regime(std::string_view text);

/// Machine and part cell labels; 0 marks a residual element, 1..c a cell.
struct Solution {
  std::vector<int> machine_cell;
  std::vector<int> part_cell;
  int c = 0;
  int n1_in = 0;
  int n0_in = 0;
  Rational efficacy;

  friend bool operator==(const Solution&, const Solution&) = default;
};

struct CellCounts {
  int n1_in = 0;
  int n0_in = 0;
};

CellCounts count_cells(const Instance& inst, const std::vector<int>& machine_cell, const std::vector<int>& part_cell);

/// n1_in / (n1 + n0_in); 0 when the denominator vanishes (empty matrix).
Rational efficacy_from_counts(int n1, int n1_in, int n0_in);

/// Builds a solution, computing counts and efficacy. `c` < 0 means "largest
/// label used". Throws cfp::Error on size mismatch or labels outside 0..c.
Solution make_solution(const Instance& inst, std::vector<int> machine_cell, std::vector<int> part_cell, int c = -1);

/// Recomputes efficacy from the labels.
Rational efficacy(const Instance& inst, const Solution& sol);

/// Refreshes n1_in, n0_in and efficacy in place and returns the efficacy.
Rational refresh(const Instance& inst, Solution& sol);

/// All machines and parts in cell 1.
Solution single_cell_solution(const Instance& inst);

struct Feasibility {
  bool feasible = true;
  std::vector<std::string> violations;
};

Feasibility check_feasible(const Instance& inst, const Solution& sol, Regime regime);

/// Upper bound on voids of an optimal solution, given any solution of
/// efficacy tau: floor((1 - tau) / tau * n1). Throws for tau = 0.
std::int64_t void_upper_bound(std::int64_t n1, const Rational& tau);

/// Canonical relabeling.
///
/// Cells holding machines are numbered by first machine occurrence. A
/// residual machine becomes its own machine-only cell, and parts whose cell
/// has no machine are pooled into residual label 0. None of this changes the
/// counts, so efficacy is preserved; unused labels disappear.
Solution canonicalize(const Solution& sol);

/// Solution text: line 1 `c`, line 2 the m machine labels, line 3 the p part
/// labels. '#' comment lines are ignored.
Solution parse_solution(std::string_view text, const Instance& inst);

std::string write_solution(const Solution& sol);

Solution load_solution(const std::string& path, const Instance& inst);

/// `n1=<int> n1_in=<int> n0_in=<int> efficacy=<num>/<den> (<x.xxxx>)`,
/// with the fraction printed as raw counts n1_in/(n1 + n0_in).
std::string efficacy_report(const Instance& inst, const Solution& sol);

/// "n1_in/(n1+n0_in)" as raw counts.
std::string raw_efficacy(const Instance& inst, const Solution& sol);

}  // namespace cfp
