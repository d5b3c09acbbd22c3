#pragma once

#include "cfp/instance.hpp"
#include "cfp/rational.hpp"
#include "cfp/solution.hpp"

namespace cfp {

struct OracleLimits {
  int max_machines = 7;
  int max_parts = 8;
};

struct OracleResult {
  Solution solution;
  Rational efficacy;
  std::uint64_t evaluated = 0;  // complete labelings examined
};

/// Exhaustive search: every restricted-growth machine partition times every
/// part labeling in {1..c}^p (NoResidual, cells without parts skipped) or
/// {0..c}^p (AllowResidual). Enumeration is lexicographic and only strict
/// improvements are kept, so the first maximal labeling wins. Throws
/// cfp::Error when the instance exceeds `limits`.
OracleResult oracle_solve(const Instance& inst, Regime regime, const OracleLimits& limits = {});

}  // namespace cfp
