#pragma once

#include <cstdint>
#include <vector>

namespace cfp {

struct Assignment {
  std::vector<int> col_of_row;
  std::int64_t cost = 0;
};

/// Minimum-cost assignment of every row to a distinct column of a
/// rows x cols matrix (row-major), rows <= cols. Hungarian method with
/// potentials, O(rows^2 * cols).
Assignment min_cost_assignment(const std::vector<std::int64_t>& cost, int rows, int cols);

}  // namespace cfp
