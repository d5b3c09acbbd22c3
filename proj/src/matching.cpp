#include "cfp/matching.hpp"

#include <limits>

#include "cfp/error.hpp"

namespace cfp {

Assignment min_cost_assignment(const std::vector<std::int64_t>& cost, int rows, int cols) {
  if (rows > cols) throw Error("assignment needs rows <= cols");
  if (static_cast<std::size_t>(rows) * cols != cost.size()) throw Error("cost matrix size mismatch");
  constexpr std::int64_t inf = std::numeric_limits<std::int64_t>::max() / 4;

  // 1-based arrays; column 0 is the virtual start.
  std::vector<std::int64_t> u(rows + 1, 0), v(cols + 1, 0);
  std::vector<int> row_of_col(cols + 1, 0), way(cols + 1, 0);
  for (int r = 1; r <= rows; ++r) {
    row_of_col[0] = r;
    int col = 0;
    std::vector<std::int64_t> minv(cols + 1, inf);
    std::vector<char> used(cols + 1, 0);
    do {
      used[col] = 1;
      const int row = row_of_col[col];
      std::int64_t delta = inf;
      int next = 0;
      for (int j = 1; j <= cols; ++j) {
        if (used[j]) continue;
        const std::int64_t cur = cost[static_cast<std::size_t>(row - 1) * cols + (j - 1)] - u[row] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = col;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          next = j;
        }
      }
      for (int j = 0; j <= cols; ++j) {
        if (used[j]) {
          u[row_of_col[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      col = next;
    } while (row_of_col[col] != 0);
    do {
      const int prev = way[col];
      row_of_col[col] = row_of_col[prev];
      col = prev;
    } while (col != 0);
  }

  Assignment out;
  out.col_of_row.assign(rows, -1);
  for (int j = 1; j <= cols; ++j)
    if (row_of_col[j] != 0) out.col_of_row[row_of_col[j] - 1] = j - 1;
  for (int r = 0; r < rows; ++r) out.cost += cost[static_cast<std::size_t>(r) * cols + out.col_of_row[r]];
  return out;
}

}  // namespace cfp
