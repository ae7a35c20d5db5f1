#include "pdsw/assignment.hpp"

#include <limits>

#include "pdsw/errors.hpp"

namespace pdsw {

Assignment solve_assignment(const Eigen::MatrixXd& cost) {
  if (cost.rows() != cost.cols()) throw ArgumentError("assignment cost matrix must be square");
  const auto n = static_cast<std::size_t>(cost.rows());
  constexpr double inf = std::numeric_limits<double>::infinity();
  // 1-based potentials; column 0 is a virtual start column.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
  std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    match[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[j0] = 1;
      const std::size_t i0 = match[j0];
      double delta = inf;
      std::size_t j1 = 0;
      for (std::size_t j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    do {
      const std::size_t j1 = way[j0];
      match[j0] = match[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  Assignment result;
  result.column_of_row.resize(n);
  for (std::size_t j = 1; j <= n; ++j) result.column_of_row[match[j] - 1] = j - 1;
  // Sum the chosen entries directly rather than trusting the potentials.
  for (std::size_t i = 0; i < n; ++i) result.cost += cost(i, result.column_of_row[i]);
  return result;
}

bool has_perfect_matching(const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& allowed) {
  const auto n = static_cast<std::size_t>(allowed.rows());
  std::vector<std::ptrdiff_t> row_of_col(n, -1);
  std::vector<char> seen(n);
  // Kuhn's augmenting paths.
  auto augment = [&](auto&& self, std::size_t row) -> bool {
    for (std::size_t j = 0; j < n; ++j) {
      if (!allowed(row, j) || seen[j]) continue;
      seen[j] = 1;
      if (row_of_col[j] < 0 || self(self, static_cast<std::size_t>(row_of_col[j]))) {
        row_of_col[j] = static_cast<std::ptrdiff_t>(row);
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    if (!augment(augment, i)) return false;
  }
  return true;
}

}  // namespace pdsw
