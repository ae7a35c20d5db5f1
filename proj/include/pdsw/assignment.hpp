#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Core>

namespace pdsw {

struct Assignment {
  double cost = 0.0;
  std::vector<std::size_t> column_of_row;
};

/// Minimum-cost perfect assignment on a square cost matrix (Hungarian method
/// with row/column potentials, O(n^3)).
Assignment solve_assignment(const Eigen::MatrixXd& cost);

/// True if the bipartite graph {(i, j) : allowed(i, j)} has a perfect matching.
bool has_perfect_matching(const Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>& allowed);

}  // namespace pdsw
