#include "pdsw/diagram_metrics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Core>

#include "pdsw/assignment.hpp"
#include "pdsw/errors.hpp"

namespace pdsw {

double linf_distance(DiagramPoint a, DiagramPoint b) noexcept {
  return std::max(std::abs(a.birth - b.birth), std::abs(a.death - b.death));
}

namespace {

void check_cap(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
               const MetricOptions& options) {
  if (d1.size() + d2.size() > options.size_cap) {
    throw ArgumentError("diagram metric size cap exceeded: " +
                        std::to_string(d1.size() + d2.size()) + " > " +
                        std::to_string(options.size_cap));
  }
}

// Rows: d1 points then one diagonal slot per d2 point.
// Columns: d2 points then one diagonal slot per d1 point.
template <class Cost>
Eigen::MatrixXd augmented_costs(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                                Cost&& cost) {
  const std::size_t n1 = d1.size();
  const std::size_t n2 = d2.size();
  const auto n = static_cast<Eigen::Index>(n1 + n2);
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t i = 0; i < n1; ++i) {
    for (std::size_t j = 0; j < n2; ++j) c(i, j) = cost(linf_distance(d1[i], d2[j]));
    const double to_diag = cost(diagonal_cost(d1[i]));
    for (std::size_t j = n2; j < n1 + n2; ++j) c(i, j) = to_diag;
  }
  for (std::size_t j = 0; j < n2; ++j) {
    const double to_diag = cost(diagonal_cost(d2[j]));
    for (std::size_t i = n1; i < n1 + n2; ++i) c(i, j) = to_diag;
  }
  return c;
}

}  // namespace

DiagramDistance diagram_distance_with_matching(const PersistenceDiagram& d1,
                                               const PersistenceDiagram& d2, unsigned p,
                                               const MetricOptions& options) {
  if (p == 0) throw ArgumentError("diagram distance order p must be positive");
  check_cap(d1, d2, options);
  DiagramDistance out;
  if (d1.empty() && d2.empty()) return out;
  const double order = static_cast<double>(p);
  const auto costs = augmented_costs(d1, d2, [&](double c) { return p == 1 ? c : std::pow(c, order); });
  const Assignment a = solve_assignment(costs);
  out.value = p == 1 ? a.cost : std::pow(a.cost, 1.0 / order);
  for (std::size_t i = 0; i < d1.size(); ++i) {
    if (a.column_of_row[i] < d2.size()) out.matching.pairs.emplace_back(i, a.column_of_row[i]);
  }
  return out;
}

double diagram_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2, unsigned p,
                        const MetricOptions& options) {
  return diagram_distance_with_matching(d1, d2, p, options).value;
}

double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                  const MetricOptions& options) {
  check_cap(d1, d2, options);
  if (d1.empty() && d2.empty()) return 0.0;
  const Eigen::MatrixXd costs = augmented_costs(d1, d2, [](double c) { return c; });
  const std::size_t n1 = d1.size();
  const std::size_t n2 = d2.size();
  std::vector<double> candidates(costs.data(), costs.data() + costs.size());
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());

  const auto n = costs.rows();
  auto feasible = [&](double threshold) {
    Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> allowed(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const bool diag_diag = static_cast<std::size_t>(i) >= n1 && static_cast<std::size_t>(j) >= n2;
        allowed(i, j) = diag_diag || costs(i, j) <= threshold;
      }
    }
    return has_perfect_matching(allowed);
  };
  // Smallest feasible candidate; the largest candidate is always feasible.
  std::size_t lo = 0, hi = candidates.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (feasible(candidates[mid])) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  return candidates[lo];
}

}  // namespace pdsw
