#include "pdsw/wasserstein_line.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "pdsw/errors.hpp"

namespace pdsw {

namespace {

void require_equal_mass(std::size_t a, std::size_t b) {
  if (a != b) {
    throw ArgumentError("empirical measures have unequal mass (" + std::to_string(a) + " vs " +
                        std::to_string(b) + ")");
  }
}

}  // namespace

double w1_presorted(std::span<const double> mu, std::span<const double> nu) noexcept {
  double total = 0.0;
  for (std::size_t i = 0; i < mu.size(); ++i) total += std::abs(mu[i] - nu[i]);
  return total;
}

double w1_sorted(std::span<const double> mu, std::span<const double> nu) {
  require_equal_mass(mu.size(), nu.size());
  std::vector<double> x(mu.begin(), mu.end());
  std::vector<double> y(nu.begin(), nu.end());
  std::stable_sort(x.begin(), x.end());
  std::stable_sort(y.begin(), y.end());
  return w1_presorted(x, y);
}

double w1_sorted(const EmpiricalMeasure1D& mu, const EmpiricalMeasure1D& nu) {
  return w1_sorted(std::span<const double>(mu.atoms), std::span<const double>(nu.atoms));
}

double w1_assignment_oracle(std::span<const double> mu, std::span<const double> nu) {
  require_equal_mass(mu.size(), nu.size());
  if (mu.size() > kAssignmentOracleCap) {
    throw ArgumentError("assignment oracle is capped at " + std::to_string(kAssignmentOracleCap) +
                        " atoms");
  }
  std::vector<std::size_t> perm(nu.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  double best = mu.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  do {
    double cost = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) cost += std::abs(mu[i] - nu[perm[i]]);
    best = std::min(best, cost);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double w1_assignment_oracle(const EmpiricalMeasure1D& mu, const EmpiricalMeasure1D& nu) {
  return w1_assignment_oracle(std::span<const double>(mu.atoms),
                              std::span<const double>(nu.atoms));
}

}  // namespace pdsw
