#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pdsw {

/// Unnormalized uniform empirical measure on the real line: unit mass per atom.
struct EmpiricalMeasure1D {
  std::vector<double> atoms;

  std::size_t mass() const noexcept { return atoms.size(); }
};

/// 1-Wasserstein distance between equal-mass empirical measures: the l1
/// distance between the sorted atom vectors. Throws ArgumentError on unequal mass.
double w1_sorted(std::span<const double> mu, std::span<const double> nu);
double w1_sorted(const EmpiricalMeasure1D& mu, const EmpiricalMeasure1D& nu);

/// Same quantity, but the inputs must already be sorted ascending.
double w1_presorted(std::span<const double> mu, std::span<const double> nu) noexcept;

inline constexpr std::size_t kAssignmentOracleCap = 8;

/// Minimum over all bijections of sum |x_i - y_sigma(i)|, by enumeration.
/// Only for |mu| = |nu| <= kAssignmentOracleCap.
double w1_assignment_oracle(std::span<const double> mu, std::span<const double> nu);
double w1_assignment_oracle(const EmpiricalMeasure1D& mu, const EmpiricalMeasure1D& nu);

}  // namespace pdsw
