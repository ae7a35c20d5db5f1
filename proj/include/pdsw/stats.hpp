#pragma once

#include <span>
#include <vector>

namespace pdsw {

/// Average ranks (1-based) with ties sharing their mean rank.
std::vector<double> ranks(std::span<const double> values);

/// Spearman rank correlation: Pearson correlation of the average ranks.
double spearman(std::span<const double> x, std::span<const double> y);

/// Locally weighted linear regression (tricube weights, `frac` of the points
/// per neighbourhood, no robustness passes), evaluated at each x.
std::vector<double> lowess(std::span<const double> x, std::span<const double> y, double frac = 2.0 / 3.0);

double median(std::vector<double> values);

}  // namespace pdsw
