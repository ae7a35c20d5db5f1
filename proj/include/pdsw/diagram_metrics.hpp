#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pdsw/diagram.hpp"

namespace pdsw {

/// Pairs of (index into d1, index into d2); unlisted points go to the diagonal.
struct PartialMatching {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
};

struct MetricOptions {
  /// Upper bound on |d1| + |d2| for the exact assignment.
  std::size_t size_cap = 64;
};

struct DiagramDistance {
  double value = 0.0;
  PartialMatching matching;
};

/// d_p with l-infinity ground cost: p-th root of the optimal partial matching
/// cost, unmatched points charged (persistence / 2)^p.
DiagramDistance diagram_distance_with_matching(const PersistenceDiagram& d1,
                                               const PersistenceDiagram& d2, unsigned p,
                                               const MetricOptions& options = {});
double diagram_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2, unsigned p,
                        const MetricOptions& options = {});

/// Bottleneck distance: smallest achievable maximum single cost.
double bottleneck(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                  const MetricOptions& options = {});

/// l-infinity distance from a point to the diagonal.
inline double diagonal_cost(DiagramPoint p) noexcept { return 0.5 * persistence(p); }

double linf_distance(DiagramPoint a, DiagramPoint b) noexcept;

}  // namespace pdsw
