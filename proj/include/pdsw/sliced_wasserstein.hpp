#pragma once

#include <cstddef>
#include <numbers>
#include <vector>

#include "pdsw/diagram.hpp"

namespace pdsw {

/// Unit direction on the half-circle, angle in [-pi/2, pi/2].
class Direction {
 public:
  /// Throws ArgumentError outside the closed half-circle.
  explicit Direction(double angle);
  double angle() const noexcept { return angle_; }
  double x() const noexcept { return cos_; }
  double y() const noexcept { return sin_; }

 private:
  double angle_;
  double cos_;
  double sin_;
};

enum class SwMethod { exact, approx, numeric };

struct SwResult {
  double value = 0.0;
  SwMethod method = SwMethod::exact;
  std::size_t direction_count = 0;  // 0 for exact
};

/// Ascending projections onto `theta` of the points of `d` together with the
/// diagonal projections of the points of `augment`.
std::vector<double> project_and_sort(const PersistenceDiagram& d,
                                     const PersistenceDiagram& augment, Direction theta);

/// Direction sampling: M directions starting at -pi/2 with step pi/M, each
/// contributing (pi/M) * ||V1 - V2||_1, total divided by pi.
SwResult sw_approx(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                   std::size_t direction_count);

/// Midpoint variant of sw_approx (angles -pi/2 + (i + 1/2) pi/M). Test oracle.
SwResult sw_numeric_oracle(const PersistenceDiagram& d1, const PersistenceDiagram& d2,
                           std::size_t direction_count);

/// Exact integral over the half-circle by an angular sweep over all critical
/// angles at which two projections swap order. Points that share a projection
/// at the same critical angle (e.g. all diagonal projections at -pi/4) are
/// reordered as a block; inconsistent event orderings caused by near-collinear
/// input throw DegeneracyError, in which case perturb_general_position helps.
SwResult sw_exact(const PersistenceDiagram& d1, const PersistenceDiagram& d2);

enum class DirectionGrid { left_endpoint, midpoint };

/// Sorted projections of a diagram's points and of its diagonal projections for
/// every direction of a fixed grid. Two signatures on the same grid give the
/// approximate SW in O(M N) by merging, bit-identical to sw_approx.
class SlicedSignature {
 public:
  SlicedSignature(const PersistenceDiagram& d, std::size_t direction_count,
                  DirectionGrid grid = DirectionGrid::left_endpoint);

  std::size_t direction_count() const noexcept { return direction_count_; }
  std::size_t point_count() const noexcept { return point_count_; }
  DirectionGrid grid() const noexcept { return grid_; }

  const double* points(std::size_t direction) const noexcept {
    return points_.data() + direction * point_count_;
  }
  const double* diagonal(std::size_t direction) const noexcept {
    return diagonal_.data() + direction * point_count_;
  }

 private:
  std::size_t direction_count_;
  std::size_t point_count_;
  DirectionGrid grid_;
  std::vector<double> points_;
  std::vector<double> diagonal_;
};

/// Throws ArgumentError if the signatures use different grids.
double sw_from_signatures(const SlicedSignature& s1, const SlicedSignature& s2);

/// Unit vector for direction `index` of an M-direction grid. Angles are built
/// as -pi/2 + a, with (cos, sin) = (sin a, -cos a), so index 0 of the left
/// grid is exactly (0, -1).
void grid_direction(std::size_t index, std::size_t direction_count, DirectionGrid grid,
                    double& ux, double& uy) noexcept;

}  // namespace pdsw
