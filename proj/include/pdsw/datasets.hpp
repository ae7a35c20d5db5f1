#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "pdsw/diagram.hpp"

namespace pdsw {

struct Point2D {
  double x = 0.0;
  double y = 0.0;
};

/// Points in [0, 1)^2.
struct PointCloud2D {
  std::vector<Point2D> points;
};

/// Orbit parameters used as class labels.
inline constexpr double kOrbitParameters[] = {2.5, 3.5, 4.0, 4.1, 4.3};

/// Iterates x' = x + r y (1 - y) mod 1, y' = y + r x' (1 - x') mod 1 from
/// (x0, y0) and returns n points; the seed point is the first of them only
/// when `include_seed` is set.
PointCloud2D linked_twist_orbit(double r, double x0, double y0, std::size_t n,
                                bool include_seed = false);

/// 0-dimensional Rips (single-linkage) persistence: one (0, merge distance)
/// point per Euclidean MST edge in ascending order; the essential class is
/// dropped.
PersistenceDiagram rips_0dim_persistence(const PointCloud2D& cloud);

struct OrbitSample {
  PersistenceDiagram diagram;
  double r = 0.0;
  int class_index = 0;
  std::size_t orbit_index = 0;  // within its class
  std::uint64_t stream_seed = 0;
};

/// For each parameter r (class c) and orbit k < per_class, draws the initial
/// position from stream derive_seed(seed, c * per_class + k), iterates
/// `points_per_orbit` points and computes their 0-dimensional diagram.
std::vector<OrbitSample> generate_orbit_dataset(std::uint64_t seed, std::size_t per_class,
                                                std::size_t points_per_orbit,
                                                std::size_t workers = 1);

/// Label text for a parameter value ("2.5", "4", ...).
std::string format_label(double r);

/// Writes <out>/<label>/<k>.dgm for every sample plus <out>/manifest.tsv.
void write_orbit_dataset(const std::filesystem::path& out, const std::vector<OrbitSample>& samples,
                         std::uint64_t seed, std::size_t points_per_orbit);

struct ManifestEntry {
  std::string path;  // relative to the dataset root
  std::string label;
  std::uint64_t seed = 0;
  std::size_t points = 0;
};

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& dataset_root);

}  // namespace pdsw
