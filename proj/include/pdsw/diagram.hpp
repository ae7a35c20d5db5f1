#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pdsw {

/// A (birth, death) pair. Valid points are finite with death >= birth.
struct DiagramPoint {
  double birth = 0.0;
  double death = 0.0;

  friend bool operator==(const DiagramPoint&, const DiagramPoint&) = default;
  friend auto operator<=>(const DiagramPoint&, const DiagramPoint&) = default;
};

/// death - birth.
inline double persistence(DiagramPoint p) noexcept { return p.death - p.birth; }

/// Orthogonal projection onto the diagonal {(x, x)}.
inline DiagramPoint project_diagonal(DiagramPoint p) noexcept {
  const double mid = 0.5 * (p.birth + p.death);
  return {mid, mid};
}

bool is_valid(DiagramPoint p) noexcept;

/// Finite multiset of diagram points, stored as a flat list. Immutable once built.
class PersistenceDiagram {
 public:
  PersistenceDiagram() = default;
  /// Throws ValidationError if any point is non-finite or below the diagonal.
  explicit PersistenceDiagram(std::vector<DiagramPoint> points, std::string id = {});

  std::span<const DiagramPoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  const DiagramPoint& operator[](std::size_t i) const { return points_[i]; }
  const std::string& id() const noexcept { return id_; }

  PersistenceDiagram with_id(std::string id) const;

  friend bool operator==(const PersistenceDiagram& a, const PersistenceDiagram& b) {
    return a.points_ == b.points_;
  }

 private:
  std::vector<DiagramPoint> points_;
  std::string id_;
};

struct ParseOptions {
  /// Replaces "+inf" death tokens with this cap before validation.
  std::optional<double> clamp_essential;
};

PersistenceDiagram parse_diagram(std::istream& in, const ParseOptions& options = {});
PersistenceDiagram parse_diagram(std::string_view text, const ParseOptions& options = {});
PersistenceDiagram read_diagram_file(const std::filesystem::path& path,
                                     const ParseOptions& options = {});

/// One point per line, 17 significant digits, LF endings.
void serialize_diagram(std::ostream& out, const PersistenceDiagram& d);
std::string serialize_diagram(const PersistenceDiagram& d);
void write_diagram_file(const std::filesystem::path& path, const PersistenceDiagram& d);

/// Shifts every coordinate by an independent uniform draw in (-epsilon, epsilon).
/// A point pushed below the diagonal gets its coordinates swapped, which keeps
/// each coordinate within epsilon of its original value.
PersistenceDiagram perturb_general_position(const PersistenceDiagram& d, double epsilon,
                                            std::uint64_t seed);

/// True if three points among `d` and its diagonal projections are collinear
/// (|cross product| <= tolerance). Triples made only of diagonal projections are
/// skipped: those always lie on the diagonal.
bool has_collinear_triple(const PersistenceDiagram& d, double tolerance = 0.0);

}  // namespace pdsw
