#include "pdsw/diagram.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <sstream>

#include "pdsw/errors.hpp"
#include "pdsw/random.hpp"

namespace pdsw {

bool is_valid(DiagramPoint p) noexcept {
  return std::isfinite(p.birth) && std::isfinite(p.death) && p.death >= p.birth;
}

PersistenceDiagram::PersistenceDiagram(std::vector<DiagramPoint> points, std::string id)
    : points_(std::move(points)), id_(std::move(id)) {
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const DiagramPoint p = points_[i];
    if (!std::isfinite(p.birth) || !std::isfinite(p.death)) {
      throw ValidationError("point " + std::to_string(i) + " has a non-finite coordinate");
    }
    if (p.death < p.birth) {
      throw ValidationError("point " + std::to_string(i) + " has death < birth");
    }
  }
}

PersistenceDiagram PersistenceDiagram::with_id(std::string id) const {
  PersistenceDiagram copy = *this;
  copy.id_ = std::move(id);
  return copy;
}

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; }

std::optional<double> parse_number(std::string_view token) {
  if (!token.empty() && token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

}  // namespace

PersistenceDiagram parse_diagram(std::istream& in, const ParseOptions& options) {
  std::vector<DiagramPoint> points;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (const auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    std::vector<std::string_view> tokens;
    std::size_t pos = 0;
    while (pos < view.size()) {
      while (pos < view.size() && is_space(view[pos])) ++pos;
      const std::size_t start = pos;
      while (pos < view.size() && !is_space(view[pos])) ++pos;
      if (pos > start) tokens.push_back(view.substr(start, pos - start));
    }
    if (tokens.empty()) continue;
    if (tokens.size() != 2) {
      throw ParseError(line_no, "expected two numbers, found " + std::to_string(tokens.size()) +
                                    " fields");
    }
    double coords[2];
    for (int k = 0; k < 2; ++k) {
      const auto value = parse_number(tokens[k]);
      if (!value) {
        throw ParseError(line_no, "not a number: '" + std::string(tokens[k]) + "'");
      }
      coords[k] = *value;
      if (options.clamp_essential && std::isinf(coords[k]) && coords[k] > 0) {
        coords[k] = *options.clamp_essential;
      }
    }
    const DiagramPoint p{coords[0], coords[1]};
    if (!std::isfinite(p.birth) || !std::isfinite(p.death)) {
      throw ValidationError("non-finite coordinate", line_no);
    }
    if (p.death < p.birth) {
      throw ValidationError("death < birth", line_no);
    }
    points.push_back(p);
  }
  return PersistenceDiagram(std::move(points));
}

PersistenceDiagram parse_diagram(std::string_view text, const ParseOptions& options) {
  std::istringstream in{std::string(text)};
  return parse_diagram(in, options);
}

PersistenceDiagram read_diagram_file(const std::filesystem::path& path,
                                     const ParseOptions& options) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return parse_diagram(in, options).with_id(path.stem().string());
}

void serialize_diagram(std::ostream& out, const PersistenceDiagram& d) {
  const auto old_precision = out.precision(17);
  for (const auto& p : d.points()) {
    out << p.birth << ' ' << p.death << '\n';
  }
  out.precision(old_precision);
}

std::string serialize_diagram(const PersistenceDiagram& d) {
  std::ostringstream out;
  serialize_diagram(out, d);
  return out.str();
}

void write_diagram_file(const std::filesystem::path& path, const PersistenceDiagram& d) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  serialize_diagram(out, d);
  if (!out) {
    throw std::runtime_error("write failed for " + path.string());
  }
}

PersistenceDiagram perturb_general_position(const PersistenceDiagram& d, double epsilon,
                                            std::uint64_t seed) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw ArgumentError("perturbation epsilon must be positive and finite");
  }
  Rng rng(seed);
  std::vector<DiagramPoint> out;
  out.reserve(d.size());
  for (const auto& p : d.points()) {
    // uniform(-eps, eps) excluding the lower endpoint: 1 - u lies in (0, 1].
    const double db = epsilon * (2.0 * (1.0 - rng.uniform()) - 1.0);
    const double dd = epsilon * (2.0 * (1.0 - rng.uniform()) - 1.0);
    DiagramPoint q{p.birth + db, p.death + dd};
    if (q.death < q.birth) std::swap(q.birth, q.death);
    out.push_back(q);
  }
  return PersistenceDiagram(std::move(out), d.id());
}

bool has_collinear_triple(const PersistenceDiagram& d, double tolerance) {
  struct Tagged {
    double x, y;
    bool diagonal;
  };
  std::vector<Tagged> pts;
  for (const auto& p : d.points()) pts.push_back({p.birth, p.death, false});
  for (const auto& p : d.points()) {
    const auto q = project_diagonal(p);
    pts.push_back({q.birth, q.death, true});
  }
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = j + 1; k < n; ++k) {
        if (pts[i].diagonal && pts[j].diagonal && pts[k].diagonal) continue;
        const double cross = (pts[j].x - pts[i].x) * (pts[k].y - pts[i].y) -
                             (pts[j].y - pts[i].y) * (pts[k].x - pts[i].x);
        if (std::abs(cross) <= tolerance) return true;
      }
    }
  }
  return false;
}

}  // namespace pdsw
