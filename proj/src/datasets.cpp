#include "pdsw/datasets.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "pdsw/errors.hpp"
#include "pdsw/parallel.hpp"
#include "pdsw/random.hpp"

namespace pdsw {

namespace {

double wrap_unit(double v) { return v - std::floor(v); }

bool in_unit(double v) { return v >= 0.0 && v < 1.0; }

}  // namespace

PointCloud2D linked_twist_orbit(double r, double x0, double y0, std::size_t n, bool include_seed) {
  if (!(r > 0.0)) throw ArgumentError("orbit parameter r must be positive");
  if (!in_unit(x0) || !in_unit(y0)) throw ArgumentError("initial position must lie in [0, 1)^2");
  if (n < 1) throw ArgumentError("orbit length must be at least 1");
  PointCloud2D cloud;
  cloud.points.reserve(n);
  double x = x0, y = y0;
  if (include_seed) cloud.points.push_back({x, y});
  while (cloud.points.size() < n) {
    x = wrap_unit(x + r * y * (1.0 - y));
    y = wrap_unit(y + r * x * (1.0 - x));
    cloud.points.push_back({x, y});
  }
  return cloud;
}

PersistenceDiagram rips_0dim_persistence(const PointCloud2D& cloud) {
  const std::size_t n = cloud.points.size();
  if (n == 0) throw ArgumentError("persistence of an empty point cloud");
  struct Edge {
    double length;
    std::uint32_t a, b;
  };
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (std::uint32_t i = 0; i < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const double dx = cloud.points[i].x - cloud.points[j].x;
      const double dy = cloud.points[i].y - cloud.points[j].y;
      edges.push_back({std::hypot(dx, dy), i, j});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& l, const Edge& r) {
    if (l.length != r.length) return l.length < r.length;
    if (l.a != r.a) return l.a < r.a;
    return l.b < r.b;
  });
  std::vector<std::uint32_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  };
  std::vector<DiagramPoint> deaths;
  deaths.reserve(n - 1);
  for (const Edge& e : edges) {
    const auto ra = find(e.a);
    const auto rb = find(e.b);
    if (ra == rb) continue;
    parent[std::max(ra, rb)] = std::min(ra, rb);
    deaths.push_back({0.0, e.length});
    if (deaths.size() == n - 1) break;
  }
  return PersistenceDiagram(std::move(deaths));
}

std::vector<OrbitSample> generate_orbit_dataset(std::uint64_t seed, std::size_t per_class,
                                                std::size_t points_per_orbit, std::size_t workers) {
  if (per_class < 1) throw ArgumentError("per_class must be at least 1");
  if (points_per_orbit < 2) throw ArgumentError("points_per_orbit must be at least 2");
  constexpr std::size_t classes = std::size(kOrbitParameters);
  std::vector<OrbitSample> samples(classes * per_class);
  parallel_for(samples.size(), workers, [&](std::size_t idx) {
    const std::size_t c = idx / per_class;
    const std::size_t k = idx % per_class;
    OrbitSample& s = samples[idx];
    s.r = kOrbitParameters[c];
    s.class_index = static_cast<int>(c);
    s.orbit_index = k;
    s.stream_seed = derive_seed(seed, idx);
    Rng rng(s.stream_seed);
    const double x0 = rng.uniform();
    const double y0 = rng.uniform();
    const auto cloud = linked_twist_orbit(s.r, x0, y0, points_per_orbit);
    s.diagram = rips_0dim_persistence(cloud).with_id(format_label(s.r) + "/" + std::to_string(k));
  });
  return samples;
}

std::string format_label(double r) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, r);
  return std::string(buf, res.ptr);
}

void write_orbit_dataset(const std::filesystem::path& out, const std::vector<OrbitSample>& samples,
                         std::uint64_t seed, std::size_t points_per_orbit) {
  namespace fs = std::filesystem;
  fs::create_directories(out);
  std::ofstream manifest(out / "manifest.tsv", std::ios::binary);
  if (!manifest) throw std::runtime_error("cannot write " + (out / "manifest.tsv").string());
  manifest << "# rng: " << kRngName << "; dataset seed " << seed << "\n";
  manifest << "path\tlabel\tseed\tpoints\n";
  for (const auto& s : samples) {
    const std::string label = format_label(s.r);
    fs::create_directories(out / label);
    const std::string rel = label + "/" + std::to_string(s.orbit_index) + ".dgm";
    write_diagram_file(out / rel, s.diagram);
    manifest << rel << '\t' << label << '\t' << s.stream_seed << '\t' << points_per_orbit << '\n';
  }
  if (!manifest) throw std::runtime_error("write failed for manifest.tsv");
}

std::vector<ManifestEntry> read_manifest(const std::filesystem::path& dataset_root) {
  const auto path = dataset_root / "manifest.tsv";
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::vector<ManifestEntry> entries;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      header_seen = true;
      if (line.rfind("path\t", 0) == 0) continue;
    }
    std::istringstream fields(line);
    ManifestEntry e;
    std::string seed, points;
    if (!std::getline(fields, e.path, '\t') || !std::getline(fields, e.label, '\t') ||
        !std::getline(fields, seed, '\t') || !std::getline(fields, points, '\t')) {
      throw ParseError(line_no, "manifest rows need path, label, seed, points");
    }
    try {
      e.seed = std::stoull(seed);
      e.points = std::stoull(points);
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad seed or point count in manifest");
    }
    entries.push_back(std::move(e));
  }
  return entries;
}

}  // namespace pdsw
