#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "pdsw/datasets.hpp"
#include "pdsw/errors.hpp"
#include "pdsw/random.hpp"

using namespace pdsw;

TEST_CASE("origin is a fixed point") {
  for (double r : kOrbitParameters) {
    const auto c = linked_twist_orbit(r, 0.0, 0.0, 10);
    for (const auto& p : c.points) {
      CHECK(p.x == 0.0);
      CHECK(p.y == 0.0);
    }
  }
}

TEST_CASE("one step by hand") {
  const auto c = linked_twist_orbit(2.0, 0.5, 0.5, 1);
  REQUIRE(c.points.size() == 1);
  CHECK(c.points[0].x == 0.0);
  CHECK(c.points[0].y == 0.5);
  const auto s = linked_twist_orbit(2.0, 0.5, 0.5, 2, true);
  CHECK(s.points[0].x == 0.5);
  CHECK(s.points[1].x == 0.0);
}

TEST_CASE("orbits stay in the unit square") {
  Rng rng(1);
  for (double r : kOrbitParameters) {
    const auto c = linked_twist_orbit(r, rng.uniform(), rng.uniform(), 500);
    for (const auto& p : c.points) {
      CHECK(p.x >= 0.0);
      CHECK(p.x < 1.0);
      CHECK(p.y >= 0.0);
      CHECK(p.y < 1.0);
    }
  }
}

TEST_CASE("orbit argument validation") {
  CHECK_THROWS_AS(linked_twist_orbit(0.0, 0.1, 0.1, 5), ArgumentError);
  CHECK_THROWS_AS(linked_twist_orbit(2.0, 1.0, 0.1, 5), ArgumentError);
  CHECK_THROWS_AS(linked_twist_orbit(2.0, 0.1, 0.1, 0), ArgumentError);
}

TEST_CASE("0-dim persistence hand cases") {
  CHECK(rips_0dim_persistence(PointCloud2D{{{0.3, 0.3}}}).empty());
  const auto two = rips_0dim_persistence(PointCloud2D{{{0, 0}, {0.3, 0.4}}});
  REQUIRE(two.size() == 1);
  CHECK(two[0].birth == 0.0);
  CHECK(two[0].death == doctest::Approx(0.5));
  const auto line = rips_0dim_persistence(PointCloud2D{{{0, 0}, {1, 0}, {5, 0}}});
  REQUIRE(line.size() == 2);
  CHECK(line[0] == DiagramPoint{0, 1});
  CHECK(line[1] == DiagramPoint{0, 4});
  CHECK_THROWS_AS(rips_0dim_persistence(PointCloud2D{}), ArgumentError);
}

TEST_CASE("deaths equal brute-force MST edges") {
  Rng rng(2);
  for (int k = 0; k < 20; ++k) {
    const std::size_t n = 2 + rng.below(49);
    PointCloud2D c;
    std::vector<std::pair<double, double>> raw;
    for (std::size_t i = 0; i < n; ++i) {
      c.points.push_back({rng.uniform(), rng.uniform()});
      raw.emplace_back(c.points.back().x, c.points.back().y);
    }
    const auto d = rips_0dim_persistence(c);
    const auto mst = oracle::prim_mst(raw);
    REQUIRE(d.size() == n - 1);
    for (std::size_t i = 0; i < mst.size(); ++i) {
      CHECK(d[i].birth == 0.0);
      CHECK(d[i].death == doctest::Approx(mst[i]).epsilon(1e-14));
    }
  }
}

TEST_CASE("small dataset shape and determinism") {
  const auto a = generate_orbit_dataset(42, 1, 2);
  REQUIRE(a.size() == 5);
  for (const auto& s : a) CHECK(s.diagram.size() == 1);
  const auto b = generate_orbit_dataset(42, 1, 2, 4);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].diagram == b[i].diagram);
  CHECK(a[0].diagram.id() == "2.5/0");
}

TEST_CASE("classes differ in total persistence") {
  const auto samples = generate_orbit_dataset(7, 20, 300, 4);
  REQUIRE(samples.size() == 100);
  std::map<int, std::vector<double>> groups;
  for (const auto& s : samples) {
    double total = 0.0;
    for (const auto& p : s.diagram.points()) total += persistence(p);
    groups[s.class_index].push_back(total);
  }
  // One-way ANOVA F statistic.
  double grand = 0.0;
  std::size_t n = 0;
  for (const auto& [c, v] : groups) {
    grand += std::accumulate(v.begin(), v.end(), 0.0);
    n += v.size();
  }
  grand /= static_cast<double>(n);
  double between = 0.0, within = 0.0;
  for (const auto& [c, v] : groups) {
    const double m = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
    between += static_cast<double>(v.size()) * (m - grand) * (m - grand);
    for (double x : v) within += (x - m) * (x - m);
  }
  const double k = static_cast<double>(groups.size());
  const double f = (between / (k - 1)) / (within / (static_cast<double>(n) - k));
  MESSAGE("ANOVA F = " << f);
  CHECK(f > 1.0);
}

TEST_CASE("dataset files and manifest") {
  namespace fs = std::filesystem;
  const auto dir = fs::temp_directory_path() / "pdsw_test_orbits";
  fs::remove_all(dir);
  const auto samples = generate_orbit_dataset(3, 2, 10);
  write_orbit_dataset(dir, samples, 3, 10);
  const auto entries = read_manifest(dir);
  REQUIRE(entries.size() == 10);
  CHECK(entries[0].path == "2.5/0.dgm");
  CHECK(entries[0].label == "2.5");
  CHECK(entries[0].points == 10);
  CHECK(entries[0].seed == samples[0].stream_seed);
  for (std::size_t i = 0; i < entries.size(); ++i) {
    CHECK(read_diagram_file(dir / entries[i].path) == samples[i].diagram);
  }
  CHECK(fs::exists(dir / "4" / "1.dgm"));
  std::ifstream m(dir / "manifest.tsv");
  std::string first;
  std::getline(m, first);
  CHECK(first.rfind("#", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("labels") {
  CHECK(format_label(2.5) == "2.5");
  CHECK(format_label(4.0) == "4");
  CHECK(format_label(4.1) == "4.1");
}
