#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "pdsw/diagram.hpp"

namespace pdsw {

/// splitmix64 finalizer; used to derive independent stream seeds.
std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seed for stream `index` of a run seeded with `seed`.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept;

/// All library randomness: std::mt19937_64 seeded through splitmix64, with
/// doubles built from the top 53 bits. Both pieces are fully specified, so
/// streams are reproducible across standard libraries (unlike
/// std::uniform_real_distribution).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(splitmix64(seed)) {}

  /// Uniform in [0, 1).
  double uniform() noexcept { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi) noexcept { return lo + (hi - lo) * uniform(); }
  /// Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n) noexcept;

  template <class T>
  void shuffle(std::vector<T>& v) noexcept {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::swap(v[i - 1], v[below(i)]);
    }
  }

  std::mt19937_64& engine() noexcept { return engine_; }

 private:
  std::mt19937_64 engine_;
};

inline constexpr const char* kRngName = "mt19937_64(splitmix64(seed)), u = (x >> 11) * 2^-53";

struct RandomDiagramShape {
  std::size_t max_points = 8;
  std::size_t min_points = 0;
  double birth_range = 1.0;
  double max_persistence = 1.0;
};

/// Births uniform in [0, birth_range), persistence uniform in (0, max_persistence].
PersistenceDiagram random_diagram(Rng& rng, const RandomDiagramShape& shape = {});

}  // namespace pdsw
