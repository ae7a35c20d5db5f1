#include "pdsw/random.hpp"

namespace pdsw {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return splitmix64(splitmix64(seed) ^ (index * 0xd1b54a32d192ed03ULL + 1));
}

std::uint64_t Rng::below(std::uint64_t n) noexcept {
  // Rejection sampling keeps the draw unbiased.
  const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

PersistenceDiagram random_diagram(Rng& rng, const RandomDiagramShape& shape) {
  const std::size_t span = shape.max_points - shape.min_points + 1;
  const std::size_t n = shape.min_points + rng.below(span);
  std::vector<DiagramPoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double b = rng.uniform(0.0, shape.birth_range);
    const double pers = shape.max_persistence * (1.0 - rng.uniform());
    pts.push_back({b, b + pers});
  }
  return PersistenceDiagram(std::move(pts));
}

}  // namespace pdsw
