#include "pdsw/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "pdsw/errors.hpp"
#include "pdsw/random.hpp"
#include "pdsw/sliced_wasserstein.hpp"
#include "pdsw/stats.hpp"

namespace pdsw {

double median_seconds(const std::function<void()>& fn, std::size_t repeats) {
  if (repeats == 0) throw ArgumentError("repeats must be positive");
  std::vector<double> times;
  times.reserve(repeats);
  for (std::size_t r = 0; r < repeats; ++r) {
    const auto start = std::chrono::steady_clock::now();
    fn();
    times.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  return median(std::move(times));
}

namespace {

PersistenceDiagram sized_diagram(Rng& rng, std::size_t n) {
  return random_diagram(rng, {n, n, 1.0, 1.0});
}

}  // namespace

BenchReport run_bench(const BenchOptions& options) {
  BenchReport report;
  Rng rng(derive_seed(options.seed, 0xbe4c));
  volatile double sink = 0.0;

  for (const auto n : options.sizes) {
    const auto a = sized_diagram(rng, n);
    const auto b = sized_diagram(rng, n);
    const double t = median_seconds([&] { sink = sink + sw_exact(a, b).value; }, options.repeats);
    report.timings.push_back({"exact", n, 0, t});
  }
  {
    const auto a = sized_diagram(rng, options.approx_size);
    const auto b = sized_diagram(rng, options.approx_size);
    for (const auto m : options.directions) {
      const double t = median_seconds([&] { sink = sink + sw_approx(a, b, m).value; }, options.repeats);
      report.timings.push_back({"approx", options.approx_size, m, t});
    }
  }
  // Accuracy of the approximation on small random pairs.
  std::vector<std::pair<PersistenceDiagram, PersistenceDiagram>> pairs;
  for (std::size_t k = 0; k < options.ratio_pairs; ++k) {
    pairs.emplace_back(random_diagram(rng, {8, 1, 1.0, 1.0}), random_diagram(rng, {8, 1, 1.0, 1.0}));
  }
  std::vector<double> exact;
  for (const auto& [a, b] : pairs) exact.push_back(sw_exact(a, b).value);
  for (const auto m : options.directions) {
    RatioStats s{m, 0.0, 0.0};
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const double err = std::abs(sw_approx(pairs[k].first, pairs[k].second, m).value / exact[k] - 1.0);
      s.mean_abs_error += err;
      s.max_abs_error = std::max(s.max_abs_error, err);
    }
    if (!pairs.empty()) s.mean_abs_error /= static_cast<double>(pairs.size());
    report.ratios.push_back(s);
  }
  return report;
}

}  // namespace pdsw
