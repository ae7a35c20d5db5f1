#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace pdsw {

struct BenchOptions {
  std::vector<std::size_t> sizes{50, 100, 200};
  std::vector<std::size_t> directions{10, 20, 40, 80};
  /// Diagram size used for the approx-vs-M sweep.
  std::size_t approx_size = 100;
  std::size_t repeats = 5;
  std::size_t ratio_pairs = 50;
  std::uint64_t seed = 0;
};

struct BenchTiming {
  std::string method;  // "exact" or "approx"
  std::size_t size = 0;
  std::size_t directions = 0;
  double median_seconds = 0.0;
};

struct RatioStats {
  std::size_t directions = 0;
  double mean_abs_error = 0.0;
  double max_abs_error = 0.0;
};

struct BenchReport {
  std::vector<BenchTiming> timings;
  std::vector<RatioStats> ratios;
};

/// Median wall time of `repeats` calls of `fn`, in seconds.
double median_seconds(const std::function<void()>& fn, std::size_t repeats);

BenchReport run_bench(const BenchOptions& options);

}  // namespace pdsw
