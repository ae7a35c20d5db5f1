#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pdsw/diagram.hpp"

namespace pdsw {

/// Outcome of one randomized property. `worst_margin` is the smallest slack
/// seen over all trials (negative means violated).
struct PropertyResult {
  std::string suite;
  std::string name;
  bool passed = true;
  double worst_margin = 0.0;
  std::size_t trials = 0;
  std::string detail;
  std::vector<PersistenceDiagram> counterexample;
  std::vector<std::vector<double>> counterexample_measures;
};

struct SuiteOptions {
  /// Pair-level trials; family-level properties use trials / 10 (at least 10).
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

/// Replaceable evaluation routes, so the checker itself can be tested against
/// deliberately broken implementations.
struct SuiteHooks {
  std::function<double(std::span<const double>, std::span<const double>)> w1;
  std::function<double(const PersistenceDiagram&, const PersistenceDiagram&)> sw_exact;
  std::function<double(const PersistenceDiagram&, const PersistenceDiagram&, std::size_t)> sw_approx;
  std::function<double(const PersistenceDiagram&, const PersistenceDiagram&)> d1;

  /// Library implementations for every unset hook.
  SuiteHooks resolved() const;
};

inline constexpr std::string_view kSuiteNames[] = {"wasserstein", "sw", "kernels"};

/// Runs "wasserstein", "sw", "kernels" or "all". Throws ArgumentError for other names.
std::vector<PropertyResult> run_property_suite(std::string_view suite, const SuiteOptions& options,
                                               const SuiteHooks& hooks = {});

/// Writes the counterexample under dir/<suite>-<name>/ as .dgm files (or .txt
/// atom lists for 1-D measures). Returns the directory written.
std::filesystem::path dump_counterexample(const PropertyResult& result,
                                          const std::filesystem::path& dir);

}  // namespace pdsw
