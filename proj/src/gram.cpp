#include "pdsw/gram.hpp"

#include <cstdlib>
#include <optional>
#include <string>

#include "pdsw/sliced_wasserstein.hpp"

namespace pdsw {

std::size_t default_workers() {
  if (const char* env = std::getenv("PDSW_WORKERS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

std::vector<std::string> diagram_ids(std::span<const PersistenceDiagram> diagrams) {
  std::vector<std::string> ids;
  ids.reserve(diagrams.size());
  for (std::size_t i = 0; i < diagrams.size(); ++i) {
    ids.push_back(diagrams[i].id().empty() ? std::to_string(i) : diagrams[i].id());
  }
  return ids;
}

Eigen::MatrixXd sw_distance_matrix(std::span<const PersistenceDiagram> diagrams, SwMode mode,
                                   std::size_t direction_count, std::size_t workers) {
  const std::size_t n = diagrams.size();
  if (mode == SwMode::exact) {
    return symmetric_pairwise(n, workers, [&](std::size_t i, std::size_t j) {
      return i == j ? 0.0 : sw_exact(diagrams[i], diagrams[j]).value;
    });
  }
  if (direction_count < 1) throw ArgumentError("approximate SW needs at least one direction");
  std::vector<std::optional<SlicedSignature>> signatures(n);
  parallel_for(n, workers, [&](std::size_t i) {
    signatures[i].emplace(diagrams[i], direction_count, DirectionGrid::left_endpoint);
  });
  return symmetric_pairwise(n, workers, [&](std::size_t i, std::size_t j) {
    return i == j ? 0.0 : sw_from_signatures(*signatures[i], *signatures[j]);
  });
}

Eigen::MatrixXd sw_gram_from_distances(const Eigen::MatrixXd& distances, double sigma) {
  validate(SwKernel{sigma, SwMode::exact, 0});
  return distances.unaryExpr([sigma](double d) { return sw_rbf(d, sigma); });
}

GramMatrix gram_matrix(std::span<const PersistenceDiagram> diagrams, const KernelSpec& spec,
                       std::size_t workers) {
  validate(spec);
  GramMatrix g;
  g.ids = diagram_ids(diagrams);
  if (const auto* sw = std::get_if<SwKernel>(&spec)) {
    g.values = sw_gram_from_distances(
        sw_distance_matrix(diagrams, sw->mode, sw->direction_count, workers), sw->sigma);
    return g;
  }
  const bool unit = has_unit_diagonal(spec);
  g.values = symmetric_pairwise(diagrams.size(), workers, [&](std::size_t i, std::size_t j) {
    if (i == j && unit) return 1.0;
    return evaluate_kernel(spec, diagrams[i], diagrams[j]);
  });
  return g;
}

}  // namespace pdsw
