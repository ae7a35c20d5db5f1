#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "pdsw/diagram.hpp"
#include "pdsw/kernels.hpp"

namespace pdsw {

/// Symmetric matrix of kernel evaluations over an indexed diagram collection.
struct GramMatrix {
  std::vector<std::string> ids;
  Eigen::MatrixXd values;

  std::size_t size() const noexcept { return ids.size(); }
};

/// Pairwise SW distances, zero diagonal. Each unordered pair is evaluated once
/// and mirrored. Approximate mode reuses one sliced signature per diagram.
/// Errors are rethrown as PairEvaluationError naming the pair.
Eigen::MatrixXd sw_distance_matrix(std::span<const PersistenceDiagram> diagrams, SwMode mode,
                                   std::size_t direction_count, std::size_t workers = 1);

/// Elementwise sw_rbf over a cached distance matrix.
Eigen::MatrixXd sw_gram_from_distances(const Eigen::MatrixXd& distances, double sigma);

/// Kernel matrix over `diagrams`. For the SW family the distance matrix is
/// computed once and exponentiated. Output is identical for any worker count.
GramMatrix gram_matrix(std::span<const PersistenceDiagram> diagrams, const KernelSpec& spec,
                       std::size_t workers = 1);

/// Generic pairwise evaluation: out(i, j) = out(j, i) = f(d_i, d_j) for i <= j.
template <class PairFn>
Eigen::MatrixXd symmetric_pairwise(std::size_t n, std::size_t workers, PairFn&& f);

std::vector<std::string> diagram_ids(std::span<const PersistenceDiagram> diagrams);

}  // namespace pdsw

#include "pdsw/parallel.hpp"
#include "pdsw/errors.hpp"

namespace pdsw {

template <class PairFn>
Eigen::MatrixXd symmetric_pairwise(std::size_t n, std::size_t workers, PairFn&& f) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(n * (n + 1) / 2);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) pairs.emplace_back(i, j);
  }
  const auto size = static_cast<Eigen::Index>(n);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(size, size);
  parallel_for(pairs.size(), workers, [&](std::size_t k) {
    const auto [i, j] = pairs[k];
    double value;
    try {
      value = f(i, j);
    } catch (const std::exception& e) {
      throw PairEvaluationError(i, j, e.what());
    }
    out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = value;
    out(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = value;
  });
  return out;
}

}  // namespace pdsw
