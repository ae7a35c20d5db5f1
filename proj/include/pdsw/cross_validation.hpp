#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "pdsw/svm.hpp"

namespace pdsw {

struct Split {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

/// Per-class shuffled split: round(train_fraction * n_c) members of each class
/// train, clamped so both sides keep at least one. Classes with fewer than two
/// members throw StratificationError. Index lists come back ascending.
Split stratified_split(std::span<const int> labels, double train_fraction, std::uint64_t seed);

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& m, std::span<const std::size_t> rows,
                          std::span<const std::size_t> cols);

/// Trains on `split.train`, returns accuracy on `split.test`.
double split_accuracy(const Eigen::MatrixXd& gram, std::span<const int> labels, const Split& split,
                      double C, const SvmOptions& options = {});

struct CvChoice {
  std::size_t c_index = 0;
  std::size_t param_index = 0;
  double C = 0.0;
  double param = 0.0;
  double accuracy = 0.0;
};

/// Grid search over (C, kernel parameter). `grams[k]` is the Gram matrix for
/// `param_values[k]`. Each combination is scored by its mean accuracy over
/// `folds` stratified 50/50 splits; fold f uses derive_seed(seed, f), so every
/// combination sees the same splits. Ties go to the smaller C, then the smaller
/// parameter, then the lower grid index.
CvChoice cross_validate(std::span<const Eigen::MatrixXd> grams, std::span<const double> param_values,
                        std::span<const int> labels, std::span<const double> c_grid,
                        std::size_t folds, std::uint64_t seed, std::size_t workers = 1);

/// Same search for the SW kernel: Grams for every sigma come from one cached
/// distance matrix by re-exponentiation.
CvChoice cross_validate_sw(const Eigen::MatrixXd& distances, std::span<const int> labels,
                           std::span<const double> c_grid, std::span<const double> sigma_grid,
                           std::size_t folds, std::uint64_t seed, std::size_t workers = 1);

struct ExperimentConfig {
  std::vector<double> c_grid;
  std::size_t runs = 10;
  std::size_t folds = 10;
  double train_fraction = 0.7;
  std::uint64_t seed = 0;
  std::size_t workers = 1;
  bool shuffle_labels = false;
};

struct RunOutcome {
  double C = 0.0;
  double param = 0.0;
  double test_accuracy = 0.0;
};

struct ExperimentReport {
  std::vector<RunOutcome> runs;
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation over runs
};

/// Repeated train/test evaluation. Run r splits with derive_seed(seed, r),
/// picks (C, sigma) by cross_validate_sw on the training part with the sigma
/// grid built from the training SW values, trains on the whole training part
/// and scores the test part.
ExperimentReport run_sw_experiment(const Eigen::MatrixXd& distances, std::span<const int> labels,
                                   const ExperimentConfig& config);

/// Same protocol over a fixed parameter grid of precomputed Grams.
ExperimentReport run_gram_experiment(std::span<const Eigen::MatrixXd> grams,
                                     std::span<const double> param_values,
                                     std::span<const int> labels, const ExperimentConfig& config);

/// Seeded label permutation, used as a chance-level control.
std::vector<int> shuffled_labels(std::span<const int> labels, std::uint64_t seed);

}  // namespace pdsw
