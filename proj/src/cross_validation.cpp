#include "pdsw/cross_validation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "pdsw/errors.hpp"
#include "pdsw/gram.hpp"
#include "pdsw/kernels.hpp"
#include "pdsw/parallel.hpp"
#include "pdsw/random.hpp"

namespace pdsw {

Split stratified_split(std::span<const int> labels, double train_fraction, std::uint64_t seed) {
  if (!(train_fraction > 0.0 && train_fraction < 1.0)) {
    throw ArgumentError("train fraction must lie in (0, 1)");
  }
  std::map<int, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < labels.size(); ++i) members[labels[i]].push_back(i);
  Rng rng(seed);
  Split split;
  for (auto& [label, idx] : members) {
    if (idx.size() < 2) {
      throw StratificationError("class " + std::to_string(label) + " has " +
                                std::to_string(idx.size()) + " member(s); need at least 2");
    }
    rng.shuffle(idx);
    auto n_train = static_cast<std::size_t>(std::lround(train_fraction * static_cast<double>(idx.size())));
    n_train = std::clamp<std::size_t>(n_train, 1, idx.size() - 1);
    split.train.insert(split.train.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_train));
    split.test.insert(split.test.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_train), idx.end());
  }
  std::sort(split.train.begin(), split.train.end());
  std::sort(split.test.begin(), split.test.end());
  return split;
}

Eigen::MatrixXd submatrix(const Eigen::MatrixXd& m, std::span<const std::size_t> rows,
                          std::span<const std::size_t> cols) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(cols.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
          m(static_cast<Eigen::Index>(rows[r]), static_cast<Eigen::Index>(cols[c]));
    }
  }
  return out;
}

namespace {

std::vector<int> pick(std::span<const int> labels, std::span<const std::size_t> idx) {
  std::vector<int> out;
  out.reserve(idx.size());
  for (const auto i : idx) out.push_back(labels[i]);
  return out;
}

bool better(const CvChoice& cand, const CvChoice& best) {
  if (cand.accuracy != best.accuracy) return cand.accuracy > best.accuracy;
  if (cand.C != best.C) return cand.C < best.C;
  if (cand.param != best.param) return cand.param < best.param;
  if (cand.c_index != best.c_index) return cand.c_index < best.c_index;
  return cand.param_index < best.param_index;
}

double mean(std::span<const double> v) {
  double s = 0.0;
  for (const double x : v) s += x;
  return v.empty() ? 0.0 : s / static_cast<double>(v.size());
}

}  // namespace

double split_accuracy(const Eigen::MatrixXd& gram, std::span<const int> labels, const Split& split,
                      double C, const SvmOptions& options) {
  const LabeledGram train{submatrix(gram, split.train, split.train), pick(labels, split.train)};
  const SvmModel model = svm_train(train, C, options);
  const auto predicted = svm_predict_all(model, submatrix(gram, split.test, split.train));
  return accuracy(predicted, pick(labels, split.test));
}

CvChoice cross_validate(std::span<const Eigen::MatrixXd> grams, std::span<const double> param_values,
                        std::span<const int> labels, std::span<const double> c_grid,
                        std::size_t folds, std::uint64_t seed, std::size_t workers) {
  if (folds < 2) throw ArgumentError("cross-validation needs at least 2 folds");
  if (grams.empty() || c_grid.empty()) throw ArgumentError("empty parameter grid");
  if (grams.size() != param_values.size()) throw ArgumentError("one Gram per parameter value");
  std::vector<Split> splits;
  for (std::size_t f = 0; f < folds; ++f) {
    splits.push_back(stratified_split(labels, 0.5, derive_seed(seed, f)));
  }
  const std::size_t combos = c_grid.size() * grams.size();
  std::vector<double> scores(combos);
  parallel_for(combos, workers, [&](std::size_t k) {
    const std::size_t ci = k / grams.size();
    const std::size_t pi = k % grams.size();
    std::vector<double> acc;
    for (const auto& split : splits) acc.push_back(split_accuracy(grams[pi], labels, split, c_grid[ci]));
    scores[k] = mean(acc);
  });
  CvChoice best;
  bool have = false;
  for (std::size_t k = 0; k < combos; ++k) {
    CvChoice cand;
    cand.c_index = k / grams.size();
    cand.param_index = k % grams.size();
    cand.C = c_grid[cand.c_index];
    cand.param = param_values[cand.param_index];
    cand.accuracy = scores[k];
    if (!have || better(cand, best)) {
      best = cand;
      have = true;
    }
  }
  return best;
}

CvChoice cross_validate_sw(const Eigen::MatrixXd& distances, std::span<const int> labels,
                           std::span<const double> c_grid, std::span<const double> sigma_grid,
                           std::size_t folds, std::uint64_t seed, std::size_t workers) {
  std::vector<Eigen::MatrixXd> grams;
  grams.reserve(sigma_grid.size());
  for (const double sigma : sigma_grid) grams.push_back(sw_gram_from_distances(distances, sigma));
  return cross_validate(grams, sigma_grid, labels, c_grid, folds, seed, workers);
}

namespace {

ExperimentReport summarize(std::vector<RunOutcome> runs) {
  ExperimentReport report;
  report.runs = std::move(runs);
  std::vector<double> acc;
  for (const auto& r : report.runs) acc.push_back(r.test_accuracy);
  report.mean = mean(acc);
  if (acc.size() > 1) {
    double ss = 0.0;
    for (const double a : acc) ss += (a - report.mean) * (a - report.mean);
    report.stddev = std::sqrt(ss / static_cast<double>(acc.size() - 1));
  }
  return report;
}

template <class Select>
ExperimentReport run_experiment(std::span<const int> labels_in, const ExperimentConfig& config,
                                Select&& select) {
  if (config.runs < 1) throw ArgumentError("experiment needs at least one run");
  std::vector<int> labels(labels_in.begin(), labels_in.end());
  if (config.shuffle_labels) labels = shuffled_labels(labels, derive_seed(config.seed, 0xc0ffee));
  std::vector<RunOutcome> runs;
  for (std::size_t r = 0; r < config.runs; ++r) {
    const std::uint64_t run_seed = derive_seed(config.seed, r);
    const Split split = stratified_split(labels, config.train_fraction, run_seed);
    runs.push_back(select(labels, split, run_seed));
  }
  return summarize(std::move(runs));
}

}  // namespace

ExperimentReport run_sw_experiment(const Eigen::MatrixXd& distances, std::span<const int> labels,
                                   const ExperimentConfig& config) {
  return run_experiment(labels, config, [&](const std::vector<int>& y, const Split& split,
                                            std::uint64_t run_seed) {
    const Eigen::MatrixXd train_d = submatrix(distances, split.train, split.train);
    std::vector<double> pairwise;
    for (Eigen::Index i = 0; i < train_d.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < train_d.cols(); ++j) pairwise.push_back(train_d(i, j));
    }
    const auto sigmas = sw_sigma_grid(pairwise);
    const auto train_y = pick(y, split.train);
    const CvChoice choice = cross_validate_sw(train_d, train_y, config.c_grid, sigmas,
                                              config.folds, derive_seed(run_seed, 1), config.workers);
    const Eigen::MatrixXd gram = sw_gram_from_distances(distances, choice.param);
    return RunOutcome{choice.C, choice.param, split_accuracy(gram, y, split, choice.C)};
  });
}

ExperimentReport run_gram_experiment(std::span<const Eigen::MatrixXd> grams,
                                     std::span<const double> param_values,
                                     std::span<const int> labels, const ExperimentConfig& config) {
  return run_experiment(labels, config, [&](const std::vector<int>& y, const Split& split,
                                            std::uint64_t run_seed) {
    std::vector<Eigen::MatrixXd> train_grams;
    for (const auto& g : grams) train_grams.push_back(submatrix(g, split.train, split.train));
    const auto train_y = pick(y, split.train);
    const CvChoice choice = cross_validate(train_grams, param_values, train_y, config.c_grid,
                                           config.folds, derive_seed(run_seed, 1), config.workers);
    return RunOutcome{choice.C, choice.param,
                      split_accuracy(grams[choice.param_index], y, split, choice.C)};
  });
}

std::vector<int> shuffled_labels(std::span<const int> labels, std::uint64_t seed) {
  std::vector<int> out(labels.begin(), labels.end());
  Rng rng(seed);
  rng.shuffle(out);
  return out;
}

}  // namespace pdsw
