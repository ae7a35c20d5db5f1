#include <cmath>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "pdsw/cross_validation.hpp"
#include "pdsw/errors.hpp"
#include "pdsw/random.hpp"
#include "pdsw/svm.hpp"

using namespace pdsw;

namespace {

Eigen::MatrixXd random_psd(Rng& rng, int n, int rank) {
  Eigen::MatrixXd f(n, rank);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < rank; ++j) f(i, j) = rng.uniform(-1, 1);
  return f * f.transpose();
}

// Two well separated clusters: distance 0 inside a class, 10 across.
Eigen::MatrixXd cluster_distances(const std::vector<int>& labels) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      d(i, j) = labels[static_cast<std::size_t>(i)] == labels[static_cast<std::size_t>(j)] ? (i == j ? 0.0 : 0.1) : 10.0;
  return d;
}

Eigen::MatrixXd rbf(const Eigen::MatrixXd& d, double sigma) { return (-d.array() / (2 * sigma * sigma)).exp().matrix(); }

}  // namespace

TEST_CASE("two-point problem") {
  LabeledGram lg{Eigen::MatrixXd::Identity(2, 2), {0, 1}};
  const auto m = svm_train_binary(lg, 10.0);
  CHECK(m.support.size() == 2);
  CHECK(m.predict(std::vector<double>{1, 0}) == 0);
  CHECK(m.predict(std::vector<double>{0, 1}) == 1);
  // Closed form: alpha = 1 each, objective -1.
  CHECK(m.objective == doctest::Approx(-1.0).epsilon(1e-3));
}

TEST_CASE("conflicting duplicates") {
  LabeledGram lg{Eigen::MatrixXd::Ones(2, 2), {0, 1}};
  const auto model = svm_train(lg, 1000.0);
  const auto pred = svm_predict_all(model, lg.gram);
  CHECK(accuracy(pred, lg.labels) == 0.5);
}

TEST_CASE("support vector rows predict their own label") {
  const std::vector<int> labels{0, 0, 0, 1, 1, 1};
  LabeledGram lg{rbf(cluster_distances(labels), 1.0), labels};
  const auto model = svm_train(lg, 10.0);
  for (Eigen::Index i = 0; i < lg.gram.rows(); ++i) {
    const Eigen::VectorXd row = lg.gram.row(i);
    CHECK(svm_predict(model, std::span<const double>(row.data(), static_cast<std::size_t>(row.size()))) ==
          labels[static_cast<std::size_t>(i)]);
  }
}

TEST_CASE("zero kernel row follows the bias sign") {
  BinarySvm m;
  m.positive_label = 2;
  m.negative_label = 5;
  m.support = {0};
  m.coefficients = {0.7};
  m.bias = -0.25;
  CHECK(m.predict(std::vector<double>{0.0}) == 5);
  m.bias = 0.25;
  CHECK(m.predict(std::vector<double>{0.0}) == 2);
}

TEST_CASE("three-way vote tie goes to the lowest class") {
  auto machine = [](int pos, int neg, double bias) {
    BinarySvm m;
    m.positive_label = pos;
    m.negative_label = neg;
    m.bias = bias;
    return m;
  };
  SvmModel model;
  model.classes = {0, 1, 2};
  model.training_size = 1;
  model.machines = {machine(0, 1, 1.0), machine(0, 2, -1.0), machine(1, 2, 1.0)};
  CHECK(svm_predict(model, std::vector<double>{0.0}) == 0);
  CHECK_THROWS_AS(svm_predict(model, std::vector<double>{0.0, 1.0}), ArgumentError);
}

TEST_CASE("label validation") {
  LabeledGram one{Eigen::MatrixXd::Identity(3, 3), {1, 1, 1}};
  CHECK_THROWS_AS(svm_train(one, 1.0), ArgumentError);
  LabeledGram three{Eigen::MatrixXd::Identity(3, 3), {0, 1, 2}};
  CHECK_THROWS_AS(svm_train_binary(three, 1.0), ArgumentError);
  CHECK_THROWS_AS(svm_train(three, 0.0), ArgumentError);
  const std::vector<int> bad{1, 2};
  CHECK_THROWS_AS(solve_svm_dual(Eigen::MatrixXd::Identity(2, 2), bad, 1.0), ArgumentError);
}

TEST_CASE("non-PSD warning is opt-in") {
  Eigen::MatrixXd k(2, 2);
  k << 1, 2, 2, 1;
  LabeledGram lg{k, {0, 1}};
  CHECK(svm_train(lg, 1.0).warnings.empty());
  SvmOptions o;
  o.warn_non_psd = true;
  CHECK_FALSE(svm_train(lg, 1.0, o).warnings.empty());
}

TEST_CASE("SMO matches the projected-gradient reference") {
  Rng rng(99);
  for (int k = 0; k < 10; ++k) {
    const int n = 4 + static_cast<int>(rng.below(37));
    const Eigen::MatrixXd K = random_psd(rng, n, 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n))));
    std::vector<int> y(static_cast<std::size_t>(n));
    for (auto& v : y) v = rng.below(2) ? 1 : -1;
    y[0] = 1;
    y[1] = -1;
    const double C = std::pow(10.0, rng.uniform(-1, 2));
    const auto dual = solve_svm_dual(K, y, C);
    const double ref = oracle::svm_dual_reference(K, y, C);
    CHECK(std::abs(dual.objective - ref) <= 1e-3 * std::max(1.0, std::abs(ref)));
    double ya = 0.0;
    for (int i = 0; i < n; ++i) {
      const double a = dual.alpha[static_cast<std::size_t>(i)];
      CHECK(a >= 0.0);
      CHECK(a <= C);
      ya += a * y[static_cast<std::size_t>(i)];
    }
    CHECK(std::abs(ya) < 1e-9 * C * n);
  }
}

TEST_CASE("stratified split") {
  const std::vector<int> labels{0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 2, 2};
  const auto s = stratified_split(labels, 0.5, 7);
  CHECK(s.train.size() + s.test.size() == labels.size());
  std::vector<int> train_per(3), test_per(3);
  for (auto i : s.train) ++train_per[static_cast<std::size_t>(labels[i])];
  for (auto i : s.test) ++test_per[static_cast<std::size_t>(labels[i])];
  CHECK(train_per == std::vector<int>{2, 3, 1});
  CHECK(test_per == std::vector<int>{2, 3, 1});
  CHECK(std::is_sorted(s.train.begin(), s.train.end()));
  CHECK(std::is_sorted(s.test.begin(), s.test.end()));
  const auto again = stratified_split(labels, 0.5, 7);
  CHECK(again.train == s.train);
  const std::vector<int> lonely{0, 0, 1};
  CHECK_THROWS_AS(stratified_split(lonely, 0.5, 1), StratificationError);
}

TEST_CASE("cross-validation selection rules") {
  const std::vector<int> labels{0, 0, 0, 0, 1, 1, 1, 1};
  const auto d = cluster_distances(labels);
  const std::vector<double> c1{1.0};

  const std::vector<Eigen::MatrixXd> single{rbf(d, 1.0)};
  const std::vector<double> p1{1.0};
  const auto only = cross_validate(single, p1, labels, c1, 3, 0);
  CHECK(only.param_index == 0);
  CHECK(only.c_index == 0);

  const std::vector<Eigen::MatrixXd> twins{rbf(d, 1.0), rbf(d, 1.0)};
  const std::vector<double> p2{1.0, 1.0};
  CHECK(cross_validate(twins, p2, labels, c1, 3, 0).param_index == 0);

  // sigma = 0.001 turns the Gram into the identity, which cannot generalize.
  const std::vector<double> sigmas{0.001, 1.0};
  const auto choice = cross_validate_sw(d, labels, c1, sigmas, 4, 0);
  CHECK(choice.param == 1.0);
  CHECK(choice.accuracy == 1.0);
}

TEST_CASE("cross-validation is worker-count invariant") {
  Rng rng(5);
  const int n = 30;
  std::vector<int> labels(n);
  for (int i = 0; i < n; ++i) labels[static_cast<std::size_t>(i)] = i % 3;
  Eigen::MatrixXd d(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) d(i, j) = d(j, i) = i == j ? 0.0 : rng.uniform(0, 3);
  const std::vector<double> c{0.1, 1, 10};
  const std::vector<double> s{0.5, 1, 2};
  const auto a = cross_validate_sw(d, labels, c, s, 5, 3, 1);
  const auto b = cross_validate_sw(d, labels, c, s, 5, 3, 8);
  CHECK(a.c_index == b.c_index);
  CHECK(a.param_index == b.param_index);
  CHECK(a.accuracy == b.accuracy);
}

TEST_CASE("separable experiment scores 100% with zero spread") {
  std::vector<int> labels;
  for (int i = 0; i < 20; ++i) labels.push_back(i < 10 ? 0 : 1);
  const auto d = cluster_distances(labels);
  ExperimentConfig cfg;
  cfg.c_grid = {1.0, 10.0};
  cfg.runs = 5;
  cfg.folds = 3;
  const auto rep = run_gram_experiment(std::vector<Eigen::MatrixXd>{rbf(d, 1.0)}, std::vector<double>{1.0}, labels, cfg);
  CHECK(rep.mean == 1.0);
  CHECK(rep.stddev == 0.0);
  const auto sw = run_sw_experiment(d, labels, cfg);
  CHECK(sw.mean == 1.0);
  CHECK(sw.runs.size() == 5);
}

TEST_CASE("label shuffling is a seeded permutation") {
  const std::vector<int> labels{0, 0, 1, 1, 2, 2, 2};
  auto s = shuffled_labels(labels, 4);
  CHECK(s == shuffled_labels(labels, 4));
  std::sort(s.begin(), s.end());
  CHECK(s == labels);
}
