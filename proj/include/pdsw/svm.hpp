#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Core>

namespace pdsw {

/// Precomputed train x train kernel matrix with one integer label per row.
struct LabeledGram {
  Eigen::MatrixXd gram;
  std::vector<int> labels;
};

struct SvmOptions {
  double tolerance = 1e-3;  // maximal KKT violation at termination
  std::size_t max_iterations = 10'000'000;
  bool warn_non_psd = false;
  double psd_tolerance = 1e-8;
};

/// Solution of min 1/2 a'Qa - e'a, 0 <= a <= C, y'a = 0 with Q_ij = y_i y_j K_ij.
struct SvmDual {
  std::vector<double> alpha;
  double rho = 0.0;  // decision(x) = sum alpha_i y_i K(x_i, x) - rho
  double objective = 0.0;
  double kkt_violation = 0.0;
  std::size_t iterations = 0;
};

/// Sequential minimal optimization with second-order working-set selection.
/// `y` holds +1/-1.
SvmDual solve_svm_dual(const Eigen::MatrixXd& kernel, std::span<const int> y, double C,
                       const SvmOptions& options = {});

struct BinarySvm {
  int positive_label = 0;  // the smaller label
  int negative_label = 0;
  std::vector<std::size_t> support;  // indices into the training set
  std::vector<double> coefficients;  // alpha_i y_i per support vector
  double bias = 0.0;                 // -rho
  double objective = 0.0;

  double decision(std::span<const double> kernel_row) const;
  int predict(std::span<const double> kernel_row) const;
};

/// One-vs-one ensemble. Votes go to the winning label of every pairwise
/// machine; ties resolve to the lowest class index.
struct SvmModel {
  std::vector<int> classes;  // ascending
  std::vector<BinarySvm> machines;
  std::size_t training_size = 0;
  std::vector<std::string> warnings;
};

/// Exactly two distinct labels required (ArgumentError otherwise).
BinarySvm svm_train_binary(const LabeledGram& lg, double C, const SvmOptions& options = {});

/// Any number (>= 2) of classes.
SvmModel svm_train(const LabeledGram& lg, double C, const SvmOptions& options = {});

/// `kernel_row` holds k(x_i, x) for every training point i.
int svm_predict(const SvmModel& model, std::span<const double> kernel_row);

/// Rows of `cross` are test points, columns training points.
std::vector<int> svm_predict_all(const SvmModel& model, const Eigen::MatrixXd& cross);

double accuracy(std::span<const int> predicted, std::span<const int> truth);

}  // namespace pdsw
