#include "pdsw/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "pdsw/errors.hpp"
#include "pdsw/psd.hpp"

namespace pdsw {

namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

SvmDual solve_svm_dual(const Eigen::MatrixXd& kernel, std::span<const int> y, double C,
                       const SvmOptions& options) {
  if (!(C > 0.0)) throw ArgumentError("SVM cost C must be positive");
  const auto n = static_cast<std::size_t>(kernel.rows());
  if (kernel.cols() != kernel.rows() || y.size() != n) {
    throw ArgumentError("SVM kernel/label size mismatch");
  }
  for (const int v : y) {
    if (v != 1 && v != -1) throw ArgumentError("SVM dual labels must be +1 or -1");
  }
  auto K = [&](std::size_t i, std::size_t j) {
    return kernel(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  };
  auto Q = [&](std::size_t i, std::size_t j) { return static_cast<double>(y[i] * y[j]) * K(i, j); };
  SvmDual out;
  std::vector<double>& alpha = out.alpha;
  alpha.assign(n, 0.0);
  std::vector<double> grad(n, -1.0);
  auto at_upper = [&](std::size_t t) { return alpha[t] >= C; };
  auto at_lower = [&](std::size_t t) { return alpha[t] <= 0.0; };

  std::size_t iter = 0;
  for (; iter < options.max_iterations; ++iter) {
    // i maximizes -y_t G_t over I_up.
    double gmax = -kInf;
    std::size_t i = n;
    for (std::size_t t = 0; t < n; ++t) {
      if (y[t] == 1) {
        if (!at_upper(t) && -grad[t] >= gmax) {
          gmax = -grad[t];
          i = t;
        }
      } else if (!at_lower(t) && grad[t] >= gmax) {
        gmax = grad[t];
        i = t;
      }
    }
    // j minimizes the second-order objective decrease over I_low.
    double gmax2 = -kInf;
    double best_decrease = kInf;
    std::size_t j = n;
    for (std::size_t t = 0; t < n && i < n; ++t) {
      double grad_diff;
      if (y[t] == 1) {
        if (at_lower(t)) continue;
        gmax2 = std::max(gmax2, grad[t]);
        grad_diff = gmax + grad[t];
      } else {
        if (at_upper(t)) continue;
        gmax2 = std::max(gmax2, -grad[t]);
        grad_diff = gmax - grad[t];
      }
      if (grad_diff > 0) {
        double quad = K(i, i) + K(t, t) - 2.0 * K(i, t);
        if (quad <= 0) quad = kTau;
        const double decrease = -(grad_diff * grad_diff) / quad;
        if (decrease <= best_decrease) {
          best_decrease = decrease;
          j = t;
        }
      }
    }
    out.kkt_violation = gmax + gmax2;
    if (i == n || j == n || gmax + gmax2 < options.tolerance) break;

    const double old_i = alpha[i];
    const double old_j = alpha[j];
    if (y[i] != y[j]) {
      double quad = Q(i, i) + Q(j, j) + 2.0 * Q(i, j);
      if (quad <= 0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0) {
        if (alpha[j] < 0) {
          alpha[j] = 0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = -diff;
      }
      if (diff > 0) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = C - diff;
        }
      } else if (alpha[j] > C) {
        alpha[j] = C;
        alpha[i] = C + diff;
      }
    } else {
      double quad = Q(i, i) + Q(j, j) - 2.0 * Q(i, j);
      if (quad <= 0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > C) {
        if (alpha[i] > C) {
          alpha[i] = C;
          alpha[j] = sum - C;
        }
      } else if (alpha[j] < 0) {
        alpha[j] = 0;
        alpha[i] = sum;
      }
      if (sum > C) {
        if (alpha[j] > C) {
          alpha[j] = C;
          alpha[i] = sum - C;
        }
      } else if (alpha[i] < 0) {
        alpha[i] = 0;
        alpha[j] = sum;
      }
    }
    const double di = alpha[i] - old_i;
    const double dj = alpha[j] - old_j;
    for (std::size_t t = 0; t < n; ++t) grad[t] += Q(i, t) * di + Q(j, t) * dj;
  }
  out.iterations = iter;

  double ub = kInf, lb = -kInf, sum_free = 0.0;
  std::size_t free_count = 0;
  for (std::size_t t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (at_upper(t)) {
      if (y[t] == -1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (at_lower(t)) {
      if (y[t] == 1) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++free_count;
      sum_free += yg;
    }
  }
  out.rho = free_count > 0 ? sum_free / static_cast<double>(free_count) : (ub + lb) / 2;
  double obj = 0.0;
  for (std::size_t t = 0; t < n; ++t) obj += alpha[t] * (grad[t] - 1.0);
  out.objective = obj / 2;
  return out;
}

double BinarySvm::decision(std::span<const double> kernel_row) const {
  double v = bias;
  for (std::size_t k = 0; k < support.size(); ++k) v += coefficients[k] * kernel_row[support[k]];
  return v;
}

int BinarySvm::predict(std::span<const double> kernel_row) const {
  return decision(kernel_row) > 0 ? positive_label : negative_label;
}

namespace {

std::vector<int> distinct_labels(std::span<const int> labels) {
  std::vector<int> classes(labels.begin(), labels.end());
  std::sort(classes.begin(), classes.end());
  classes.erase(std::unique(classes.begin(), classes.end()), classes.end());
  return classes;
}

void check_shapes(const LabeledGram& lg) {
  if (lg.gram.rows() != lg.gram.cols() ||
      static_cast<std::size_t>(lg.gram.rows()) != lg.labels.size()) {
    throw ArgumentError("label count must match the Gram dimension");
  }
}

BinarySvm train_pair(const LabeledGram& lg, std::span<const std::size_t> rows, int positive,
                     int negative, double C, const SvmOptions& options) {
  const auto m = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd sub(m, m);
  std::vector<int> y(rows.size());
  for (Eigen::Index a = 0; a < m; ++a) {
    y[static_cast<std::size_t>(a)] = lg.labels[rows[a]] == positive ? 1 : -1;
    for (Eigen::Index b = 0; b < m; ++b) {
      sub(a, b) = lg.gram(static_cast<Eigen::Index>(rows[a]), static_cast<Eigen::Index>(rows[b]));
    }
  }
  const SvmDual dual = solve_svm_dual(sub, y, C, options);
  BinarySvm svm;
  svm.positive_label = positive;
  svm.negative_label = negative;
  svm.bias = -dual.rho;
  svm.objective = dual.objective;
  for (std::size_t a = 0; a < rows.size(); ++a) {
    if (dual.alpha[a] > 0.0) {
      svm.support.push_back(rows[a]);
      svm.coefficients.push_back(dual.alpha[a] * y[a]);
    }
  }
  return svm;
}

void maybe_warn_psd(const LabeledGram& lg, const SvmOptions& options,
                    std::vector<std::string>& warnings) {
  if (!options.warn_non_psd) return;
  const auto report = check_psd(lg.gram, options.psd_tolerance);
  if (!report.is_psd) {
    std::ostringstream msg;
    msg << "Gram matrix is not positive semi-definite (min eigenvalue " << report.min_eigenvalue
        << "); the solver result may not be a global optimum";
    warnings.push_back(msg.str());
  }
}

}  // namespace

BinarySvm svm_train_binary(const LabeledGram& lg, double C, const SvmOptions& options) {
  check_shapes(lg);
  const auto classes = distinct_labels(lg.labels);
  if (classes.size() != 2) {
    throw ArgumentError("binary SVM needs exactly two classes, got " +
                        std::to_string(classes.size()));
  }
  std::vector<std::size_t> rows(lg.labels.size());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  return train_pair(lg, rows, classes[0], classes[1], C, options);
}

SvmModel svm_train(const LabeledGram& lg, double C, const SvmOptions& options) {
  check_shapes(lg);
  SvmModel model;
  model.classes = distinct_labels(lg.labels);
  model.training_size = lg.labels.size();
  if (model.classes.size() < 2) throw ArgumentError("SVM training needs at least two classes");
  maybe_warn_psd(lg, options, model.warnings);
  for (std::size_t a = 0; a < model.classes.size(); ++a) {
    for (std::size_t b = a + 1; b < model.classes.size(); ++b) {
      std::vector<std::size_t> rows;
      for (std::size_t i = 0; i < lg.labels.size(); ++i) {
        if (lg.labels[i] == model.classes[a] || lg.labels[i] == model.classes[b]) {
          rows.push_back(i);
        }
      }
      model.machines.push_back(
          train_pair(lg, rows, model.classes[a], model.classes[b], C, options));
    }
  }
  return model;
}

int svm_predict(const SvmModel& model, std::span<const double> kernel_row) {
  if (kernel_row.size() != model.training_size) {
    throw ArgumentError("kernel row length " + std::to_string(kernel_row.size()) +
                        " does not match training size " + std::to_string(model.training_size));
  }
  std::vector<std::size_t> votes(model.classes.size(), 0);
  for (const auto& m : model.machines) {
    const int winner = m.predict(kernel_row);
    const auto it = std::lower_bound(model.classes.begin(), model.classes.end(), winner);
    ++votes[static_cast<std::size_t>(it - model.classes.begin())];
  }
  // max_element returns the first maximum, i.e. the lowest class index.
  const auto best = std::max_element(votes.begin(), votes.end());
  return model.classes[static_cast<std::size_t>(best - votes.begin())];
}

std::vector<int> svm_predict_all(const SvmModel& model, const Eigen::MatrixXd& cross) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(cross.rows()));
  std::vector<double> row(static_cast<std::size_t>(cross.cols()));
  for (Eigen::Index r = 0; r < cross.rows(); ++r) {
    for (Eigen::Index c = 0; c < cross.cols(); ++c) row[static_cast<std::size_t>(c)] = cross(r, c);
    out.push_back(svm_predict(model, row));
  }
  return out;
}

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) throw ArgumentError("accuracy: size mismatch");
  if (truth.empty()) return 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += predicted[i] == truth[i];
  return static_cast<double>(hits) / static_cast<double>(truth.size());
}

}  // namespace pdsw
