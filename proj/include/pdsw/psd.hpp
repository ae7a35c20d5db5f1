#pragma once

#include <Eigen/Core>

namespace pdsw {

struct PsdReport {
  double min_eigenvalue = 0.0;
  bool is_psd = true;
};

/// Smallest eigenvalue of a symmetric matrix by Lanczos iteration with full
/// reorthogonalization, stopped once the Ritz residual falls below
/// 1e-10 * max(1, ||g||_F).
double smallest_eigenvalue(const Eigen::MatrixXd& g);

/// Throws ArgumentError if g is not symmetric to 1e-9.
PsdReport check_psd(const Eigen::MatrixXd& g, double tol);

}  // namespace pdsw
