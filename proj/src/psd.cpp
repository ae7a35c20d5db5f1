#include "pdsw/psd.hpp"

#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pdsw/errors.hpp"
#include "pdsw/random.hpp"

namespace pdsw {

namespace {

// Orthogonalizes v against the basis twice; returns the remaining norm.
double orthogonalize(Eigen::VectorXd& v, const std::vector<Eigen::VectorXd>& basis) {
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& q : basis) v -= q.dot(v) * q;
  }
  return v.norm();
}

}  // namespace

double smallest_eigenvalue(const Eigen::MatrixXd& g) {
  const auto n = g.rows();
  if (n == 0) throw ArgumentError("eigenvalue of an empty matrix");
  if (n == 1) return g(0, 0);
  const double scale = std::max(1.0, g.norm());
  const double tol = 1e-10 * scale;

  Rng rng(0x5eed);
  auto random_vector = [&] {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = rng.uniform(-1.0, 1.0);
    return v;
  };

  std::vector<Eigen::VectorXd> basis;
  std::vector<double> alpha, beta;  // beta[k] couples basis[k] and basis[k + 1]
  Eigen::VectorXd q = random_vector();
  q.normalize();
  double best = g(0, 0);
  while (static_cast<Eigen::Index>(basis.size()) < n) {
    basis.push_back(q);
    Eigen::VectorXd w = g * q;
    alpha.push_back(q.dot(w));
    double b = orthogonalize(w, basis);

    const auto k = static_cast<Eigen::Index>(alpha.size());
    Eigen::VectorXd diag = Eigen::Map<Eigen::VectorXd>(alpha.data(), k);
    Eigen::VectorXd sub(k > 1 ? k - 1 : 0);
    for (Eigen::Index i = 0; i + 1 < k; ++i) sub(i) = beta[static_cast<std::size_t>(i)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
    tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
    best = tri.eigenvalues()(0);
    const double residual = std::abs(b * tri.eigenvectors()(k - 1, 0));
    if (residual <= tol || k == n) break;

    if (b <= tol) {
      // Invariant subspace found: continue from a fresh orthogonal direction,
      // decoupled from the current block.
      w = random_vector();
      b = orthogonalize(w, basis);
      beta.push_back(0.0);
    } else {
      beta.push_back(b);
    }
    q = w / b;
  }
  return best;
}

PsdReport check_psd(const Eigen::MatrixXd& g, double tol) {
  if (g.rows() != g.cols()) throw ArgumentError("PSD check needs a square matrix");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-9) {
    throw ArgumentError("PSD check needs a symmetric matrix");
  }
  PsdReport r;
  r.min_eigenvalue = smallest_eigenvalue(g);
  r.is_psd = r.min_eigenvalue >= -tol;
  return r;
}

}  // namespace pdsw
