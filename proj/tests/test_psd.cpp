#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "pdsw/errors.hpp"
#include "pdsw/psd.hpp"
#include "pdsw/random.hpp"

using namespace pdsw;

TEST_CASE("identity") {
  const auto r = check_psd(Eigen::MatrixXd::Identity(3, 3), 1e-8);
  CHECK(r.min_eigenvalue == doctest::Approx(1.0));
  CHECK(r.is_psd);
}

TEST_CASE("indefinite 2x2") {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 2, 1;
  const auto r = check_psd(m, 1e-8);
  CHECK(r.min_eigenvalue == doctest::Approx(-1.0));
  CHECK_FALSE(r.is_psd);
}

TEST_CASE("asymmetric input is rejected") {
  Eigen::MatrixXd m(2, 2);
  m << 1, 2, 0, 1;
  CHECK_THROWS_AS(check_psd(m, 1e-8), ArgumentError);
}

TEST_CASE("empty and 1x1") {
  Eigen::MatrixXd one(1, 1);
  one << -3;
  CHECK(smallest_eigenvalue(one) == -3);
}

TEST_CASE("Lanczos agrees with a dense eigen-solve") {
  Rng rng(17);
  for (int k = 0; k < 40; ++k) {
    const int n = 1 + static_cast<int>(rng.below(60));
    Eigen::MatrixXd a(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) a(i, j) = rng.uniform(-1, 1);
    Eigen::MatrixXd s = 0.5 * (a + a.transpose());
    if (k % 3 == 0) s = a * a.transpose();  // PSD, possibly rank deficient
    if (k % 5 == 0) s = Eigen::MatrixXd::Identity(n, n) * 2.0;  // repeated eigenvalue
    const double ref = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(s).eigenvalues().minCoeff();
    CHECK(smallest_eigenvalue(s) == doctest::Approx(ref).epsilon(1e-8).scale(1.0));
  }
}

TEST_CASE("deterministic") {
  Eigen::MatrixXd m = Eigen::MatrixXd::Random(20, 20);
  m = m + m.transpose().eval();
  CHECK(smallest_eigenvalue(m) == smallest_eigenvalue(m));
}
