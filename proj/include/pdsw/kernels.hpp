#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "pdsw/diagram.hpp"
#include "pdsw/diagram_metrics.hpp"

namespace pdsw {

enum class SwMode { exact, approx };

/// exp(-SW / (2 sigma^2)); SW enters to the first power.
struct SwKernel {
  double sigma = 1.0;
  SwMode mode = SwMode::exact;
  std::size_t direction_count = 0;  // used by approx
};

/// Persistence scale-space (heat diffusion) kernel.
struct PssKernel {
  double t = 1.0;
};

/// Persistence-weighted Gaussian kernel. `squared` switches the outer exponent
/// from ||mu1 - mu2|| to ||mu1 - mu2||^2.
struct PwgKernel {
  double K = 1.0;
  double p = 1.0;
  double rho = 1.0;
  double tau = 1.0;
  bool squared = false;
};

/// exp(-d1 / (2 sigma^2)). Not positive definite in general; diagnostics only.
struct GaussD1Kernel {
  double sigma = 1.0;
  MetricOptions metric;
};

using KernelSpec = std::variant<SwKernel, PssKernel, PwgKernel, GaussD1Kernel>;

/// Throws ArgumentError unless every scale parameter is strictly positive.
void validate(const KernelSpec& spec);
std::string describe(const KernelSpec& spec);
/// True for the RBF families (SW, PWG, GaussD1), whose self-similarity is 1.
bool has_unit_diagonal(const KernelSpec& spec) noexcept;

/// SW between two diagrams in the requested mode.
double sw_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2, SwMode mode,
                   std::size_t direction_count);

/// The RBF map applied to a cached SW value. Gram entries built from a cached
/// distance matrix go through this same function, so they are bit-identical
/// to direct evaluation.
double sw_rbf(double sw, double sigma) noexcept;

double k_sw(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double sigma,
            SwMode mode = SwMode::exact, std::size_t direction_count = 0);
double k_pss(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double t);
double k_pwg(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double K, double p,
             double rho, double tau, bool squared = false);
double k_gauss_d1(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double sigma,
                  const MetricOptions& metric = {});

double evaluate_kernel(const KernelSpec& spec, const PersistenceDiagram& d1,
                       const PersistenceDiagram& d2);

/// sqrt(max(0, k11 + k22 - 2 k12)).
double rkhs_distance(const KernelSpec& spec, const PersistenceDiagram& d1,
                     const PersistenceDiagram& d2);

/// Nearest-rank (inclusive) quantile of ascending-sorted values: the
/// ceil(q * n)-th smallest, at least the first.
double nearest_rank_quantile(std::span<const double> sorted, double q);

inline constexpr double kSigmaFactors[] = {0.01, 0.1, 1.0, 10.0, 100.0};

/// {sqrt(q10), sqrt(q50), sqrt(q90)} x {0.01, 0.1, 1, 10, 100}, ascending, over
/// pairwise SW values. Non-positive entries are dropped; throws ArgumentError
/// if the input is empty or nothing positive remains.
std::vector<double> sw_sigma_grid(std::span<const double> pairwise_sw);

/// The 13 diffusion times used for PSS cross-validation.
inline constexpr double kPssTimeGrid[] = {0.001, 0.005, 0.01, 0.05, 0.1, 0.5, 1.0,
                                          5.0,   10.0,  50.0, 100.0, 500.0, 1000.0};

/// Cost-factor grid for C-SVM cross-validation.
inline constexpr double kSvmCostGrid[] = {0.001, 0.01, 0.1, 1.0, 10.0, 100.0, 1000.0};

}  // namespace pdsw
