#include "pdsw/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "pdsw/errors.hpp"
#include "pdsw/sliced_wasserstein.hpp"

namespace pdsw {

namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw ArgumentError(std::string(name) + " must be positive and finite");
  }
}

template <class... F>
struct Overloaded : F... {
  using F::operator()...;
};
template <class... F>
Overloaded(F...) -> Overloaded<F...>;

}  // namespace

void validate(const KernelSpec& spec) {
  std::visit(Overloaded{
                 [](const SwKernel& k) {
                   require_positive(k.sigma, "sigma");
                   if (k.mode == SwMode::approx && k.direction_count < 1) {
                     throw ArgumentError("approximate SW needs at least one direction");
                   }
                 },
                 [](const PssKernel& k) { require_positive(k.t, "t"); },
                 [](const PwgKernel& k) {
                   require_positive(k.K, "K");
                   require_positive(k.p, "p");
                   require_positive(k.rho, "rho");
                   require_positive(k.tau, "tau");
                 },
                 [](const GaussD1Kernel& k) { require_positive(k.sigma, "sigma"); },
             },
             spec);
}

std::string describe(const KernelSpec& spec) {
  std::ostringstream out;
  out.precision(17);
  std::visit(Overloaded{
                 [&](const SwKernel& k) {
                   out << "sw(sigma=" << k.sigma << ", ";
                   if (k.mode == SwMode::exact) {
                     out << "exact)";
                   } else {
                     out << "approx M=" << k.direction_count << ")";
                   }
                 },
                 [&](const PssKernel& k) { out << "pss(t=" << k.t << ")"; },
                 [&](const PwgKernel& k) {
                   out << "pwg(K=" << k.K << ", p=" << k.p << ", rho=" << k.rho
                       << ", tau=" << k.tau << (k.squared ? ", squared)" : ")");
                 },
                 [&](const GaussD1Kernel& k) { out << "gauss-d1(sigma=" << k.sigma << ")"; },
             },
             spec);
  return out.str();
}

bool has_unit_diagonal(const KernelSpec& spec) noexcept {
  return !std::holds_alternative<PssKernel>(spec);
}

double sw_distance(const PersistenceDiagram& d1, const PersistenceDiagram& d2, SwMode mode,
                   std::size_t direction_count) {
  return mode == SwMode::exact ? sw_exact(d1, d2).value
                               : sw_approx(d1, d2, direction_count).value;
}

double sw_rbf(double sw, double sigma) noexcept { return std::exp(-sw / (2.0 * sigma * sigma)); }

double k_sw(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double sigma, SwMode mode,
            std::size_t direction_count) {
  validate(SwKernel{sigma, mode, direction_count});
  return sw_rbf(sw_distance(d1, d2, mode, direction_count), sigma);
}

double k_pss(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double t) {
  require_positive(t, "t");
  const double scale = 8.0 * t;
  double total = 0.0;
  for (const auto& p : d1.points()) {
    for (const auto& q : d2.points()) {
      const double db = p.birth - q.birth;
      const double dd = p.death - q.death;
      // q mirrored across the diagonal is (q.death, q.birth).
      const double mb = p.birth - q.death;
      const double md = p.death - q.birth;
      total += std::exp(-(db * db + dd * dd) / scale) - std::exp(-(mb * mb + md * md) / scale);
    }
  }
  return total / (std::numbers::pi * scale);
}

namespace {

std::vector<double> pwg_weights(const PersistenceDiagram& d, double K, double p) {
  std::vector<double> w;
  w.reserve(d.size());
  for (const auto& x : d.points()) w.push_back(std::atan(K * std::pow(persistence(x), p)));
  return w;
}

// sum_{a, b} w_a w_b exp(-||a - b||^2 / (2 rho^2))
double weighted_gaussian_sum(const PersistenceDiagram& a, std::span<const double> wa,
                             const PersistenceDiagram& b, std::span<const double> wb,
                             double rho) {
  const double denom = 2.0 * rho * rho;
  double total = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (wa[i] == 0.0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      const double db = a[i].birth - b[j].birth;
      const double dd = a[i].death - b[j].death;
      total += wa[i] * wb[j] * std::exp(-(db * db + dd * dd) / denom);
    }
  }
  return total;
}

}  // namespace

double k_pwg(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double K, double p,
             double rho, double tau, bool squared) {
  validate(PwgKernel{K, p, rho, tau, squared});
  const auto w1 = pwg_weights(d1, K, p);
  const auto w2 = pwg_weights(d2, K, p);
  const double norm2 = std::max(0.0, weighted_gaussian_sum(d1, w1, d1, w1, rho) +
                                         weighted_gaussian_sum(d2, w2, d2, w2, rho) -
                                         2.0 * weighted_gaussian_sum(d1, w1, d2, w2, rho));
  const double dist = squared ? norm2 : std::sqrt(norm2);
  return std::exp(-dist / (2.0 * tau * tau));
}

double k_gauss_d1(const PersistenceDiagram& d1, const PersistenceDiagram& d2, double sigma,
                  const MetricOptions& metric) {
  require_positive(sigma, "sigma");
  return std::exp(-diagram_distance(d1, d2, 1, metric) / (2.0 * sigma * sigma));
}

double evaluate_kernel(const KernelSpec& spec, const PersistenceDiagram& d1,
                       const PersistenceDiagram& d2) {
  return std::visit(
      Overloaded{
          [&](const SwKernel& k) { return k_sw(d1, d2, k.sigma, k.mode, k.direction_count); },
          [&](const PssKernel& k) { return k_pss(d1, d2, k.t); },
          [&](const PwgKernel& k) { return k_pwg(d1, d2, k.K, k.p, k.rho, k.tau, k.squared); },
          [&](const GaussD1Kernel& k) { return k_gauss_d1(d1, d2, k.sigma, k.metric); },
      },
      spec);
}

double rkhs_distance(const KernelSpec& spec, const PersistenceDiagram& d1,
                     const PersistenceDiagram& d2) {
  validate(spec);
  const double k12 = evaluate_kernel(spec, d1, d2);
  double k11 = 1.0, k22 = 1.0;
  if (!has_unit_diagonal(spec)) {
    k11 = evaluate_kernel(spec, d1, d1);
    k22 = evaluate_kernel(spec, d2, d2);
  }
  return std::sqrt(std::max(0.0, k11 + k22 - 2.0 * k12));
}

double nearest_rank_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw ArgumentError("quantile of an empty sample");
  const auto n = static_cast<double>(sorted.size());
  auto rank = static_cast<std::size_t>(std::ceil(q * n));
  rank = std::clamp<std::size_t>(rank, 1, sorted.size());
  return sorted[rank - 1];
}

std::vector<double> sw_sigma_grid(std::span<const double> pairwise_sw) {
  if (pairwise_sw.empty()) throw ArgumentError("sigma grid needs at least one SW value");
  std::vector<double> sorted(pairwise_sw.begin(), pairwise_sw.end());
  for (const double v : sorted) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw ArgumentError("SW values must be finite and nonnegative");
    }
  }
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> grid;
  for (const double q : {0.1, 0.5, 0.9}) {
    const double base = std::sqrt(nearest_rank_quantile(sorted, q));
    for (const double f : kSigmaFactors) grid.push_back(base * f);
  }
  std::erase_if(grid, [](double s) { return !(s > 0.0); });
  if (grid.empty()) throw ArgumentError("all SW quantiles are zero; no valid sigma");
  std::sort(grid.begin(), grid.end());
  return grid;
}

}  // namespace pdsw
