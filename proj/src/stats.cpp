#include "pdsw/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pdsw/errors.hpp"

namespace pdsw {

std::vector<double> ranks(std::span<const double> values) {
  const std::size_t n = values.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> r(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i + 1;
    while (j < n && values[idx[j]] == values[idx[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j - 1) + 1.0;
    for (std::size_t k = i; k < j; ++k) r[idx[k]] = avg;
    i = j;
  }
  return r;
}

double spearman(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw ArgumentError("spearman needs paired samples");
  const auto rx = ranks(x);
  const auto ry = ranks(y);
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / n;
  const double my = std::accumulate(ry.begin(), ry.end(), 0.0) / n;
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < rx.size(); ++i) {
    sxy += (rx[i] - mx) * (ry[i] - my);
    sxx += (rx[i] - mx) * (rx[i] - mx);
    syy += (ry[i] - my) * (ry[i] - my);
  }
  if (sxx == 0 || syy == 0) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

std::vector<double> lowess(std::span<const double> x, std::span<const double> y, double frac) {
  const std::size_t n = x.size();
  if (y.size() != n || n < 2) throw ArgumentError("lowess needs paired samples");
  const auto k = std::clamp<std::size_t>(static_cast<std::size_t>(std::ceil(frac * static_cast<double>(n))), 2, n);
  std::vector<double> fitted(n);
  std::vector<double> dist(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dist[j] = std::abs(x[j] - x[i]);
    std::vector<double> sorted = dist;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k - 1), sorted.end());
    const double h = std::max(sorted[k - 1], 1e-300);
    double sw = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const double u = dist[j] / h;
      if (u >= 1.0) continue;
      const double t = 1.0 - u * u * u;
      const double w = t * t * t;
      sw += w;
      sx += w * x[j];
      sy += w * y[j];
      sxx += w * x[j] * x[j];
      sxy += w * x[j] * y[j];
    }
    const double mx = sx / sw;
    const double my = sy / sw;
    const double var = sxx / sw - mx * mx;
    const double slope = var > 1e-300 ? (sxy / sw - mx * my) / var : 0.0;
    fitted[i] = my + slope * (x[i] - mx);
  }
  return fitted;
}

double median(std::vector<double> values) {
  if (values.empty()) throw ArgumentError("median of an empty sample");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  double m = values[mid];
  if (values.size() % 2 == 0) {
    m = 0.5 * (m + *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid)));
  }
  return m;
}

}  // namespace pdsw
