#include "pdsw/property_suites.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <Eigen/Core>

#include "pdsw/diagram_metrics.hpp"
#include "pdsw/errors.hpp"
#include "pdsw/gram.hpp"
#include "pdsw/kernels.hpp"
#include "pdsw/parallel.hpp"
#include "pdsw/psd.hpp"
#include "pdsw/random.hpp"
#include "pdsw/sliced_wasserstein.hpp"
#include "pdsw/stats.hpp"
#include "pdsw/wasserstein_line.hpp"

namespace pdsw {

SuiteHooks SuiteHooks::resolved() const {
  SuiteHooks h = *this;
  if (!h.w1) h.w1 = [](std::span<const double> a, std::span<const double> b) { return w1_sorted(a, b); };
  if (!h.sw_exact) {
    h.sw_exact = [](const PersistenceDiagram& a, const PersistenceDiagram& b) { return pdsw::sw_exact(a, b).value; };
  }
  if (!h.sw_approx) {
    h.sw_approx = [](const PersistenceDiagram& a, const PersistenceDiagram& b, std::size_t m) {
      return pdsw::sw_approx(a, b, m).value;
    };
  }
  if (!h.d1) {
    h.d1 = [](const PersistenceDiagram& a, const PersistenceDiagram& b) { return diagram_distance(a, b, 1); };
  }
  return h;
}

namespace {

class Tracker {
 public:
  Tracker(std::string suite, std::string name) {
    r_.suite = std::move(suite);
    r_.name = std::move(name);
    r_.worst_margin = std::numeric_limits<double>::infinity();
  }

  // margin = allowed - observed; `ok` decides pass/fail for this trial.
  template <class Capture>
  void record(bool ok, double margin, Capture&& capture) {
    ++r_.trials;
    if (margin < r_.worst_margin) r_.worst_margin = margin;
    if (!ok && r_.passed) {
      r_.passed = false;
      capture(r_);
    }
  }
  void record(double margin) { record(margin >= 0, margin, [](PropertyResult&) {}); }
  void record_diagrams(double margin, std::vector<PersistenceDiagram> dgms) {
    record(margin >= 0, margin, [&](PropertyResult& r) { r.counterexample = std::move(dgms); });
  }
  void record_measures(double margin, std::vector<std::vector<double>> m) {
    record(margin >= 0, margin, [&](PropertyResult& r) { r.counterexample_measures = std::move(m); });
  }
  void note(std::string detail) { r_.detail = std::move(detail); }

  PropertyResult finish() {
    if (r_.trials == 0) r_.worst_margin = 0.0;
    return std::move(r_);
  }

 private:
  PropertyResult r_;
};

std::size_t family_trials(const SuiteOptions& o) { return std::max<std::size_t>(10, o.trials / 10); }

std::vector<double> random_atoms(Rng& rng, std::size_t n, double lo = -5.0, double hi = 5.0) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(lo, hi);
  return v;
}

// Multiples of 2^-8 in [-8, 8): sums and differences of these are exact.
std::vector<double> dyadic_atoms(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = (static_cast<double>(rng.below(4096)) - 2048.0) / 256.0;
  return v;
}

std::vector<double> zero_sum_weights(Rng& rng, std::size_t n) {
  std::vector<double> a(n);
  double mean = 0.0;
  for (auto& x : a) {
    x = rng.uniform(-1.0, 1.0);
    mean += x;
  }
  mean /= static_cast<double>(n);
  for (auto& x : a) x -= mean;
  return a;
}

double quadratic_form(std::span<const double> a, const Eigen::MatrixXd& m) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      s += a[i] * a[j] * m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  }
  return s;
}

std::vector<PropertyResult> wasserstein_suite(const SuiteOptions& o, const SuiteHooks& h) {
  std::vector<PropertyResult> out;
  Rng rng(derive_seed(o.seed, 1));
  {
    Tracker t("wasserstein", "sorted-equals-assignment-oracle");
    for (std::size_t k = 0; k < o.trials; ++k) {
      const std::size_t n = 1 + rng.below(6);
      const auto x = random_atoms(rng, n);
      const auto y = random_atoms(rng, n);
      const double err = std::abs(h.w1(x, y) - w1_assignment_oracle(x, y));
      t.record_measures(1e-9 - err, {x, y});
    }
    out.push_back(t.finish());
  }
  {
    Tracker t("wasserstein", "translation-invariance");
    for (std::size_t k = 0; k < o.trials; ++k) {
      const std::size_t n = 1 + rng.below(8);
      auto x = dyadic_atoms(rng, n);
      auto y = dyadic_atoms(rng, n);
      const double c = (static_cast<double>(rng.below(4096)) - 2048.0) / 256.0;
      const double base = h.w1(x, y);
      auto xs = x, ys = y;
      for (auto& v : xs) v += c;
      for (auto& v : ys) v += c;
      const double err = std::abs(h.w1(xs, ys) - base);
      t.record(err == 0.0, 0.0 - err, [&](PropertyResult& r) { r.counterexample_measures = {x, y, {c}}; });
    }
    t.note("dyadic atoms and shifts, exact equality");
    out.push_back(t.finish());
  }
  {
    Tracker t("wasserstein", "mass-addition-invariance");
    for (std::size_t k = 0; k < o.trials; ++k) {
      const std::size_t n = 1 + rng.below(6);
      const auto x = random_atoms(rng, n);
      const auto y = random_atoms(rng, n);
      const auto g = random_atoms(rng, 1 + rng.below(4));
      auto xg = x, yg = y;
      xg.insert(xg.end(), g.begin(), g.end());
      yg.insert(yg.end(), g.begin(), g.end());
      const double err = std::abs(h.w1(xg, yg) - h.w1(x, y));
      t.record_measures(1e-12 - err, {x, y, g});
    }
    out.push_back(t.finish());
  }
  {
    Tracker t("wasserstein", "conditional-negative-definiteness");
    for (std::size_t k = 0; k < family_trials(o); ++k) {
      const std::size_t count = 2 + rng.below(7);
      const std::size_t mass = 1 + rng.below(6);
      std::vector<std::vector<double>> family;
      for (std::size_t i = 0; i < count; ++i) family.push_back(random_atoms(rng, mass));
      Eigen::MatrixXd m(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(count));
      for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
          m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = h.w1(family[i], family[j]);
        }
      }
      const auto a = zero_sum_weights(rng, count);
      t.record_measures(1e-8 - quadratic_form(a, m), family);
    }
    out.push_back(t.finish());
  }
  {
    Tracker t("wasserstein", "triangle-inequality");
    for (std::size_t k = 0; k < o.trials; ++k) {
      const std::size_t n = 1 + rng.below(6);
      const auto x = random_atoms(rng, n);
      const auto y = random_atoms(rng, n);
      const auto z = random_atoms(rng, n);
      t.record_measures(h.w1(x, y) + h.w1(y, z) + 1e-12 - h.w1(x, z), {x, y, z});
    }
    out.push_back(t.finish());
  }
  return out;
}

struct DiagramPair {
  PersistenceDiagram a, b;
};

std::vector<PropertyResult> sw_suite(const SuiteOptions& o, const SuiteHooks& h) {
  std::vector<PropertyResult> out;
  Rng rng(derive_seed(o.seed, 2));
  const RandomDiagramShape small{8, 0, 1.0, 1.0};

  {
    Tracker sym_exact("sw", "symmetry-exact");
    Tracker sym_approx("sw", "symmetry-approx");
    Tracker stab("sw", "stability-2sqrt2-d1");
    Tracker disc("sw", "discriminativity-d1-over-2M");
    Tracker inj("sw", "injectivity-probe");
    std::size_t probes = 0;
    for (std::size_t k = 0; k < o.trials; ++k) {
      const auto a = random_diagram(rng, small);
      const auto b = random_diagram(rng, small);
      const double sw = h.sw_exact(a, b);
      const double sw_rev = h.sw_exact(b, a);
      sym_exact.record_diagrams(0.0 - std::abs(sw - sw_rev), {a, b});
      const double ap = h.sw_approx(a, b, 12);
      sym_approx.record_diagrams(0.0 - std::abs(ap - h.sw_approx(b, a, 12)), {a, b});
      const double d1 = h.d1(a, b);
      stab.record_diagrams(2.0 * std::numbers::sqrt2 * d1 + 1e-9 - sw, {a, b});
      const double n = static_cast<double>(std::max(a.size(), b.size()));
      const double m = 1.0 + 2.0 * n * (2.0 * n - 1.0);
      disc.record_diagrams(sw + 1e-9 - d1 / (2.0 * m), {a, b});
      if (d1 > 0.1) {
        ++probes;
        inj.record(sw > 0.0, sw, [&](PropertyResult& r) { r.counterexample = {a, b}; });
      }
    }
    inj.note(std::to_string(probes) + " pairs with d1 > 0.1");
    for (auto* t : {&sym_exact, &sym_approx, &stab, &disc, &inj}) out.push_back(t->finish());
  }
  {
    Tracker t("sw", "diagonal-point-neutrality");
    for (std::size_t k = 0; k < family_trials(o); ++k) {
      const auto a = random_diagram(rng, small);
      const auto b = random_diagram(rng, small);
      std::vector<DiagramPoint> extra(b.points().begin(), b.points().end());
      const std::size_t add = 1 + rng.below(3);
      for (std::size_t i = 0; i < add; ++i) {
        const double c = rng.uniform(0.0, 1.5);
        extra.push_back({c, c});
      }
      const PersistenceDiagram b2(std::move(extra));
      t.record_diagrams(1e-9 - std::abs(h.sw_exact(a, b2) - h.sw_exact(a, b)), {a, b, b2});
    }
    out.push_back(t.finish());
  }
  {
    Tracker exact("sw", "conditional-negative-definiteness-exact");
    Tracker approx("sw", "conditional-negative-definiteness-approx-M12");
    for (std::size_t k = 0; k < family_trials(o); ++k) {
      const std::size_t count = 2 + rng.below(7);
      std::vector<PersistenceDiagram> family;
      for (std::size_t i = 0; i < count; ++i) family.push_back(random_diagram(rng, {6, 0, 1.0, 1.0}));
      const auto n = static_cast<Eigen::Index>(count);
      Eigen::MatrixXd me(n, n), ma(n, n);
      for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
          me(i, j) = h.sw_exact(family[static_cast<std::size_t>(i)], family[static_cast<std::size_t>(j)]);
          ma(i, j) = h.sw_approx(family[static_cast<std::size_t>(i)], family[static_cast<std::size_t>(j)], 12);
        }
      }
      const auto a = zero_sum_weights(rng, count);
      exact.record_diagrams(1e-8 - quadratic_form(a, me), family);
      approx.record_diagrams(1e-8 - quadratic_form(a, ma), family);
    }
    out.push_back(exact.finish());
    out.push_back(approx.finish());
  }
  {
    // Expensive checks: draw inputs first, evaluate in parallel, reduce in order.
    const std::size_t oracle_trials = family_trials(o);
    std::vector<DiagramPair> pairs;
    for (std::size_t k = 0; k < oracle_trials; ++k) {
      pairs.push_back({random_diagram(rng, {10, 1, 1.0, 1.0}), random_diagram(rng, {10, 1, 1.0, 1.0})});
    }
    std::vector<double> exact(pairs.size()), oracle(pairs.size());
    parallel_for(pairs.size(), o.workers, [&](std::size_t k) {
      exact[k] = h.sw_exact(pairs[k].a, pairs[k].b);
      oracle[k] = sw_numeric_oracle(pairs[k].a, pairs[k].b, 100000).value;
    });
    Tracker t("sw", "exact-matches-numeric-oracle-M1e5");
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      t.record_diagrams(1e-3 * std::max(1.0, exact[k]) - std::abs(oracle[k] - exact[k]),
                        {pairs[k].a, pairs[k].b});
    }
    out.push_back(t.finish());
  }
  {
    const std::size_t ratio_trials = std::max<std::size_t>(10, o.trials / 5);
    std::vector<DiagramPair> pairs;
    for (std::size_t k = 0; k < ratio_trials; ++k) {
      pairs.push_back({random_diagram(rng, {8, 1, 1.0, 1.0}), random_diagram(rng, {8, 1, 1.0, 1.0})});
    }
    std::vector<double> exact(pairs.size()), m10(pairs.size()), m100(pairs.size());
    parallel_for(pairs.size(), o.workers, [&](std::size_t k) {
      exact[k] = h.sw_exact(pairs[k].a, pairs[k].b);
      m10[k] = h.sw_approx(pairs[k].a, pairs[k].b, 10);
      m100[k] = h.sw_approx(pairs[k].a, pairs[k].b, 100);
    });
    Tracker t10("sw", "approx-ratio-M10-within-5pct");
    Tracker t100("sw", "approx-ratio-M100-within-0.5pct");
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      t10.record_diagrams(0.05 - std::abs(m10[k] / exact[k] - 1.0), {pairs[k].a, pairs[k].b});
      t100.record_diagrams(0.005 - std::abs(m100[k] / exact[k] - 1.0), {pairs[k].a, pairs[k].b});
    }
    out.push_back(t10.finish());
    out.push_back(t100.finish());
  }
  return out;
}

Eigen::MatrixXd exact_sw_matrix(const std::vector<PersistenceDiagram>& ds, const SuiteHooks& h) {
  const auto n = static_cast<Eigen::Index>(ds.size());
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      m(i, j) = m(j, i) = h.sw_exact(ds[static_cast<std::size_t>(i)], ds[static_cast<std::size_t>(j)]);
    }
  }
  return m;
}

std::vector<PropertyResult> kernels_suite(const SuiteOptions& o, const SuiteHooks& h) {
  std::vector<PropertyResult> out;
  Rng rng(derive_seed(o.seed, 3));
  const RandomDiagramShape small{8, 0, 1.0, 1.0};
  {
    Tracker t("kernels", "rbf-unit-self-similarity-and-range");
    for (std::size_t k = 0; k < family_trials(o); ++k) {
      const auto a = random_diagram(rng, small);
      const auto b = random_diagram(rng, small);
      const std::vector<KernelSpec> specs = {SwKernel{0.7, SwMode::exact, 0}, SwKernel{0.7, SwMode::approx, 10},
                                             PwgKernel{1.0, 2.0, 0.5, 0.8, false}, GaussD1Kernel{0.9, {}}};
      double worst = std::numeric_limits<double>::infinity();
      for (const auto& s : specs) {
        const double kaa = evaluate_kernel(s, a, a);
        const double kab = evaluate_kernel(s, a, b);
        worst = std::min({worst, 0.0 - std::abs(kaa - 1.0), kab > 0.0 ? 1.0 - kab : -1.0});
      }
      t.record_diagrams(worst, {a, b});
    }
    out.push_back(t.finish());
  }
  {
    Tracker psd("kernels", "sw-gram-psd-over-sigma-grid");
    Tracker div("kernels", "sw-gram-infinitely-divisible");
    const std::size_t collections = std::max<std::size_t>(5, o.trials / 20);
    for (std::size_t k = 0; k < collections; ++k) {
      const std::size_t count = 2 + rng.below(9);
      std::vector<PersistenceDiagram> ds;
      for (std::size_t i = 0; i < count; ++i) ds.push_back(random_diagram(rng, small));
      const Eigen::MatrixXd dist = exact_sw_matrix(ds, h);
      std::vector<double> pairwise;
      for (Eigen::Index i = 0; i < dist.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < dist.cols(); ++j) pairwise.push_back(dist(i, j));
      }
      std::vector<double> sigmas;
      try {
        sigmas = sw_sigma_grid(pairwise);
      } catch (const ArgumentError&) {
        sigmas = {1.0};
      }
      double worst_psd = std::numeric_limits<double>::infinity();
      double worst_div = std::numeric_limits<double>::infinity();
      for (const double s : sigmas) {
        const Eigen::MatrixXd g = sw_gram_from_distances(dist, s);
        worst_psd = std::min(worst_psd, smallest_eigenvalue(g) + 1e-8);
        for (const double gamma : {0.5, 2.0, 3.7}) {
          worst_div = std::min(worst_div, smallest_eigenvalue(g.array().pow(gamma).matrix()) + 1e-8);
        }
      }
      psd.record_diagrams(worst_psd, ds);
      div.record_diagrams(worst_div, ds);
    }
    out.push_back(psd.finish());
    out.push_back(div.finish());
  }
  {
    Tracker t("kernels", "sw-rkhs-distance-triangle");
    const double sigma = 0.5;
    auto dk = [&](double sw) { return std::sqrt(std::max(0.0, 2.0 - 2.0 * sw_rbf(sw, sigma))); };
    for (std::size_t k = 0; k < o.trials; ++k) {
      const auto a = random_diagram(rng, small);
      const auto b = random_diagram(rng, small);
      const auto c = random_diagram(rng, small);
      const double ab = dk(h.sw_exact(a, b));
      const double bc = dk(h.sw_exact(b, c));
      const double ac = dk(h.sw_exact(a, c));
      t.record_diagrams(ab + bc + 1e-9 - ac, {a, b, c});
    }
    out.push_back(t.finish());
  }
  {
    Tracker t("kernels", "sw-metric-distortion-spearman-0.9");
    Tracker mono("kernels", "sw-metric-distortion-lowess-monotone");
    std::vector<PersistenceDiagram> ds;
    for (std::size_t i = 0; i < 40; ++i) ds.push_back(random_diagram(rng, {8, 1, 1.0, 1.0}));
    const Eigen::MatrixXd dist = exact_sw_matrix(ds, h);
    std::vector<double> pairwise;
    for (Eigen::Index i = 0; i < dist.rows(); ++i) {
      for (Eigen::Index j = i + 1; j < dist.cols(); ++j) pairwise.push_back(dist(i, j));
    }
    // Largest bandwidth factor of the sigma grid: the RKHS distance stays out
    // of its saturation regime, where ranks would collapse into ties.
    const double sigma = 10.0 * std::sqrt(median(pairwise));
    std::vector<double> x, y;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      for (std::size_t j = i + 1; j < ds.size(); ++j) {
        const double sw = dist(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
        x.push_back(h.d1(ds[i], ds[j]));
        y.push_back(std::log(std::sqrt(std::max(1e-300, 2.0 - 2.0 * sw_rbf(sw, sigma)))));
      }
    }
    const double rho = spearman(x, y);
    t.record(rho >= 0.9, rho - 0.9, [&](PropertyResult& r) { r.counterexample = ds; });
    t.note("spearman = " + std::to_string(rho) + ", sigma = " + std::to_string(sigma));
    std::vector<std::size_t> order(x.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
    std::vector<double> xs, ys;
    for (const auto i : order) {
      xs.push_back(x[i]);
      ys.push_back(y[i]);
    }
    const auto fit = lowess(xs, ys);
    double worst_step = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < fit.size(); ++i) {
      if (xs[i] > xs[i - 1]) worst_step = std::min(worst_step, fit[i] - fit[i - 1]);
    }
    mono.record(worst_step > 0.0, worst_step, [&](PropertyResult& r) { r.counterexample = ds; });
    out.push_back(t.finish());
    out.push_back(mono.finish());
  }
  return out;
}

}  // namespace

std::vector<PropertyResult> run_property_suite(std::string_view suite, const SuiteOptions& options,
                                               const SuiteHooks& hooks) {
  const SuiteHooks h = hooks.resolved();
  if (suite == "wasserstein") return wasserstein_suite(options, h);
  if (suite == "sw") return sw_suite(options, h);
  if (suite == "kernels") return kernels_suite(options, h);
  if (suite == "all") {
    std::vector<PropertyResult> all;
    for (const auto name : kSuiteNames) {
      auto part = run_property_suite(name, options, hooks);
      all.insert(all.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return all;
  }
  throw ArgumentError("unknown suite '" + std::string(suite) + "'");
}

std::filesystem::path dump_counterexample(const PropertyResult& result,
                                          const std::filesystem::path& dir) {
  namespace fs = std::filesystem;
  const fs::path target = dir / (result.suite + "-" + result.name);
  fs::create_directories(target);
  for (std::size_t i = 0; i < result.counterexample.size(); ++i) {
    write_diagram_file(target / ("diagram_" + std::to_string(i) + ".dgm"), result.counterexample[i]);
  }
  for (std::size_t i = 0; i < result.counterexample_measures.size(); ++i) {
    std::ofstream out(target / ("measure_" + std::to_string(i) + ".txt"), std::ios::binary);
    out.precision(17);
    for (const double v : result.counterexample_measures[i]) out << v << '\n';
  }
  return target;
}

}  // namespace pdsw
