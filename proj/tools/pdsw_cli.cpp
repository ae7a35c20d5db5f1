// pdsw: sliced Wasserstein kernels for persistence diagrams.
//
// Exit codes: 0 success, 1 property failure, 2 I/O or parse error,
// 3 precondition violation.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pdsw/bench.hpp"
#include "pdsw/cross_validation.hpp"
#include "pdsw/datasets.hpp"
#include "pdsw/diagram.hpp"
#include "pdsw/diagram_metrics.hpp"
#include "pdsw/errors.hpp"
#include "pdsw/gram.hpp"
#include "pdsw/kernels.hpp"
#include "pdsw/matrix_io.hpp"
#include "pdsw/parallel.hpp"
#include "pdsw/property_suites.hpp"
#include "pdsw/random.hpp"
#include "pdsw/sliced_wasserstein.hpp"
#include "pdsw/wasserstein_line.hpp"

namespace fs = std::filesystem;
using namespace pdsw;

namespace {

constexpr int kExitProperty = 1;
constexpr int kExitIo = 2;
constexpr int kExitPrecondition = 3;

struct Common {
  std::size_t workers = 0;
  std::optional<double> clamp_essential;
  std::size_t size_cap = MetricOptions{}.size_cap;

  MetricOptions metric() const { return MetricOptions{size_cap}; }
  std::size_t resolved_workers() const { return workers == 0 ? default_workers() : workers; }
  ParseOptions parse_options() const { return ParseOptions{clamp_essential}; }
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--workers", c.workers, "Worker threads (default: PDSW_WORKERS or 1)");
  cmd->add_option("--clamp-essential", c.clamp_essential, "Replace infinite deaths by this value");
  cmd->add_option("--size-cap", c.size_cap, "Largest |d1| + |d2| for exact d_p / bottleneck / gauss-d1")
      ->check(CLI::PositiveNumber);
}

std::string format_value(double v) {
  std::ostringstream out;
  out << std::setprecision(12) << v;
  return out.str();
}

// ---- dist -------------------------------------------------------------------

struct DistArgs {
  Common common;
  std::string metric = "sw-exact";
  std::size_t directions = 10;
  unsigned p = 1;
  std::string a, b;
};

int run_dist(const DistArgs& args) {
  const auto opts = args.common.parse_options();
  const auto a = read_diagram_file(args.a, opts);
  const auto b = read_diagram_file(args.b, opts);
  double v = 0.0;
  if (args.metric == "sw-exact") {
    v = sw_exact(a, b).value;
  } else if (args.metric == "sw-approx") {
    v = sw_approx(a, b, args.directions).value;
  } else if (args.metric == "d1") {
    v = diagram_distance(a, b, 1, args.common.metric());
  } else if (args.metric == "dp") {
    v = diagram_distance(a, b, args.p, args.common.metric());
  } else {
    v = bottleneck(a, b, args.common.metric());
  }
  std::cout << format_value(v) << '\n';
  return 0;
}

// ---- shared diagram loading -------------------------------------------------

// Every .dgm below root, sorted by relative path; ids are the relative paths
// without extension.
std::vector<PersistenceDiagram> load_directory(const fs::path& root, const ParseOptions& opts) {
  if (!fs::is_directory(root)) throw std::runtime_error("not a directory: " + root.string());
  std::vector<fs::path> files;
  for (const auto& entry : fs::recursive_directory_iterator(root)) {
    if (entry.is_regular_file() && entry.path().extension() == ".dgm") files.push_back(entry.path());
  }
  std::vector<std::pair<std::string, fs::path>> named;
  for (const auto& f : files) {
    auto rel = fs::relative(f, root);
    rel.replace_extension();
    named.emplace_back(rel.generic_string(), f);
  }
  std::sort(named.begin(), named.end());
  std::vector<PersistenceDiagram> out;
  for (const auto& [id, path] : named) out.push_back(read_diagram_file(path, opts).with_id(id));
  return out;
}

// ---- gram -------------------------------------------------------------------

struct KernelArgs {
  std::string kernel = "sw";
  std::string mode = "approx";
  std::size_t directions = 6;
  double sigma = 1.0;
  double t = 1.0;
  double pwg_K = 1.0, pwg_p = 1.0, pwg_rho = 1.0, pwg_tau = 1.0;
  bool pwg_squared = false;
};

SwMode parse_mode(const std::string& m) { return m == "exact" ? SwMode::exact : SwMode::approx; }

KernelSpec make_kernel(const KernelArgs& k, const MetricOptions& metric) {
  KernelSpec spec;
  if (k.kernel == "sw") {
    spec = SwKernel{k.sigma, parse_mode(k.mode), k.directions};
  } else if (k.kernel == "pss") {
    spec = PssKernel{k.t};
  } else if (k.kernel == "pwg") {
    spec = PwgKernel{k.pwg_K, k.pwg_p, k.pwg_rho, k.pwg_tau, k.pwg_squared};
  } else {
    spec = GaussD1Kernel{k.sigma, metric};
  }
  validate(spec);
  return spec;
}

void add_kernel_options(CLI::App* cmd, KernelArgs& k) {
  cmd->add_option("--kernel", k.kernel, "sw | pss | pwg | gauss-d1")
      ->check(CLI::IsMember({"sw", "pss", "pwg", "gauss-d1"}));
  cmd->add_option("--mode", k.mode, "SW evaluation: exact | approx")->check(CLI::IsMember({"exact", "approx"}));
  cmd->add_option("--directions", k.directions, "Directions for approximate SW")->check(CLI::PositiveNumber);
}

struct GramArgs {
  Common common;
  KernelArgs kernel;
  std::string input;
  std::string out;
  std::string emit_distances;
  std::optional<double> perturb;
  std::uint64_t seed = 0;
};

int run_gram(const GramArgs& args) {
  const KernelSpec spec = make_kernel(args.kernel, args.common.metric());
  auto diagrams = load_directory(args.input, args.common.parse_options());
  if (args.perturb) {
    for (std::size_t i = 0; i < diagrams.size(); ++i) {
      diagrams[i] = perturb_general_position(diagrams[i], *args.perturb, derive_seed(args.seed, i))
                        .with_id(diagrams[i].id());
    }
  }
  const std::size_t workers = args.common.resolved_workers();
  const auto ids = diagram_ids(diagrams);
  const auto start = std::chrono::steady_clock::now();
  Eigen::MatrixXd gram;
  std::optional<Eigen::MatrixXd> distances;
  if (const auto* sw = std::get_if<SwKernel>(&spec)) {
    distances = sw_distance_matrix(diagrams, sw->mode, sw->direction_count, workers);
    gram = sw_gram_from_distances(*distances, sw->sigma);
  } else {
    if (!args.emit_distances.empty()) throw ArgumentError("--emit-distances requires --kernel sw");
    gram = gram_matrix(diagrams, spec, workers).values;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  if (args.out.empty()) {
    write_matrix_csv(std::cout, ids, gram);
  } else {
    write_matrix_csv(fs::path(args.out), ids, gram);
  }
  if (distances && !args.emit_distances.empty()) write_matrix_csv(fs::path(args.emit_distances), ids, *distances);
  // Timing goes to stderr so stdout stays reproducible.
  std::cerr << describe(spec) << ": " << diagrams.size() << " diagrams, pairwise computation "
            << std::fixed << std::setprecision(3) << seconds << " s\n";
  return 0;
}

// ---- orbits -----------------------------------------------------------------

struct OrbitArgs {
  Common common;
  std::uint64_t seed = 0;
  std::size_t per_class = 20;
  std::size_t points = 300;
  std::string out;
};

int run_orbits(const OrbitArgs& args) {
  const auto samples = generate_orbit_dataset(args.seed, args.per_class, args.points, args.common.resolved_workers());
  write_orbit_dataset(args.out, samples, args.seed, args.points);
  std::map<std::string, std::size_t> per_label;
  for (const auto& s : samples) ++per_label[format_label(s.r)];
  std::cout << "wrote " << samples.size() << " diagrams to " << args.out << " (seed " << args.seed << ", "
            << args.points << " points per orbit)\n";
  for (const auto& [label, count] : per_label) std::cout << "  r=" << label << ": " << count << '\n';
  return 0;
}

// ---- classify ---------------------------------------------------------------

struct ClassifyArgs {
  Common common;
  KernelArgs kernel;
  std::string dataset;
  std::vector<std::string> grams;
  std::vector<double> params;
  std::string distances;
  std::string labels;
  std::vector<double> c_grid;
  std::vector<double> grid;  // sigma or t grid; empty means the default for the kernel
  std::size_t runs = 10;
  std::size_t folds = 10;
  double train_fraction = 0.7;
  std::uint64_t seed = 0;
  bool shuffle = false;
};

std::vector<int> encode_labels(const std::vector<std::string>& names, std::vector<std::string>& classes) {
  std::map<std::string, int> index;
  for (const auto& n : names) index.emplace(n, 0);
  classes.clear();
  for (auto& [name, idx] : index) {
    idx = static_cast<int>(classes.size());
    classes.push_back(name);
  }
  std::vector<int> out;
  for (const auto& n : names) out.push_back(index.at(n));
  return out;
}

std::vector<std::string> labels_for(const std::vector<std::string>& ids, const fs::path& labels_file) {
  const auto table = read_labels(labels_file);
  std::vector<std::string> out;
  for (const auto& id : ids) {
    const auto it = table.find(id);
    if (it == table.end()) throw ArgumentError("no label for '" + id + "'");
    out.push_back(it->second);
  }
  return out;
}

std::string kernel_title(const ClassifyArgs& args) {
  if (args.kernel.kernel == "sw") {
    return args.kernel.mode == "exact" ? "k_SW (exact)" : "k_SW (" + std::to_string(args.kernel.directions) + ")";
  }
  if (args.kernel.kernel == "pss") return "k_PSS";
  if (args.kernel.kernel == "pwg") return "k_PWG";
  return "k_GaussD1";
}

void print_report(const ClassifyArgs& args, const ExperimentReport& report, std::size_t n, std::size_t classes,
                  const char* param_name) {
  std::cout << kernel_title(args) << " on " << n << " diagrams, " << classes << " classes"
            << (args.shuffle ? ", shuffled labels" : "") << '\n';
  for (std::size_t r = 0; r < report.runs.size(); ++r) {
    const auto& run = report.runs[r];
    std::cout << "  run " << r << ": C=" << format_value(run.C) << " " << param_name << "="
              << format_value(run.param) << " accuracy=" << std::fixed << std::setprecision(2)
              << 100.0 * run.test_accuracy << "%\n"
              << std::defaultfloat;
  }
  std::cout << "accuracy (%): " << std::fixed << std::setprecision(1) << 100.0 * report.mean << " ± "
            << 100.0 * report.stddev << '\n';
}

int run_classify(const ClassifyArgs& args) {
  ExperimentConfig config;
  config.c_grid = args.c_grid.empty() ? std::vector<double>(std::begin(kSvmCostGrid), std::end(kSvmCostGrid))
                                      : args.c_grid;
  config.runs = args.runs;
  config.folds = args.folds;
  config.train_fraction = args.train_fraction;
  config.seed = args.seed;
  config.workers = args.common.resolved_workers();
  config.shuffle_labels = args.shuffle;

  std::vector<std::string> classes;

  // Precomputed inputs.
  if (!args.distances.empty() || !args.grams.empty()) {
    if (args.labels.empty()) throw ArgumentError("--labels is required with --gram or --distances");
    if (!args.distances.empty()) {
      const auto m = read_matrix_csv(fs::path(args.distances));
      const auto labels = encode_labels(labels_for(m.ids, args.labels), classes);
      const auto report = run_sw_experiment(m.values, labels, config);
      print_report(args, report, m.ids.size(), classes.size(), "sigma");
      return 0;
    }
    if (args.params.size() != args.grams.size()) {
      throw ArgumentError("--param must be given once per --gram");
    }
    std::vector<Eigen::MatrixXd> grams;
    std::vector<std::string> ids;
    for (const auto& g : args.grams) {
      auto m = read_matrix_csv(fs::path(g));
      if (!ids.empty() && m.ids != ids) throw ArgumentError("Gram files disagree on ids");
      ids = std::move(m.ids);
      grams.push_back(std::move(m.values));
    }
    const auto labels = encode_labels(labels_for(ids, args.labels), classes);
    const auto report = run_gram_experiment(grams, args.params, labels, config);
    print_report(args, report, ids.size(), classes.size(), "param");
    return 0;
  }

  if (args.dataset.empty()) throw ArgumentError("need a dataset directory, --gram or --distances");
  const fs::path root(args.dataset);
  const auto manifest = read_manifest(root);
  std::vector<PersistenceDiagram> diagrams;
  std::vector<std::string> names;
  for (const auto& e : manifest) {
    diagrams.push_back(read_diagram_file(root / e.path, args.common.parse_options()));
    names.push_back(e.label);
  }
  const auto labels = encode_labels(names, classes);
  const std::size_t workers = config.workers;

  if (args.kernel.kernel == "sw") {
    const auto dist = sw_distance_matrix(diagrams, parse_mode(args.kernel.mode), args.kernel.directions, workers);
    print_report(args, run_sw_experiment(dist, labels, config), diagrams.size(), classes.size(), "sigma");
    return 0;
  }

  std::vector<double> grid = args.grid;
  std::vector<Eigen::MatrixXd> grams;
  const char* param_name = "sigma";
  if (args.kernel.kernel == "gauss-d1") {
    const auto d1 = symmetric_pairwise(diagrams.size(), workers, [&](std::size_t i, std::size_t j) {
      return i == j ? 0.0 : diagram_distance(diagrams[i], diagrams[j], 1, args.common.metric());
    });
    if (grid.empty()) {
      std::vector<double> pairwise;
      for (Eigen::Index i = 0; i < d1.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < d1.cols(); ++j) pairwise.push_back(d1(i, j));
      }
      grid = sw_sigma_grid(pairwise);
    }
    for (const double s : grid) {
      if (!(s > 0.0)) throw ArgumentError("sigma values must be positive");
      grams.push_back((-d1.array() / (2.0 * s * s)).exp().matrix());
    }
  } else {
    if (args.kernel.kernel == "pss") {
      param_name = "t";
      if (grid.empty()) grid.assign(std::begin(kPssTimeGrid), std::end(kPssTimeGrid));
    } else {
      param_name = "tau";
      if (grid.empty()) grid = {args.kernel.pwg_tau};
    }
    for (const double v : grid) {
      KernelArgs k = args.kernel;
      if (k.kernel == "pss") k.t = v;
      else k.pwg_tau = v;
      grams.push_back(gram_matrix(diagrams, make_kernel(k, args.common.metric()), workers).values);
    }
  }
  print_report(args, run_gram_experiment(grams, grid, labels, config), diagrams.size(), classes.size(),
               param_name);
  return 0;
}

// ---- check ------------------------------------------------------------------

struct CheckArgs {
  Common common;
  std::string suite = "all";
  std::size_t trials = 1000;
  std::uint64_t seed = 0;
  std::string failure_dir = "pdsw-failures";
  std::string inject_fault;
};

int run_check(const CheckArgs& args) {
  SuiteOptions options{args.trials, args.seed, args.common.resolved_workers()};
  SuiteHooks hooks;
  if (args.inject_fault == "negate-w1") {
    hooks.w1 = [](std::span<const double> a, std::span<const double> b) { return -w1_sorted(a, b); };
  } else if (!args.inject_fault.empty()) {
    throw ArgumentError("unknown fault '" + args.inject_fault + "'");
  }
  const auto results = run_property_suite(args.suite, options, hooks);
  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.suite << '/' << r.name << "  trials=" << r.trials
              << "  worst_margin=" << std::setprecision(6) << r.worst_margin;
    if (!r.detail.empty()) std::cout << "  (" << r.detail << ')';
    std::cout << '\n';
    if (!r.passed) {
      all = false;
      const auto dir = dump_counterexample(r, args.failure_dir);
      std::cout << "  counterexample written to " << dir.generic_string() << '\n';
    }
  }
  std::cout << (all ? "all properties hold" : "property failure") << '\n';
  return all ? 0 : kExitProperty;
}

// ---- bench ------------------------------------------------------------------

struct BenchArgs {
  Common common;
  BenchOptions options;
};

int run_bench_cmd(const BenchArgs& args) {
  const auto report = run_bench(args.options);
  std::cout << "method\tN\tM\tmedian_seconds\n";
  for (const auto& t : report.timings) {
    std::cout << t.method << '\t' << t.size << '\t' << (t.method == "exact" ? std::string("-") : std::to_string(t.directions))
              << '\t' << std::scientific << std::setprecision(3) << t.median_seconds << std::defaultfloat << '\n';
  }
  std::cout << "\nM\tmean_abs(ratio-1)\tmax_abs(ratio-1)\n";
  for (const auto& r : report.ratios) {
    std::cout << r.directions << '\t' << std::setprecision(4) << r.mean_abs_error << '\t' << r.max_abs_error << '\n';
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sliced Wasserstein kernels for persistence diagrams"};
  app.require_subcommand(1);

  DistArgs dist;
  auto* dist_cmd = app.add_subcommand("dist", "Distance between two diagrams");
  add_common(dist_cmd, dist.common);
  dist_cmd->add_option("--metric", dist.metric, "sw-exact | sw-approx | d1 | dp | bottleneck")
      ->check(CLI::IsMember({"sw-exact", "sw-approx", "d1", "dp", "bottleneck"}));
  dist_cmd->add_option("--directions", dist.directions, "Directions for sw-approx")->check(CLI::PositiveNumber);
  dist_cmd->add_option("--p", dist.p, "Order for dp")->check(CLI::PositiveNumber);
  dist_cmd->add_option("a", dist.a, "First diagram")->required();
  dist_cmd->add_option("b", dist.b, "Second diagram")->required();

  GramArgs gram;
  auto* gram_cmd = app.add_subcommand("gram", "Gram matrix over a directory of diagrams");
  add_common(gram_cmd, gram.common);
  add_kernel_options(gram_cmd, gram.kernel);
  gram_cmd->add_option("--sigma", gram.kernel.sigma, "Bandwidth for sw and gauss-d1")->check(CLI::PositiveNumber);
  gram_cmd->add_option("--t", gram.kernel.t, "PSS diffusion time")->check(CLI::PositiveNumber);
  gram_cmd->add_option("--pwg-K", gram.kernel.pwg_K, "PWG weight scale")->check(CLI::PositiveNumber);
  gram_cmd->add_option("--pwg-p", gram.kernel.pwg_p, "PWG weight exponent")->check(CLI::PositiveNumber);
  gram_cmd->add_option("--pwg-rho", gram.kernel.pwg_rho, "PWG point kernel bandwidth")->check(CLI::PositiveNumber);
  gram_cmd->add_option("--pwg-tau", gram.kernel.pwg_tau, "PWG outer bandwidth")->check(CLI::PositiveNumber);
  gram_cmd->add_flag("--pwg-squared", gram.kernel.pwg_squared, "Use the squared RKHS distance in PWG");
  gram_cmd->add_option("--out", gram.out, "Output CSV (default: stdout)");
  gram_cmd->add_option("--emit-distances", gram.emit_distances, "Also write the SW distance matrix here");
  gram_cmd->add_option("--perturb", gram.perturb, "Perturb every diagram into general position by this epsilon")
      ->check(CLI::PositiveNumber);
  gram_cmd->add_option("--seed", gram.seed, "Seed for --perturb");
  gram_cmd->add_option("input", gram.input, "Directory of .dgm files")->required();

  OrbitArgs orbits;
  auto* orbits_cmd = app.add_subcommand("orbits", "Generate the linked twist map orbit dataset");
  add_common(orbits_cmd, orbits.common);
  orbits_cmd->add_option("--seed", orbits.seed, "Master seed");
  orbits_cmd->add_option("--per-class", orbits.per_class, "Orbits per parameter")->check(CLI::PositiveNumber);
  orbits_cmd->add_option("--points", orbits.points, "Points per orbit")->check(CLI::Range(2, 1 << 24));
  orbits_cmd->add_option("--out", orbits.out, "Output directory")->required();

  ClassifyArgs classify;
  auto* classify_cmd = app.add_subcommand("classify", "Repeated train/test SVM evaluation");
  add_common(classify_cmd, classify.common);
  add_kernel_options(classify_cmd, classify.kernel);
  classify_cmd->add_option("--pwg-K", classify.kernel.pwg_K, "PWG weight scale")->check(CLI::PositiveNumber);
  classify_cmd->add_option("--pwg-p", classify.kernel.pwg_p, "PWG weight exponent")->check(CLI::PositiveNumber);
  classify_cmd->add_option("--pwg-rho", classify.kernel.pwg_rho, "PWG point kernel bandwidth")
      ->check(CLI::PositiveNumber);
  classify_cmd->add_option("--pwg-tau", classify.kernel.pwg_tau, "PWG outer bandwidth")->check(CLI::PositiveNumber);
  classify_cmd->add_flag("--pwg-squared", classify.kernel.pwg_squared, "Use the squared RKHS distance in PWG");
  classify_cmd->add_option("--grid", classify.grid, "Kernel parameter grid (sigma, t or tau)")
      ->delimiter(',')->check(CLI::PositiveNumber);
  classify_cmd->add_option("--c-grid", classify.c_grid, "SVM cost grid")->delimiter(',')->check(CLI::PositiveNumber);
  classify_cmd->add_option("--gram", classify.grams, "Precomputed Gram CSV (repeatable)");
  classify_cmd->add_option("--param", classify.params, "Kernel parameter of each --gram");
  classify_cmd->add_option("--distances", classify.distances, "Precomputed SW distance CSV");
  classify_cmd->add_option("--labels", classify.labels, "id,label file for --gram/--distances");
  classify_cmd->add_option("--runs", classify.runs, "Repetitions")->check(CLI::PositiveNumber);
  classify_cmd->add_option("--folds", classify.folds, "Cross-validation splits per grid point")
      ->check(CLI::PositiveNumber);
  classify_cmd->add_option("--train-fraction", classify.train_fraction, "Training share per class")
      ->check(CLI::Range(0.0, 1.0));
  classify_cmd->add_option("--seed", classify.seed, "Seed for splits");
  classify_cmd->add_flag("--shuffle-labels", classify.shuffle, "Permute labels (chance-level control)");
  classify_cmd->add_option("dataset", classify.dataset, "Dataset directory with manifest.tsv");

  CheckArgs check;
  auto* check_cmd = app.add_subcommand("check", "Run randomized property suites");
  add_common(check_cmd, check.common);
  check_cmd->add_option("--suite", check.suite, "wasserstein | sw | kernels | all")
      ->check(CLI::IsMember({"wasserstein", "sw", "kernels", "all"}));
  check_cmd->add_option("--trials", check.trials, "Pair-level trials")->check(CLI::PositiveNumber);
  check_cmd->add_option("--seed", check.seed, "Seed");
  check_cmd->add_option("--failure-dir", check.failure_dir, "Where counterexamples are written");
  check_cmd->add_option("--inject-fault", check.inject_fault)->group("");

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Timing and approximation-ratio table");
  add_common(bench_cmd, bench.common);
  bench_cmd->add_option("--sizes", bench.options.sizes, "Diagram sizes for sw_exact")->delimiter(',')->check(CLI::PositiveNumber);
  bench_cmd->add_option("--directions", bench.options.directions, "Direction counts for sw_approx")
      ->delimiter(',')->check(CLI::PositiveNumber);
  bench_cmd->add_option("--approx-size", bench.options.approx_size, "Diagram size for the sw_approx sweep")
      ->check(CLI::PositiveNumber);
  bench_cmd->add_option("--repeats", bench.options.repeats, "Timed repetitions")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--ratio-pairs", bench.options.ratio_pairs, "Random pairs for the ratio table");
  bench_cmd->add_option("--seed", bench.options.seed, "Seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitPrecondition;
  }

  try {
    if (*dist_cmd) return run_dist(dist);
    if (*gram_cmd) return run_gram(gram);
    if (*orbits_cmd) return run_orbits(orbits);
    if (*classify_cmd) return run_classify(classify);
    if (*check_cmd) return run_check(check);
    if (*bench_cmd) return run_bench_cmd(bench);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ValidationError& e) {
    std::cerr << "invalid diagram: " << e.what() << '\n';
    return kExitIo;
  } catch (const ArgumentError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const DegeneracyError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const PairEvaluationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  }
  return 0;
}
