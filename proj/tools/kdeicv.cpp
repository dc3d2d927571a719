// kdeicv: bandwidth selection, density grids, kernel parameters, simulation
// studies and local bandwidth profiles from the command line.
//
// Exit codes
//   0 success            5 minimum on a search boundary / divergence
//   2 usage error        6 degenerate data (zero spread)
//   3 too little data    7 optimisation did not converge
//   4 degenerate kernel  8 every local profile point failed
//                        9 input parse or I/O error

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "icv/crossval.hpp"
#include "icv/error.hpp"
#include "icv/gaussmix.hpp"
#include "icv/localicv.hpp"
#include "icv/paramodel.hpp"
#include "icv/report_io.hpp"
#include "icv/simharness.hpp"

namespace {

using namespace icv;

enum Exit : int {
  kOk = 0,
  kUsage = 2,
  kInsufficient = 3,
  kDegenerateKernel = 4,
  kBoundary = 5,
  kDegenerateData = 6,
  kOptimization = 7,
  kProfile = 8,
  kParse = 9,
};

int exit_code(Errc code) {
  switch (code) {
    case Errc::invalid_argument: return kUsage;
    case Errc::insufficient_data: return kInsufficient;
    case Errc::degenerate_kernel: return kDegenerateKernel;
    case Errc::degenerate_data: return kDegenerateData;
    case Errc::optimization_failure: return kOptimization;
    case Errc::profile_failure: return kProfile;
    case Errc::parse_error: return kParse;
  }
  return kUsage;
}

struct Common {
  std::string input;
  std::string column;
  std::optional<double> alpha;
  std::optional<double> sigma;
  int workers = 1;
  std::string out;
};

std::optional<SelectionKernel> manual_kernel(const Common& c) {
  if (c.alpha.has_value() != c.sigma.has_value())
    fail(Errc::invalid_argument, "--alpha and --sigma must be given together");
  if (c.alpha) return SelectionKernel(*c.alpha, *c.sigma);
  return std::nullopt;
}

Method parse_method(const std::string& name) {
  if (name == "lscv" || name == "ucv") return Method::LSCV;
  if (name == "icv") return Method::ICV;
  if (name == "icv-star" || name == "icv*") return Method::ICVStar;
  fail(Errc::invalid_argument, "unknown method '" + name + "' (lscv, icv, icv-star)");
}

std::vector<double> auto_grid(const Sample& s, std::size_t points) {
  return profile_points(s, points);
}

// Writes to `path`, or stdout when empty.
template <typename Fn>
void with_output(const std::string& path, Fn&& fn) {
  if (path.empty() || path == "-") {
    fn(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) fail(Errc::parse_error, "cannot write '" + path + "'");
  fn(out);
  if (!out) fail(Errc::parse_error, "write to '" + path + "' failed");
}

Dataset load(const Common& c, std::size_t min_values = 2) {
  if (c.input.empty() || c.input == "-") return read_dataset(std::cin, c.column, min_values);
  return read_dataset_file(c.input, c.column, min_values);
}

void report_ties(const Dataset& ds) {
  if (ds.ties > 0)
    std::cerr << "warning: " << ds.ties << " of " << ds.values.size()
              << " observations repeat an earlier value\n";
}

int cmd_select(const Common& c, const std::string& method_name) {
  const Method method = parse_method(method_name);
  const auto ds = load(c);
  report_ties(ds);
  const Sample sample(ds.values);
  SearchOptions opts;
  opts.parallel = c.workers > 1;
  const auto r = select(method, sample, manual_kernel(c), opts);

  std::cout << "method        " << to_string(r.method) << '\n'
            << "n             " << r.n << '\n'
            << "ties          " << ds.ties << '\n'
            << "bandwidth     " << format_double(r.bandwidth) << '\n';
  if (r.method != Method::LSCV) {
    std::cout << "raw_bandwidth " << format_double(r.raw_bandwidth) << '\n'
              << "rescale_C     " << format_double(r.rescale) << '\n'
              << "alpha         " << format_double(r.kernel.alpha()) << '\n'
              << "sigma         " << format_double(r.kernel.sigma()) << '\n'
              << "kernel        " << (r.auto_kernel ? "model" : "manual") << ", "
              << to_string(r.kernel.family()) << '\n';
  }
  std::cout << "h_os          " << format_double(r.oversmoothed) << '\n'
            << "cap_applied   " << (r.cap_applied ? "yes" : "no") << '\n'
            << "curve_status  " << to_string(r.curve.status) << '\n'
            << "local_minima  " << r.curve.local_minima.size() << '\n'
            << "diverged      " << (r.diverged() ? "yes" : "no") << '\n';

  if (!c.out.empty()) {
    nlohmann::ordered_json j;
    j["method"] = to_string(r.method);
    j["n"] = r.n;
    j["ties"] = ds.ties;
    j["bandwidth"] = r.bandwidth;
    j["raw_bandwidth"] = r.raw_bandwidth;
    j["rescale"] = r.rescale;
    j["alpha"] = r.kernel.alpha();
    j["sigma"] = r.kernel.sigma();
    j["auto_kernel"] = r.auto_kernel;
    j["model_clamped"] = r.model_clamped;
    j["oversmoothed"] = r.oversmoothed;
    j["cap_applied"] = r.cap_applied;
    j["curve_status"] = to_string(r.curve.status);
    j["diverged"] = r.diverged();
    with_output(c.out, [&](std::ostream& os) { os << j.dump(2) << '\n'; });
  }

  if (r.model_clamped)
    std::cerr << "warning: n=" << r.n << " is outside the parameter model's range; clamped\n";
  if (r.cap_applied) std::cerr << "warning: bandwidth capped at the oversmoothed bandwidth\n";
  if (r.diverged()) {
    std::cerr << "error: criterion decreases into the lower end of the search range "
                 "(typical of tied data); no usable minimum\n";
    return kBoundary;
  }
  if (r.curve.at_boundary()) {
    std::cerr << "error: minimum on the upper end of the search range\n";
    return kBoundary;
  }
  return kOk;
}

std::vector<double> parse_grid(const std::string& spec, const Sample& sample) {
  if (spec.empty() || spec == "auto") return auto_grid(sample, 401);
  std::vector<double> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      fail(Errc::invalid_argument, "--grid expects min,max,points or auto");
    }
  }
  if (parts.size() != 3 || !(parts[1] > parts[0]) || parts[2] < 2 ||
      parts[2] != static_cast<double>(static_cast<std::size_t>(parts[2])))
    fail(Errc::invalid_argument, "--grid expects min,max,points with min < max and points >= 2");
  const auto points = static_cast<std::size_t>(parts[2]);
  std::vector<double> grid(points);
  for (std::size_t k = 0; k < points; ++k)
    grid[k] = parts[0] + (parts[1] - parts[0]) * static_cast<double>(k) /
                             static_cast<double>(points - 1);
  return grid;
}

int cmd_density(const Common& c, const std::string& method_name, std::optional<double> bandwidth,
                const std::string& grid_spec) {
  const auto ds = load(c, bandwidth ? 1 : 2);
  const Sample sample(ds.values);
  std::string how;
  double h = 0.0;
  int code = kOk;
  if (bandwidth) {
    if (!(*bandwidth > 0.0)) fail(Errc::invalid_argument, "--bandwidth must be positive");
    h = *bandwidth;
    how = "fixed";
  } else {
    report_ties(ds);
    SearchOptions opts;
    opts.parallel = c.workers > 1;
    const auto r = select(parse_method(method_name), sample, manual_kernel(c), opts);
    h = r.bandwidth;
    how = to_string(r.method);
    if (r.curve.at_boundary()) {
      std::cerr << "warning: selector minimum on a search boundary (" << to_string(r.curve.status)
                << ")\n";
      code = kBoundary;
    }
  }

  std::vector<double> grid;
  if (sample.range() == 0.0 && (grid_spec.empty() || grid_spec == "auto")) {
    grid.resize(401);
    for (std::size_t k = 0; k < grid.size(); ++k)
      grid[k] = sample.min() - 5.0 * h + 10.0 * h * static_cast<double>(k) / 400.0;
  } else {
    grid = parse_grid(grid_spec, sample);
  }
  const auto f = density_estimate(sample.values(), h, grid);
  with_output(c.out, [&](std::ostream& os) {
    os << "# bandwidth=" << format_double(h) << " selector=" << how << " n=" << sample.size()
       << '\n';
    os << "x,density\n";
    for (std::size_t k = 0; k < grid.size(); ++k)
      os << format_double(grid[k]) << ',' << format_double(f[k]) << '\n';
  });
  return code;
}

int cmd_params(std::size_t n) {
  const auto p = model_params(n);
  std::cout << "n,alpha,sigma,source\n"
            << n << ',' << format_double(p.alpha) << ',' << format_double(p.sigma) << ','
            << to_string(p.source) << '\n';
  if (p.clamped)
    std::cerr << "warning: n=" << n << " is outside [" << kModelMinN << ", " << kModelMaxN
              << "]; model evaluated at the nearest end\n";
  return kOk;
}

int cmd_params_optimal(const std::string& density, std::size_t n, int workers) {
  NormalMixture f = [&] {
    try {
      return target_density(density);
    } catch (const Error& e) {
      fail(Errc::invalid_argument, e.what());
    }
  }();
  std::cerr << "searching (alpha, sigma) for " << density << ", n=" << n << " from 9 starts on "
            << workers << " worker(s)...\n";
  const auto p = mse_optimal_params(f, n);
  const auto rough = roughness_set(f);
  std::cout << "density,n,alpha,sigma,asymptotic_mse\n"
            << density << ',' << n << ',' << format_double(p.alpha) << ','
            << format_double(p.sigma) << ','
            << format_double(asymptotic_mse(p.kernel(), rough, static_cast<double>(n))) << '\n';
  return kOk;
}

int cmd_simulate(const Common& c, const std::string& config_path, std::optional<std::uint64_t> seed) {
  ParsedStudyConfig parsed = [&] {
    std::ifstream in(config_path);
    if (!in) fail(Errc::parse_error, "cannot open config '" + config_path + "'");
    return parse_study_config(in);
  }();
  auto& cfg = parsed.config;
  if (seed) {
    cfg.seed = *seed;
  } else if (!parsed.seed_given) {
    fail(Errc::invalid_argument, "simulate needs a seed (--seed or seed= in the config)");
  }
  if (c.alpha || c.sigma) cfg.kernel = manual_kernel(c);
  cfg.parallel = c.workers > 1;

  const auto result = run_study(cfg);
  std::cout << format_summary_table(result.summary);

  const std::string prefix = c.out.empty() ? "simulation" : c.out;
  with_output(prefix + "_summary.csv",
              [&](std::ostream& os) { write_summary_csv(os, result.summary); });
  with_output(prefix + "_summary.json",
              [&](std::ostream& os) { write_summary_json(os, result.summary); });
  with_output(prefix + "_distribution.csv",
              [&](std::ostream& os) { write_distribution_csv(os, result); });
  std::cerr << "wrote " << prefix << "_summary.csv, " << prefix << "_summary.json, " << prefix
            << "_distribution.csv\n";
  if (result.summary.failed > 0)
    std::cerr << "warning: " << result.summary.failed
              << " replication(s) excluded after a selector diverged\n";
  return kOk;
}

void write_profile(std::ostream& os, const LocalBandwidthProfile& p) {
  os << "# window=" << format_double(p.window) << " alpha=" << format_double(p.kernel.alpha())
     << " sigma=" << format_double(p.kernel.sigma()) << " C=" << format_double(p.rescale) << '\n';
  os << "x,b_hat,h_hat,status\n";
  for (std::size_t k = 0; k < p.eval_points.size(); ++k) {
    os << format_double(p.eval_points[k]) << ',' << format_double(p.raw_bandwidths[k]) << ','
       << format_double(p.bandwidths[k]) << ',' << to_string(p.status[k]) << '\n';
  }
}

int cmd_local(const Common& c, const std::string& method, double window, std::size_t points) {
  const auto ds = load(c);
  report_ties(ds);
  const Sample sample(ds.values);
  SearchOptions opts;
  opts.parallel = c.workers > 1;

  LocalBandwidthProfile profile;
  try {
    if (method == "local-icv" || method == "icv") {
      const auto k = manual_kernel(c).value_or(SelectionKernel(kDefaultLocalAlpha, kDefaultLocalSigma));
      profile = local_profile(sample, window, k, points, opts);
    } else if (method == "local-lscv" || method == "lscv") {
      if (c.alpha || c.sigma) fail(Errc::invalid_argument, "local-lscv takes no --alpha/--sigma");
      profile = local_lscv_profile(sample, window, points, opts);
    } else {
      fail(Errc::invalid_argument, "unknown local method '" + method + "' (local-icv, local-lscv)");
    }
  } catch (const ProfileFailure& e) {
    std::cerr << "error: " << e.what() << '\n';
    write_profile(std::cerr, e.profile());
    return kProfile;
  }

  if (c.out.empty()) {
    write_profile(std::cout, profile);
  } else {
    with_output(c.out + "_profile.csv", [&](std::ostream& os) { write_profile(os, profile); });
  }
  const auto failed = points - profile.count(PointStatus::Ok);
  if (failed > 0)
    std::cerr << "warning: " << failed << " of " << points << " points failed ("
              << profile.count(PointStatus::Diverged) << " diverged, "
              << profile.count(PointStatus::Boundary) << " at the upper boundary)\n";

  if (profile.spline.empty()) {
    std::cerr << "warning: fewer than two usable points; no variable-bandwidth estimate\n";
    return kOk;
  }
  const auto grid = auto_grid(sample, 401);
  const auto est = variable_bandwidth_estimate(sample, profile, grid);
  if (est.floored > 0)
    std::cerr << "warning: bandwidth floored at " << est.floored << " grid points\n";
  if (!c.out.empty()) {
    with_output(c.out + "_density.csv", [&](std::ostream& os) {
      os << "x,density,bandwidth\n";
      for (std::size_t k = 0; k < grid.size(); ++k)
        os << format_double(grid[k]) << ',' << format_double(est.values[k]) << ','
           << format_double(profile.bandwidth_at(grid[k])) << '\n';
    });
  }
  return kOk;
}

void add_data_options(CLI::App* cmd, Common& c) {
  cmd->add_option("-i,--input", c.input, "Data file (plain text or CSV; '-' for stdin)");
  cmd->add_option("-c,--column", c.column, "Column name or 1-based index");
}

void add_kernel_options(CLI::App* cmd, Common& c) {
  cmd->add_option("--alpha", c.alpha, "Selection kernel alpha (with --sigma)")->check(CLI::NonNegativeNumber);
  cmd->add_option("--sigma", c.sigma, "Selection kernel sigma (with --alpha)")->check(CLI::PositiveNumber);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kernel density bandwidth selection by indirect cross-validation"};
  app.require_subcommand(1);
  Common common;

  std::string method = "icv-star";
  auto* select_cmd = app.add_subcommand("select", "Select a global bandwidth");
  add_data_options(select_cmd, common);
  add_kernel_options(select_cmd, common);
  select_cmd->add_option("-m,--method", method, "lscv, icv or icv-star");

  std::optional<double> bandwidth;
  std::string grid_spec = "auto";
  auto* density_cmd = app.add_subcommand("density", "Evaluate the density estimate on a grid");
  add_data_options(density_cmd, common);
  add_kernel_options(density_cmd, common);
  density_cmd->add_option("-m,--method", method, "Selector when no bandwidth is given");
  density_cmd->add_option("-b,--bandwidth", bandwidth, "Fixed bandwidth");
  density_cmd->add_option("-g,--grid", grid_spec, "min,max,points or auto");

  std::size_t n = 0;
  auto* params_cmd = app.add_subcommand("params", "Model (alpha, sigma) for a sample size");
  params_cmd->add_option("n", n, "Sample size")->required();

  std::string density;
  auto* optimal_cmd = app.add_subcommand("params-optimal", "MSE-optimal (alpha, sigma)");
  optimal_cmd->add_option("density", density, "Target density name")->required();
  optimal_cmd->add_option("n", n, "Sample size")->required();

  std::string config;
  std::optional<std::uint64_t> seed;
  auto* sim_cmd = app.add_subcommand("simulate", "Run a Monte Carlo study");
  sim_cmd->add_option("config", config, "key=value study file")->required();
  sim_cmd->add_option("-s,--seed", seed, "Master seed (overrides the config)");
  add_kernel_options(sim_cmd, common);

  std::string local_method = "local-icv";
  double window = kDefaultWindow;
  std::size_t points = kDefaultProfilePoints;
  auto* local_cmd = app.add_subcommand("local", "Local bandwidth profile and variable-bandwidth estimate");
  add_data_options(local_cmd, common);
  add_kernel_options(local_cmd, common);
  local_cmd->add_option("-m,--method", local_method, "local-icv or local-lscv");
  local_cmd->add_option("--window", window, "Window scale w")->check(CLI::PositiveNumber);
  local_cmd->add_option("--points", points, "Evaluation points")->check(CLI::Range(2, 100000));

  for (auto* sub : {select_cmd, density_cmd, params_cmd, optimal_cmd, sim_cmd, local_cmd}) {
    sub->add_option("-w,--workers", common.workers, "OpenMP threads")->check(CLI::PositiveNumber);
    sub->add_option("-o,--out", common.out, "Output file (or prefix for multi-file verbs)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }

  omp_set_num_threads(common.workers);
  try {
    if (*select_cmd) return cmd_select(common, method);
    if (*density_cmd) return cmd_density(common, method, bandwidth, grid_spec);
    if (*params_cmd) return cmd_params(n);
    if (*optimal_cmd) return cmd_params_optimal(density, n, common.workers);
    if (*sim_cmd) return cmd_simulate(common, config, seed);
    if (*local_cmd) return cmd_local(common, local_method, window, points);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kParse;
  }
  return kUsage;
}
