#include "icv/simharness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <numbers>

#include "icv/error.hpp"
#include "icv/paramodel.hpp"

namespace icv {

double integrated_squared_error(const Sample& sample, const NormalMixture& f, double h) {
  if (!(h > 0.0)) fail(Errc::invalid_argument, "bandwidth must be positive");
  const auto v = sample.values();
  const double n = static_cast<double>(v.size());

  // R(f̂_h): pairs at sd √2·h.
  const double self_norm = 1.0 / (2.0 * kSqrtPi * h);
  const double pairs = pair_exp_sum(v, 0.25 / (h * h));
  const double r_hat = self_norm * (n + 2.0 * pairs) / (n * n);

  // ∫ f̂_h f: each datum against each component at sd √(h² + s_k²).
  const auto comps = f.components();
  std::vector<double> centres;
  std::vector<double> weights;
  std::vector<double> scales;
  for (const auto& c : comps) {
    const double s2 = h * h + c.sd * c.sd;
    centres.push_back(c.mean);
    weights.push_back(c.weight * kInvSqrt2Pi / std::sqrt(s2));
    scales.push_back(0.5 / s2);
  }
  const double cross = cross_exp_sum(v, centres, weights, scales) / n;

  return std::max(0.0, r_hat - 2.0 * cross + roughness_deriv(f, 0));
}

IseMinimum ise_minimizer(const Sample& sample, const NormalMixture& f,
                         const SearchOptions& options) {
  const double h_os = oversmoothed_bandwidth(sample);
  const auto curve =
      minimize_curve([&](double h) { return integrated_squared_error(sample, f, h); },
                     0.02 * h_os, 2.0 * h_os, MinPolicy::Global, options);
  return {curve.minimum.h, curve.minimum.value, curve.status};
}

void validate(const StudyConfig& config) {
  (void)target_density(config.density);
  if (config.n < 2) fail(Errc::invalid_argument, "n: must be at least 2");
  if (config.replications < 1) fail(Errc::invalid_argument, "replications: must be at least 1");
  if (config.selectors.empty()) fail(Errc::invalid_argument, "selectors: at least one required");
  for (std::size_t i = 0; i < config.selectors.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (config.selectors[i] == config.selectors[j])
        fail(Errc::invalid_argument,
             std::string("selectors: duplicate ") + to_string(config.selectors[i]));
    }
  }
  if (config.kernel) (void)config.kernel->rescale_constant();
}

std::uint64_t replication_seed(std::uint64_t master, std::size_t rep_index) {
  std::uint64_t z = master + (static_cast<std::uint64_t>(rep_index) + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

bool ReplicationRecord::failed() const {
  if (h0_status == CurveStatus::LowerBoundary) return true;
  return std::any_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return o.failed; });
}

const SelectorOutcome& ReplicationRecord::outcome(Method method) const {
  for (const auto& o : outcomes) {
    if (o.method == method) return o;
  }
  fail(Errc::invalid_argument, std::string("record has no selector ") + to_string(method));
}

const SelectorSummary& SimulationSummary::selector(Method method) const {
  for (const auto& s : selectors) {
    if (s.method == method) return s;
  }
  fail(Errc::invalid_argument, std::string("summary has no selector ") + to_string(method));
}

ReplicationRecord run_replication(const StudyConfig& config, const NormalMixture& f,
                                  const SelectionKernel& icv_kernel, std::size_t rep_index) {
  ReplicationRecord rec;
  rec.rep_index = rep_index;
  rec.seed = replication_seed(config.seed, rep_index);
  const Sample sample(f.sample(config.n, rec.seed));

  const auto h0 = ise_minimizer(sample, f);
  rec.h0 = h0.h0;
  rec.ise0 = h0.ise0;
  rec.h0_status = h0.status;

  // ICV and ICV* share one curve.
  std::optional<BandwidthReport> icv_report;
  std::string icv_error;
  const bool wants_icv =
      std::any_of(config.selectors.begin(), config.selectors.end(),
                  [](Method m) { return m == Method::ICV || m == Method::ICVStar; });
  if (wants_icv) {
    try {
      icv_report = select_icv(sample, icv_kernel);
    } catch (const Error& e) {
      icv_error = e.what();
    }
  }

  for (Method m : config.selectors) {
    SelectorOutcome out;
    out.method = m;
    std::optional<BandwidthReport> report;
    try {
      if (m == Method::LSCV) {
        report = select_lscv(sample);
      } else if (icv_report) {
        report = *icv_report;
        if (m == Method::ICVStar) {
          report->method = Method::ICVStar;
          if (report->bandwidth > report->oversmoothed) {
            report->bandwidth = report->oversmoothed;
            report->cap_applied = true;
          }
        }
      } else {
        out.failed = true;
        out.error = icv_error;
      }
    } catch (const Error& e) {
      out.failed = true;
      out.error = e.what();
    }
    if (report) {
      out.bandwidth = report->bandwidth;
      out.status = report->curve.status;
      out.failed = report->diverged();
      out.ise = integrated_squared_error(sample, f, out.bandwidth);
      out.ise_ratio = out.ise / rec.ise0;
    }
    rec.outcomes.push_back(std::move(out));
  }
  return rec;
}

namespace {

double mean_of(const std::vector<double>& x) {
  double acc = 0.0;
  for (double v : x) acc += v;
  return acc / static_cast<double>(x.size());
}

double sd_of(const std::vector<double>& x, double mean) {
  if (x.size() < 2) return 0.0;
  double acc = 0.0;
  for (double v : x) acc += (v - mean) * (v - mean);
  return std::sqrt(acc / static_cast<double>(x.size() - 1));
}

double median_of(std::vector<double> x) {
  std::sort(x.begin(), x.end());
  const std::size_t m = x.size() / 2;
  return x.size() % 2 == 1 ? x[m] : 0.5 * (x[m - 1] + x[m]);
}

double correlation(const std::vector<double>& x, const std::vector<double>& y) {
  const double mx = mean_of(x);
  const double my = mean_of(y);
  double sxy = 0.0;
  double sxx = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
    syy += (y[i] - my) * (y[i] - my);
  }
  if (!(sxx > 0.0) || !(syy > 0.0)) return 0.0;
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

SimulationSummary summarize(const StudyConfig& config, const SelectionKernel& icv_kernel,
                            const std::vector<ReplicationRecord>& records) {
  SimulationSummary s;
  s.config = config;
  s.alpha = icv_kernel.alpha();
  s.sigma = icv_kernel.sigma();

  std::vector<const ReplicationRecord*> kept;
  for (const auto& r : records) {
    if (r.failed()) {
      ++s.failed;
    } else {
      kept.push_back(&r);
    }
  }
  s.used = kept.size();

  std::vector<double> h0;
  for (const auto* r : kept) h0.push_back(r->h0);
  if (!h0.empty()) {
    s.mean_h0 = mean_of(h0);
    s.sd_h0 = sd_of(h0, s.mean_h0);
  }

  for (Method m : config.selectors) {
    SelectorSummary sel{.method = m};
    for (const auto& r : records) sel.failures += r.outcome(m).failed ? 1 : 0;
    if (!kept.empty()) {
      std::vector<double> h;
      std::vector<double> ratio;
      for (const auto* r : kept) {
        const auto& o = r->outcome(m);
        h.push_back(o.bandwidth);
        ratio.push_back(o.ise_ratio);
      }
      sel.mean_h = mean_of(h);
      sel.sd_h = sd_of(h, sel.mean_h);
      double mse = 0.0;
      for (double v : h) mse += (v - s.mean_h0) * (v - s.mean_h0);
      sel.mse_vs_mean_h0 = mse / static_cast<double>(h.size());
      sel.mean_ise_ratio = mean_of(ratio);
      sel.median_ise_ratio = median_of(ratio);
      sel.corr_h0 = correlation(h, h0);
    }
    s.selectors.push_back(sel);
  }
  return s;
}

StudyResult run_study(const StudyConfig& config) {
  validate(config);
  const auto f = target_density(config.density);
  const SelectionKernel kernel = config.kernel ? *config.kernel : model_params(config.n).kernel();

  StudyResult result;
  result.records.resize(config.replications);
  const auto reps = static_cast<std::ptrdiff_t>(config.replications);
  std::vector<std::exception_ptr> errors(config.replications);
#pragma omp parallel for schedule(dynamic) if (config.parallel)
  for (std::ptrdiff_t r = 0; r < reps; ++r) {
    const auto k = static_cast<std::size_t>(r);
    try {
      result.records[k] = run_replication(config, f, kernel, k);
    } catch (...) {
      errors[k] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  result.summary = summarize(config, kernel, result.records);
  return result;
}

}  // namespace icv
