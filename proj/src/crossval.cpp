#include "icv/crossval.hpp"

#include <cmath>
#include <numbers>

#include "icv/error.hpp"
#include "icv/paramodel.hpp"

namespace icv {

namespace {

void require_pairs(const Sample& sample) {
  if (sample.size() < 2) fail(Errc::insufficient_data, "cross-validation needs at least 2 observations");
}

struct ResolvedKernel {
  SelectionKernel kernel;
  bool automatic;
  bool clamped;
};

ResolvedKernel resolve(const Sample& sample, const std::optional<SelectionKernel>& kernel) {
  if (kernel) return {*kernel, false, false};
  const auto params = model_params(sample.size());
  return {params.kernel(), true, params.clamped};
}

}  // namespace

const char* to_string(Method method) noexcept {
  switch (method) {
    case Method::LSCV: return "lscv";
    case Method::ICV: return "icv";
    case Method::ICVStar: return "icv-star";
  }
  return "unknown";
}

double lscv(const Sample& sample, const SelectionKernel& kernel, double h) {
  require_pairs(sample);
  if (!(h > 0.0)) fail(Errc::invalid_argument, "bandwidth must be positive");

  const auto v = sample.values();
  const double n = static_cast<double>(sample.size());
  const double alpha = kernel.alpha();
  const double a1 = 1.0 + alpha;
  const double inv_h2 = 1.0 / (h * h);

  // With t = d/h: φ_{√2}(t) ∝ exp(−t²/4) and φ(t) ∝ its square, so one
  // exponential per pair serves both the L*L and the L sums.
  const ExpSums base = pair_exp_sums(v, 0.25 * inv_h2);
  double conv_sum = a1 * a1 * base.e * kInvSqrt2Pi / std::numbers::sqrt2;
  double kern_sum = a1 * base.e2 * kInvSqrt2Pi;
  if (alpha > 0.0) {
    const double s = kernel.sigma();
    const double s2 = s * s;
    const ExpSums wide = pair_exp_sums(v, 0.25 * inv_h2 / s2);
    const double mixed = pair_exp_sum(v, 0.5 * inv_h2 / (1.0 + s2));
    conv_sum += -2.0 * alpha * a1 * mixed * kInvSqrt2Pi / std::sqrt(1.0 + s2) +
                alpha * alpha * wide.e * kInvSqrt2Pi / (s * std::numbers::sqrt2);
    kern_sum += -alpha * wide.e2 * kInvSqrt2Pi / s;
  }

  const double r_term = (n * kernel.moments().r_l + 2.0 * conv_sum) / (n * n * h);
  const double loo_term = 4.0 * kern_sum / (n * (n - 1.0) * h);
  return r_term - loo_term;
}

double oversmoothed_bandwidth(const Sample& sample) {
  require_pairs(sample);
  if (!(sample.sd() > 0.0)) fail(Errc::degenerate_data, "sample has zero variance");
  const double r_phi = 0.5 / kSqrtPi;
  return 3.0 * std::pow(r_phi / (35.0 * static_cast<double>(sample.size())), 0.2) * sample.sd();
}

BandwidthReport select_lscv(const Sample& sample, const SearchOptions& options) {
  const double h_os = oversmoothed_bandwidth(sample);
  const auto kernel = SelectionKernel::gaussian();
  BandwidthReport report{.method = Method::LSCV,
                         .bandwidth = 0.0,
                         .raw_bandwidth = 0.0,
                         .oversmoothed = h_os,
                         .kernel = kernel,
                         .n = sample.size(),
                         .curve = {}};
  report.curve = minimize_curve([&](double h) { return lscv(sample, kernel, h); }, 0.05 * h_os,
                                2.0 * h_os, MinPolicy::Global, options);
  report.bandwidth = report.curve.minimum.h;
  report.raw_bandwidth = report.bandwidth;
  return report;
}

BandwidthReport select_icv(const Sample& sample, const std::optional<SelectionKernel>& kernel,
                           const SearchOptions& options) {
  const double h_os = oversmoothed_bandwidth(sample);
  const auto resolved = resolve(sample, kernel);
  const double c = resolved.kernel.rescale_constant();
  BandwidthReport report{.method = Method::ICV,
                         .bandwidth = 0.0,
                         .raw_bandwidth = 0.0,
                         .oversmoothed = h_os,
                         .rescale = c,
                         .kernel = resolved.kernel,
                         .auto_kernel = resolved.automatic,
                         .model_clamped = resolved.clamped,
                         .n = sample.size(),
                         .curve = {}};
  const auto& k = report.kernel;
  report.curve = minimize_curve([&](double b) { return lscv(sample, k, b); }, 0.05 * h_os / c,
                                3.0 * h_os / c, MinPolicy::Global, options);
  report.raw_bandwidth = report.curve.minimum.h;
  report.bandwidth = c * report.raw_bandwidth;
  return report;
}

BandwidthReport select_icv_star(const Sample& sample, const std::optional<SelectionKernel>& kernel,
                                const SearchOptions& options) {
  auto report = select_icv(sample, kernel, options);
  report.method = Method::ICVStar;
  if (report.bandwidth > report.oversmoothed) {
    report.bandwidth = report.oversmoothed;
    report.cap_applied = true;
  }
  return report;
}

BandwidthReport select(Method method, const Sample& sample,
                       const std::optional<SelectionKernel>& kernel, const SearchOptions& options) {
  switch (method) {
    case Method::LSCV: return select_lscv(sample, options);
    case Method::ICV: return select_icv(sample, kernel, options);
    case Method::ICVStar: return select_icv_star(sample, kernel, options);
  }
  fail(Errc::invalid_argument, "unknown selection method");
}

std::vector<double> density_estimate(std::span<const double> data, double h,
                                     std::span<const double> grid) {
  if (data.empty()) fail(Errc::insufficient_data, "density estimate needs at least 1 observation");
  if (!(h > 0.0)) fail(Errc::invalid_argument, "bandwidth must be positive");
  const double scale = 1.0 / static_cast<double>(data.size());
  std::vector<double> out(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double acc = 0.0;
    for (double x : data) acc += normal_pdf(grid[g] - x, h);
    out[g] = acc * scale;
  }
  return out;
}

}  // namespace icv
