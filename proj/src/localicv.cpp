#include "icv/localicv.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "icv/crossval.hpp"

namespace icv {

const char* to_string(PointStatus status) noexcept {
  switch (status) {
    case PointStatus::Ok: return "ok";
    case PointStatus::Diverged: return "diverged";
    case PointStatus::Boundary: return "boundary";
  }
  return "unknown";
}

LocalCriterion::LocalCriterion(const Sample& sample, SelectionKernel kernel, double window)
    : sample_(&sample), kernel_(kernel), window_(window) {
  if (sample.size() < 2) fail(Errc::insufficient_data, "local criterion needs at least 2 observations");
  if (!(window > 0.0)) fail(Errc::invalid_argument, "window must be positive");
}

double LocalCriterion::operator()(double x, double b) const {
  if (!(b > 0.0)) fail(Errc::invalid_argument, "bandwidth must be positive");
  const auto v = sample_->values();
  const std::size_t n = v.size();
  const double nn = static_cast<double>(n);
  const double alpha = kernel_.alpha();
  const double s2 = kernel_.sigma() * kernel_.sigma();
  const double a1 = 1.0 + alpha;
  const double a2 = -alpha;
  const double w2 = window_ * window_;
  const double b2 = b * b;
  constexpr double two_pi = 2.0 * std::numbers::pi;

  // Component pair (c, d) of f̂_b²: difference sd S_cd, window-smoothed
  // centre sd T_cd = √(w² + τ_cd²).
  const double S11 = std::sqrt(2.0 * b2);
  const double T11 = std::sqrt(w2 + 0.5 * b2);
  const double S22 = std::sqrt(2.0 * s2 * b2);
  const double T22 = std::sqrt(w2 + 0.5 * s2 * b2);
  const double S12 = std::sqrt((1.0 + s2) * b2);
  const double T12 = std::sqrt(w2 + s2 * b2 / (1.0 + s2));

  LocalCoefficients c{};
  c.sigma2 = s2;
  c.w11 = a1 * a1 / (two_pi * S11 * T11);
  c.d11 = 0.5 / (S11 * S11);
  c.t11 = 0.5 / (T11 * T11);
  c.w22 = a2 * a2 / (two_pi * S22 * T22);
  c.d22 = 0.5 / (S22 * S22);
  c.t22 = 0.5 / (T22 * T22);
  c.w12 = a1 * a2 / (two_pi * S12 * T12);
  c.d12 = 0.5 / (S12 * S12);
  c.t12 = 0.5 / (T12 * T12);
  c.l1 = a1 * kInvSqrt2Pi / b;
  c.dl1 = 0.5 / b2;
  c.l2 = a2 * kInvSqrt2Pi / (kernel_.sigma() * b);
  c.dl2 = 0.5 / (s2 * b2);
  c.two_component = alpha > 0.0;

  std::vector<double> weights(n);
  double diagonal = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x - v[i];
    weights[i] = normal_pdf(dx, window_);
    diagonal += a1 * a1 * normal_pdf(0.0, S11) * normal_pdf(dx, T11);
    if (c.two_component) {
      diagonal += a2 * a2 * normal_pdf(0.0, S22) * normal_pdf(dx, T22) +
                  2.0 * a1 * a2 * normal_pdf(0.0, S12) * normal_pdf(dx, T12);
    }
  }

  const LocalSums sums = local_pair_sums(v, c, x, weights);
  const double first = (diagonal + 2.0 * sums.first) / (nn * nn);
  const double loo = 2.0 * sums.loo / (nn * (nn - 1.0));
  return first - loo;
}

double local_icv_criterion(const Sample& sample, double x, double b, double w,
                           const SelectionKernel& kernel) {
  return LocalCriterion(sample, kernel, w)(x, b);
}

std::size_t LocalBandwidthProfile::count(PointStatus s) const {
  std::size_t k = 0;
  for (auto st : status) k += (st == s) ? 1 : 0;
  return k;
}

ProfileFailure::ProfileFailure(LocalBandwidthProfile profile)
    : Error(Errc::profile_failure,
            "no evaluation point produced a usable local bandwidth (" +
                std::to_string(profile.eval_points.size()) + " points tried)"),
      profile_(std::move(profile)) {}

std::vector<double> profile_points(const Sample& sample, std::size_t num_points) {
  if (num_points < 2) fail(Errc::invalid_argument, "profile needs at least two evaluation points");
  const double lo = sample.min() - 0.2 * sample.range();
  const double hi = sample.max() + 0.2 * sample.range();
  if (!(hi > lo)) fail(Errc::degenerate_data, "sample has zero range");
  std::vector<double> pts(num_points);
  const double step = (hi - lo) / static_cast<double>(num_points - 1);
  for (std::size_t k = 0; k < num_points; ++k) pts[k] = lo + step * static_cast<double>(k);
  pts.back() = hi;
  return pts;
}

namespace {

LocalBandwidthProfile build_profile(const Sample& sample, double window,
                                    const SelectionKernel& kernel, std::size_t num_points,
                                    MinPolicy policy, const SearchOptions& options) {
  const double h_os = oversmoothed_bandwidth(sample);
  LocalBandwidthProfile profile;
  profile.eval_points = profile_points(sample, num_points);
  profile.window = window;
  profile.kernel = kernel;
  profile.rescale = kernel.rescale_constant();

  const LocalCriterion criterion(sample, kernel, window);
  const double c = profile.rescale;
  const double lo = 0.05 * h_os / c;
  const double hi = 3.0 * h_os / c;

  const auto m = static_cast<std::ptrdiff_t>(num_points);
  profile.curves.resize(num_points);
  SearchOptions inner = options;
  inner.parallel = false;

#pragma omp parallel for schedule(dynamic) if (options.parallel)
  for (std::ptrdiff_t k = 0; k < m; ++k) {
    const double x = profile.eval_points[static_cast<std::size_t>(k)];
    profile.curves[static_cast<std::size_t>(k)] =
        minimize_curve([&](double b) { return criterion(x, b); }, lo, hi, policy, inner);
  }

  std::vector<double> knot_x;
  std::vector<double> knot_y;
  for (std::size_t k = 0; k < num_points; ++k) {
    const auto& curve = profile.curves[k];
    const double raw = curve.minimum.h;
    profile.raw_bandwidths.push_back(raw);
    profile.bandwidths.push_back(c * raw);
    switch (curve.status) {
      case CurveStatus::Interior: profile.status.push_back(PointStatus::Ok); break;
      case CurveStatus::LowerBoundary: profile.status.push_back(PointStatus::Diverged); break;
      case CurveStatus::UpperBoundary: profile.status.push_back(PointStatus::Boundary); break;
    }
    if (profile.status.back() == PointStatus::Ok) {
      knot_x.push_back(profile.eval_points[k]);
      knot_y.push_back(c * raw);
    }
  }

  if (knot_x.empty()) throw ProfileFailure(std::move(profile));
  if (knot_x.size() >= 2) profile.spline = NaturalSpline(std::move(knot_x), std::move(knot_y));
  return profile;
}

}  // namespace

LocalBandwidthProfile local_profile(const Sample& sample, double window,
                                    const SelectionKernel& kernel, std::size_t num_points,
                                    const SearchOptions& options) {
  return build_profile(sample, window, kernel, num_points, MinPolicy::FirstLocalMin, options);
}

LocalBandwidthProfile local_lscv_profile(const Sample& sample, double window,
                                         std::size_t num_points, const SearchOptions& options) {
  return build_profile(sample, window, SelectionKernel::gaussian(), num_points, MinPolicy::Global,
                       options);
}

VariableEstimate variable_bandwidth_estimate(const Sample& sample,
                                             const LocalBandwidthProfile& profile,
                                             std::span<const double> grid) {
  if (profile.spline.empty())
    fail(Errc::invalid_argument, "variable-bandwidth estimate needs at least two ok profile points");
  const double floor = 1e-8 * sample.range();
  const auto v = sample.values();
  const double scale = 1.0 / static_cast<double>(v.size());
  VariableEstimate out;
  out.values.resize(grid.size());
  for (std::size_t g = 0; g < grid.size(); ++g) {
    double h = profile.bandwidth_at(grid[g]);
    if (!(h > floor)) {
      h = floor;
      ++out.floored;
    }
    double acc = 0.0;
    for (double x : v) acc += normal_pdf(grid[g] - x, h);
    out.values[g] = acc * scale;
  }
  return out;
}

}  // namespace icv
