#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "icv/error.hpp"
#include "icv/minimize.hpp"
#include "icv/pairsum.hpp"
#include "icv/selkernel.hpp"
#include "icv/spline.hpp"

namespace icv {

inline constexpr double kDefaultLocalAlpha = 6.0;
inline constexpr double kDefaultLocalSigma = 6.0;
inline constexpr double kDefaultWindow = 40.0;
inline constexpr std::size_t kDefaultProfilePoints = 50;

enum class PointStatus {
  Ok,
  Diverged,  // curve decreases into the lower end of the b range
  Boundary,  // minimum at the upper end of the b range
};

const char* to_string(PointStatus status) noexcept;

/// Windowed criterion
///   ICV(x, b, w) = ∫ φ_w(x − u) f̂_b(u)² du − (2/n) Σ φ_w(x − X_i) f̂_{b,−i}(X_i)
/// with f̂_b the L-kernel estimate. Precomputes nothing per sample beyond the
/// Sample itself; each call is one O(n²) pass.
class LocalCriterion {
 public:
  LocalCriterion(const Sample& sample, SelectionKernel kernel, double window);

  double operator()(double x, double b) const;

  const SelectionKernel& kernel() const { return kernel_; }
  double window() const { return window_; }

 private:
  const Sample* sample_;
  SelectionKernel kernel_;
  double window_;
};

double local_icv_criterion(const Sample& sample, double x, double b, double w,
                           const SelectionKernel& kernel);

struct LocalBandwidthProfile {
  std::vector<double> eval_points;
  std::vector<double> raw_bandwidths;  // b̂(x_j); boundary value when the point failed
  std::vector<double> bandwidths;      // C·b̂(x_j)
  std::vector<PointStatus> status;
  std::vector<CriterionCurve> curves;
  double window = 0.0;
  SelectionKernel kernel = SelectionKernel::gaussian();
  double rescale = 1.0;
  NaturalSpline spline;  // through the Ok points; empty if fewer than two

  std::size_t count(PointStatus s) const;
  double bandwidth_at(double x) const { return spline(x); }
};

/// Thrown when no evaluation point yields a usable bandwidth; carries the
/// per-point outcome for diagnostics.
class ProfileFailure : public Error {
 public:
  explicit ProfileFailure(LocalBandwidthProfile profile);
  const LocalBandwidthProfile& profile() const { return profile_; }

 private:
  LocalBandwidthProfile profile_;
};

/// `num_points` evenly spaced points on [x₍₁₎ − 0.2·range, x₍ₙ₎ + 0.2·range].
std::vector<double> profile_points(const Sample& sample, std::size_t num_points);

/// Local ICV: at every evaluation point the first local minimiser b̂(x) of
/// ICV(x, ·, w) over [0.05, 3]·ĥ_OS/C, rescaled to ĥ(x) = C·b̂(x); a natural
/// cubic spline through the successful points gives ĥ between them.
/// With `options.parallel` the evaluation points are spread over the OpenMP
/// team; each point's search is serial, so results do not depend on it.
LocalBandwidthProfile local_profile(const Sample& sample, double window,
                                    const SelectionKernel& kernel = {kDefaultLocalAlpha,
                                                                     kDefaultLocalSigma},
                                    std::size_t num_points = kDefaultProfilePoints,
                                    const SearchOptions& options = {});

/// Local LSCV: the same construction with L = φ, C = 1 and the global
/// minimiser of each local curve.
LocalBandwidthProfile local_lscv_profile(const Sample& sample, double window,
                                         std::size_t num_points = kDefaultProfilePoints,
                                         const SearchOptions& options = {});

struct VariableEstimate {
  std::vector<double> values;
  std::size_t floored = 0;  // grid points where ĥ(x) hit the positive floor
};

/// Balloon estimate f̃(x) = (1/n) Σ φ_{ĥ(x)}(x − X_i), ĥ from the profile
/// spline (clamped to its endpoint values outside the knots) and floored at
/// 1e-8·range. Not renormalised.
VariableEstimate variable_bandwidth_estimate(const Sample& sample,
                                             const LocalBandwidthProfile& profile,
                                             std::span<const double> grid);

}  // namespace icv
