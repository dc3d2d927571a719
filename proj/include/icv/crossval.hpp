#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "icv/minimize.hpp"
#include "icv/pairsum.hpp"
#include "icv/selkernel.hpp"

namespace icv {

enum class Method { LSCV, ICV, ICVStar };

const char* to_string(Method method) noexcept;

struct BandwidthReport {
  Method method;
  /// Bandwidth for the Gaussian-kernel estimator.
  double bandwidth;
  /// Minimiser of the cross-validation curve before rescaling and capping
  /// (b̂ for ICV; equals `bandwidth` for LSCV).
  double raw_bandwidth;
  bool cap_applied = false;
  double oversmoothed;  // ĥ_OS
  double rescale = 1.0;  // C
  SelectionKernel kernel = SelectionKernel::gaussian();
  bool auto_kernel = false;
  bool model_clamped = false;
  std::size_t n = 0;
  CriterionCurve curve;

  /// Curve decreasing into the lower end of the search range: the LSCV
  /// failure mode of tied data.
  bool diverged() const { return curve.status == CurveStatus::LowerBoundary; }
};

/// LSCV criterion of the L-kernel estimator in closed form, O(n²).
double lscv(const Sample& sample, const SelectionKernel& kernel, double h);

/// Terrell's oversmoothed bandwidth 3·(R(φ)/(35n))^{1/5}·s.
/// Throws Errc::degenerate_data when s = 0, Errc::insufficient_data for n < 2.
double oversmoothed_bandwidth(const Sample& sample);

/// Global LSCV minimiser over [0.05, 2]·ĥ_OS.
BandwidthReport select_lscv(const Sample& sample, const SearchOptions& options = {});

/// ICV: global LSCV minimiser b̂ of the L-kernel criterion over
/// [0.05, 3]·ĥ_OS/C, rescaled to C·b̂. A missing kernel means the
/// sample-size model.
BandwidthReport select_icv(const Sample& sample,
                           const std::optional<SelectionKernel>& kernel = std::nullopt,
                           const SearchOptions& options = {});

/// ICV capped at the oversmoothed bandwidth: min(C·b̂, ĥ_OS).
BandwidthReport select_icv_star(const Sample& sample,
                                const std::optional<SelectionKernel>& kernel = std::nullopt,
                                const SearchOptions& options = {});

BandwidthReport select(Method method, const Sample& sample,
                       const std::optional<SelectionKernel>& kernel = std::nullopt,
                       const SearchOptions& options = {});

/// Gaussian-kernel estimate at each grid point.
std::vector<double> density_estimate(std::span<const double> data, double h,
                                     std::span<const double> grid);

}  // namespace icv
