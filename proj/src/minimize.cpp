#include "icv/minimize.hpp"

#include <cmath>
#include <cstddef>
#include <numbers>
#include <string>

#include "icv/error.hpp"

namespace icv {

const char* to_string(CurveStatus status) noexcept {
  switch (status) {
    case CurveStatus::Interior: return "interior";
    case CurveStatus::LowerBoundary: return "lower-boundary";
    case CurveStatus::UpperBoundary: return "upper-boundary";
  }
  return "unknown";
}

std::vector<double> log_grid(double lo, double hi, std::size_t points) {
  if (!(lo > 0.0) || !(hi > lo)) fail(Errc::invalid_argument, "log grid needs 0 < lo < hi");
  if (points < 2) fail(Errc::invalid_argument, "log grid needs at least two points");
  std::vector<double> grid(points);
  const double log_lo = std::log(lo);
  const double step = (std::log(hi) - log_lo) / static_cast<double>(points - 1);
  for (std::size_t k = 0; k < points; ++k) grid[k] = std::exp(log_lo + step * static_cast<double>(k));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

CurvePoint golden_section(const std::function<double(double)>& objective, double lo, double hi,
                          CurvePoint best, double rel_tol) {
  constexpr double inv_phi = 1.0 / std::numbers::phi;
  double a = lo;
  double b = hi;
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = objective(c);
  double fd = objective(d);
  for (int iter = 0; iter < 200 && (b - a) > rel_tol * 0.5 * (c + d); ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = objective(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = objective(d);
    }
  }
  const CurvePoint refined = fc < fd ? CurvePoint{c, fc} : CurvePoint{d, fd};
  return refined.value <= best.value ? refined : best;
}

CriterionCurve minimize_curve(const std::function<double(double)>& objective, double lo,
                              double hi, MinPolicy policy, const SearchOptions& options) {
  if (options.grid_size < 3) fail(Errc::invalid_argument, "grid_size must be at least 3");
  CriterionCurve curve;
  curve.grid = log_grid(lo, hi, options.grid_size);
  const auto m = static_cast<std::ptrdiff_t>(curve.grid.size());
  curve.values.resize(curve.grid.size());

#pragma omp parallel for schedule(static) if (options.parallel)
  for (std::ptrdiff_t k = 0; k < m; ++k) curve.values[k] = objective(curve.grid[k]);

  for (std::ptrdiff_t k = 0; k < m; ++k) {
    if (!std::isfinite(curve.values[k])) {
      fail(Errc::optimization_failure,
           "criterion is not finite at h = " + std::to_string(curve.grid[k]));
    }
  }

  const auto& v = curve.values;
  for (std::ptrdiff_t k = 1; k + 1 < m; ++k) {
    if (v[k] < v[k - 1] && v[k] < v[k + 1]) curve.local_minima.push_back({curve.grid[k], v[k]});
  }

  std::ptrdiff_t pick = 0;
  if (policy == MinPolicy::Global) {
    for (std::ptrdiff_t k = 1; k < m; ++k) {
      if (v[k] < v[pick]) pick = k;
    }
  } else if (!curve.local_minima.empty()) {
    const double h_first = curve.local_minima.front().h;
    while (curve.grid[pick] != h_first) ++pick;
  } else {
    pick = v.back() < v.front() ? m - 1 : 0;
  }

  if (pick == 0 || pick == m - 1) {
    curve.status = pick == 0 ? CurveStatus::LowerBoundary : CurveStatus::UpperBoundary;
    curve.minimum = {curve.grid[pick], v[pick]};
    return curve;
  }

  // A plateau can make the global pick a non-strict minimum; the golden
  // bracket is still valid because both neighbours are no lower.
  curve.minimum = golden_section(objective, curve.grid[pick - 1], curve.grid[pick + 1],
                                 {curve.grid[pick], v[pick]}, options.rel_tol);
  return curve;
}

}  // namespace icv
