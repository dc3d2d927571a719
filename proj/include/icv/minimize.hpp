#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace icv {

enum class MinPolicy { Global, FirstLocalMin };

enum class CurveStatus {
  Interior,       // refined interior local minimum
  LowerBoundary,  // selected minimum sits on the lower grid end
  UpperBoundary,  // selected minimum sits on the upper grid end
};

const char* to_string(CurveStatus status) noexcept;

struct CurvePoint {
  double h;
  double value;
};

struct CriterionCurve {
  std::vector<double> grid;    // strictly increasing, log-spaced
  std::vector<double> values;  // criterion at each grid point
  std::vector<CurvePoint> local_minima;  // strict interior grid minima, increasing h
  CurvePoint minimum{};        // the selected (and refined) minimum
  CurveStatus status = CurveStatus::Interior;

  bool at_boundary() const { return status != CurveStatus::Interior; }
};

struct SearchOptions {
  std::size_t grid_size = 301;
  double rel_tol = 1e-7;  // golden-section bracket width relative to h
  bool parallel = false;  // evaluate grid points on the OpenMP team
};

std::vector<double> log_grid(double lo, double hi, std::size_t points);

/// Golden-section search on [lo, hi]; `best` is a known interior point that
/// the result never does worse than.
CurvePoint golden_section(const std::function<double(double)>& objective, double lo, double hi,
                          CurvePoint best, double rel_tol);

/// Scans `objective` on a log grid over [lo, hi], records every strict
/// interior local minimum and refines the one chosen by `policy`:
///   Global        smallest grid value, ties toward smaller h;
///   FirstLocalMin the smallest-h interior local minimum.
/// When the chosen point is a grid endpoint (or no interior minimum exists
/// for FirstLocalMin) the endpoint is returned unrefined and `status` says
/// which boundary was hit.
///
/// With `parallel` set, `objective` is called concurrently and must be safe
/// for that; results do not depend on the number of threads.
CriterionCurve minimize_curve(const std::function<double(double)>& objective, double lo,
                              double hi, MinPolicy policy, const SearchOptions& options = {});

}  // namespace icv
