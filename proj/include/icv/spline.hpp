#pragma once

#include <memory>
#include <span>
#include <vector>

namespace icv {

/// Natural cubic interpolating spline (linear when only two knots exist).
/// Evaluation outside the knot range returns the nearest endpoint value.
/// Copies share the fitted coefficients; evaluation is thread-safe.
class NaturalSpline {
 public:
  NaturalSpline() = default;
  /// Requires at least two knots with strictly increasing x.
  NaturalSpline(std::vector<double> x, std::vector<double> y);

  bool empty() const { return impl_ == nullptr; }
  std::span<const double> knots_x() const { return x_; }
  std::span<const double> knots_y() const { return y_; }

  double operator()(double x) const;
  /// First or second derivative inside the knot range.
  double derivative(double x, int order) const;

 private:
  struct Impl;
  std::vector<double> x_;
  std::vector<double> y_;
  std::shared_ptr<const Impl> impl_;
};

}  // namespace icv
