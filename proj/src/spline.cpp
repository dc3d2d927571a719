#include "icv/spline.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_spline.h>

#include <algorithm>

#include "icv/error.hpp"

namespace icv {

struct NaturalSpline::Impl {
  gsl_spline* spline = nullptr;
  ~Impl() { gsl_spline_free(spline); }
};

NaturalSpline::NaturalSpline(std::vector<double> x, std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  if (x_.size() != y_.size()) fail(Errc::invalid_argument, "spline knot arrays differ in length");
  if (x_.size() < 2) fail(Errc::invalid_argument, "spline needs at least two knots");
  for (std::size_t i = 1; i < x_.size(); ++i) {
    if (!(x_[i] > x_[i - 1])) fail(Errc::invalid_argument, "spline knots must increase strictly");
  }
  gsl_set_error_handler_off();
  const gsl_interp_type* type = x_.size() >= 3 ? gsl_interp_cspline : gsl_interp_linear;
  auto impl = std::make_shared<Impl>();
  impl->spline = gsl_spline_alloc(type, x_.size());
  if (impl->spline == nullptr ||
      gsl_spline_init(impl->spline, x_.data(), y_.data(), x_.size()) != GSL_SUCCESS) {
    fail(Errc::invalid_argument, "spline fit failed");
  }
  impl_ = std::move(impl);
}

double NaturalSpline::operator()(double x) const {
  if (empty()) fail(Errc::invalid_argument, "evaluating an empty spline");
  if (x <= x_.front()) return y_.front();
  if (x >= x_.back()) return y_.back();
  return gsl_spline_eval(impl_->spline, x, nullptr);
}

double NaturalSpline::derivative(double x, int order) const {
  if (empty()) fail(Errc::invalid_argument, "evaluating an empty spline");
  x = std::clamp(x, x_.front(), x_.back());
  if (order == 1) return gsl_spline_eval_deriv(impl_->spline, x, nullptr);
  if (order == 2) return gsl_spline_eval_deriv2(impl_->spline, x, nullptr);
  fail(Errc::invalid_argument, "spline derivative order must be 1 or 2");
}

}  // namespace icv
