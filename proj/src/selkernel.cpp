#include "icv/selkernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "icv/error.hpp"

namespace icv {

namespace {

constexpr double kDegenerateMu2 = 1e-10;

}  // namespace

const char* to_string(KernelFamily family) noexcept {
  switch (family) {
    case KernelFamily::CutOutMiddle: return "cut-out-the-middle";
    case KernelFamily::Density: return "density";
    case KernelFamily::NegativeTailed: return "negative-tailed";
  }
  return "unknown";
}

SelectionKernel::SelectionKernel(double alpha, double sigma) : alpha_(alpha), sigma_(sigma) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha))
    fail(Errc::invalid_argument, "selection kernel needs alpha >= 0");
  if (!(sigma > 0.0) || !std::isfinite(sigma))
    fail(Errc::invalid_argument, "selection kernel needs sigma > 0");

  const double s2 = sigma * sigma;
  moments_.mu2 = 1.0 + alpha - alpha * s2;
  moments_.mu4 = 3.0 * (1.0 + alpha - alpha * s2 * s2);
  const double a1 = 1.0 + alpha;
  moments_.r_l = a1 * a1 / (2.0 * kSqrtPi) -
                 2.0 * alpha * a1 * kInvSqrt2Pi / std::sqrt(1.0 + s2) +
                 alpha * alpha / (2.0 * sigma * kSqrtPi);
  moments_.r_rho = roughness(variance_kernel());

  if (std::abs(moments_.mu2) >= kDegenerateMu2) {
    rescale_ = std::pow(moments_.mu2 * moments_.mu2 / (2.0 * kSqrtPi * moments_.r_l), 0.2);
  }
}

double SelectionKernel::operator()(double u) const {
  return (1.0 + alpha_) * normal_pdf(u) - alpha_ * normal_pdf(u, sigma_);
}

double SelectionKernel::rescale_constant() const {
  if (!rescale_) {
    fail(Errc::degenerate_kernel,
         "selection kernel (alpha=" + std::to_string(alpha_) + ", sigma=" +
             std::to_string(sigma_) + ") has vanishing second moment");
  }
  return *rescale_;
}

KernelFamily SelectionKernel::family() const {
  if (alpha_ == 0.0) return KernelFamily::Density;
  if (sigma_ > 1.0) return KernelFamily::NegativeTailed;
  if (sigma_ < alpha_ / (1.0 + alpha_)) return KernelFamily::CutOutMiddle;
  return KernelFamily::Density;
}

std::vector<GaussTerm> SelectionKernel::terms() const {
  return {{1.0 + alpha_, 0.0, 1.0, 0}, {-alpha_, 0.0, sigma_, 0}};
}

std::vector<GaussTerm> SelectionKernel::self_convolution() const {
  const double a1 = 1.0 + alpha_;
  return {{a1 * a1, 0.0, std::numbers::sqrt2, 0},
          {-2.0 * alpha_ * a1, 0.0, std::sqrt(1.0 + sigma_ * sigma_), 0},
          {alpha_ * alpha_, 0.0, sigma_ * std::numbers::sqrt2, 0}};
}

std::vector<GaussTerm> SelectionKernel::lscv_kernel() const {
  auto out = self_convolution();
  for (auto t : terms()) {
    t.weight *= -2.0;
    out.push_back(t);
  }
  return out;
}

std::vector<GaussTerm> SelectionKernel::variance_kernel() const {
  std::vector<GaussTerm> out;
  for (const auto& t : lscv_kernel()) {
    out.push_back({-t.weight, 0.0, t.sd, 0});
    out.push_back({-t.weight * t.sd * t.sd, 0.0, t.sd, 2});
  }
  return out;
}

}  // namespace icv
