#pragma once

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace icv {

inline constexpr double kInvSqrt2Pi = std::numbers::inv_sqrtpi / std::numbers::sqrt2;
inline constexpr double kSqrtPi = 1.0 / std::numbers::inv_sqrtpi;

/// N(0, sd²) density.
inline double normal_pdf(double x, double sd = 1.0);

/// Probabilists' Hermite polynomial He_m.
double hermite_he(int m, double x);

/// m-th derivative of the N(0, sd²) density.
double normal_pdf_deriv(int m, double x, double sd);

/// weight · φ_sd^{(order)}(x − mean). Weights may be negative, so a list of
/// terms represents any signed combination of Gaussian densities and their
/// derivatives (kernels, self-convolutions, mixtures, estimates).
struct GaussTerm {
  double weight;
  double mean;
  double sd;
  int order = 0;
};

/// ∫ φ_a^{(p)}(x − δ) φ_b^{(q)}(x) dx = (−1)^p φ_s^{(p+q)}(δ), s² = a² + b².
///
/// All closed-form functionals in the library (roughness, L2 distance, MISE,
/// kernel roughness, R(ρ_L)) are sums of this one integral.
double gauss_product_integral(double a, double b, double delta, int p, int q);

double evaluate(std::span<const GaussTerm> terms, double x);

/// ∫ (Σ lhs)(Σ rhs).
double inner_product(std::span<const GaussTerm> lhs, std::span<const GaussTerm> rhs);

inline double roughness(std::span<const GaussTerm> terms) { return inner_product(terms, terms); }

/// Σ weights of the order-0 terms; derivative terms carry no mass.
double total_mass(std::span<const GaussTerm> terms);

inline double normal_pdf(double x, double sd) {
  const double z = x / sd;
  return kInvSqrt2Pi / sd * std::exp(-0.5 * z * z);
}

}  // namespace icv
