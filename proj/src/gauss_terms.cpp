#include "icv/gauss_terms.hpp"

#include <cmath>

#include "icv/error.hpp"

namespace icv {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::insufficient_data: return "insufficient-data";
    case Errc::degenerate_kernel: return "degenerate-kernel";
    case Errc::degenerate_data: return "degenerate-data";
    case Errc::optimization_failure: return "optimization-failure";
    case Errc::profile_failure: return "profile-failure";
    case Errc::parse_error: return "parse-error";
  }
  return "unknown";
}

double hermite_he(int m, double x) {
  if (m < 0) fail(Errc::invalid_argument, "Hermite order must be nonnegative");
  if (m == 0) return 1.0;
  // He_{k+1} = x He_k − k He_{k−1}
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < m; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double normal_pdf_deriv(int m, double x, double sd) {
  const double z = x / sd;
  const double sign = (m % 2 == 0) ? 1.0 : -1.0;
  return sign * std::pow(sd, -m) * hermite_he(m, z) * normal_pdf(x, sd);
}

double gauss_product_integral(double a, double b, double delta, int p, int q) {
  const double s = std::sqrt(a * a + b * b);
  const double sign = (p % 2 == 0) ? 1.0 : -1.0;
  return sign * normal_pdf_deriv(p + q, delta, s);
}

double evaluate(std::span<const GaussTerm> terms, double x) {
  double acc = 0.0;
  for (const auto& t : terms) acc += t.weight * normal_pdf_deriv(t.order, x - t.mean, t.sd);
  return acc;
}

double inner_product(std::span<const GaussTerm> lhs, std::span<const GaussTerm> rhs) {
  double acc = 0.0;
  for (const auto& l : lhs) {
    for (const auto& r : rhs) {
      acc += l.weight * r.weight *
             gauss_product_integral(l.sd, r.sd, l.mean - r.mean, l.order, r.order);
    }
  }
  return acc;
}

double total_mass(std::span<const GaussTerm> terms) {
  double mass = 0.0;
  for (const auto& t : terms) {
    if (t.order == 0) mass += t.weight;
  }
  return mass;
}

}  // namespace icv
