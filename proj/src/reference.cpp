#include "icv/reference.hpp"

#include <array>
#include <cmath>

namespace icv::reference {

double lscv(std::span<const double> data, const SelectionKernel& kernel, double h) {
  const auto conv = kernel.self_convolution();
  const std::size_t n = data.size();
  double r_term = 0.0;
  double loo_term = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double u = (data[i] - data[j]) / h;
      r_term += evaluate(conv, u);
      if (i != j) loo_term += kernel(u);
    }
  }
  const double nn = static_cast<double>(n);
  return r_term / (nn * nn * h) - 2.0 * loo_term / (nn * (nn - 1.0) * h);
}

double ise(std::span<const double> data, const NormalMixture& f, double h) {
  return l2_distance_sq(kde_mixture(data, h), f);
}

double local_first_term(std::span<const double> data, double x, double b, double w,
                        const SelectionKernel& kernel) {
  // f̂_b = (1/n) Σ_i Σ_c a_c φ_{s_c}(· − X_i); the product of two such
  // Gaussians is φ_{√(s²+t²)}(X_i − X_j)·φ_τ(u − m), which φ_w then smooths.
  const std::array<double, 2> a = {1.0 + kernel.alpha(), -kernel.alpha()};
  const std::array<double, 2> s = {b, kernel.sigma() * b};
  const std::size_t n = data.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) {
          const double sc2 = s[c] * s[c];
          const double sd2 = s[d] * s[d];
          const double tau2 = sc2 * sd2 / (sc2 + sd2);
          const double m = (data[i] * sd2 + data[j] * sc2) / (sc2 + sd2);
          acc += a[c] * a[d] * normal_pdf(data[i] - data[j], std::sqrt(sc2 + sd2)) *
                 normal_pdf(x - m, std::sqrt(w * w + tau2));
        }
      }
    }
  }
  const double nn = static_cast<double>(n);
  return acc / (nn * nn);
}

double local_icv(std::span<const double> data, double x, double b, double w,
                 const SelectionKernel& kernel) {
  const std::size_t n = data.size();
  double loo = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double f_minus_i = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j != i) f_minus_i += kernel((data[i] - data[j]) / b);
    }
    f_minus_i /= (static_cast<double>(n) - 1.0) * b;
    loo += normal_pdf(x - data[i], w) * f_minus_i;
  }
  return local_first_term(data, x, b, w, kernel) - 2.0 * loo / static_cast<double>(n);
}

}  // namespace icv::reference
