// Built with -ffast-math (see src/CMakeLists.txt) so the inner loops below map
// onto libmvec's vector exp(). Sums are reassociated by the vectoriser; the
// order is fixed per build, so results are reproducible run to run.

#include "icv/pairsum.hpp"

#include <cmath>
#include <cstddef>

namespace icv {

namespace {

// libmvec drops to a scalar path for arguments below about −708; clamping
// keeps every lane vectorised at the cost of a 1e-304 floor per term.
inline double vexp(double a) { return std::exp(a < -700.0 ? -700.0 : a); }

}  // namespace

double pair_exp_sum(std::span<const double> values, double scale) {
  const double* v = values.data();
  const std::size_t n = values.size();
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double xi = v[i];
    double row = 0.0;
#pragma omp simd reduction(+ : row)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = v[j] - xi;
      row += vexp(-scale * d * d);
    }
    acc += row;
  }
  return acc;
}

ExpSums pair_exp_sums(std::span<const double> values, double scale) {
  const double* v = values.data();
  const std::size_t n = values.size();
  double acc = 0.0;
  double acc2 = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double xi = v[i];
    double row = 0.0;
    double row2 = 0.0;
#pragma omp simd reduction(+ : row, row2)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = v[j] - xi;
      const double e = vexp(-scale * d * d);
      row += e;
      row2 += e * e;
    }
    acc += row;
    acc2 += row2;
  }
  return {acc, acc2};
}

double cross_exp_sum(std::span<const double> values, std::span<const double> centres,
                     std::span<const double> weights, std::span<const double> scales) {
  const double* v = values.data();
  const std::size_t n = values.size();
  double acc = 0.0;
  for (std::size_t k = 0; k < centres.size(); ++k) {
    const double mu = centres[k];
    const double s = scales[k];
    double part = 0.0;
#pragma omp simd reduction(+ : part)
    for (std::size_t i = 0; i < n; ++i) {
      const double d = v[i] - mu;
      part += vexp(-s * d * d);
    }
    acc += weights[k] * part;
  }
  return acc;
}

LocalSums local_pair_sums(std::span<const double> values, const LocalCoefficients& c, double x,
                          std::span<const double> window_weights) {
  const double* v = values.data();
  const double* p = window_weights.data();
  const std::size_t n = values.size();
  const double inv1s = 1.0 / (1.0 + c.sigma2);
  double first = 0.0;
  double loo = 0.0;

  if (!c.two_component) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      const double xi = v[i];
      const double pi = p[i];
      double f_row = 0.0;
      double l_row = 0.0;
#pragma omp simd reduction(+ : f_row, l_row)
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = v[j] - xi;
        const double d2 = d * d;
        const double dm = x - 0.5 * (xi + v[j]);
        f_row += vexp(-c.d11 * d2 - c.t11 * dm * dm);
        l_row += vexp(-c.dl1 * d2) * (pi + p[j]);
      }
      first += f_row;
      loo += l_row;
    }
    return {c.w11 * first, c.l1 * loo};
  }

  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double xi = v[i];
    const double pi = p[i];
    double f_row = 0.0;
    double l_row = 0.0;
#pragma omp simd reduction(+ : f_row, l_row)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double xj = v[j];
      const double d = xj - xi;
      const double d2 = d * d;
      const double dm = x - 0.5 * (xi + xj);
      const double da = x - (c.sigma2 * xi + xj) * inv1s;
      const double db = x - (xi + c.sigma2 * xj) * inv1s;
      const double cross = vexp(-c.d12 * d2 - c.t12 * da * da) +
                           vexp(-c.d12 * d2 - c.t12 * db * db);
      f_row += c.w11 * vexp(-c.d11 * d2 - c.t11 * dm * dm) +
               c.w22 * vexp(-c.d22 * d2 - c.t22 * dm * dm) + c.w12 * cross;
      l_row += (c.l1 * vexp(-c.dl1 * d2) + c.l2 * vexp(-c.dl2 * d2)) * (pi + p[j]);
    }
    first += f_row;
    loo += l_row;
  }
  return {first, loo};
}

}  // namespace icv
