#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "icv/gauss_terms.hpp"

namespace icv {

struct NormalComponent {
  double weight;
  double mean;
  double sd;
};

/// Finite mixture of normal densities with strictly positive weights summing
/// to one. Used as the true density in simulations, as the sampling source,
/// and (for Gaussian-kernel estimates) as the exact form of f̂_h itself.
class NormalMixture {
 public:
  /// Throws Errc::invalid_argument if the components violate the invariants.
  explicit NormalMixture(std::vector<NormalComponent> components);

  static NormalMixture standard_normal() { return NormalMixture({{1.0, 0.0, 1.0}}); }

  std::span<const NormalComponent> components() const { return components_; }
  std::size_t size() const { return components_.size(); }

  double pdf(double x) const;

  /// n i.i.d. draws; a component is picked by comparing a uniform variate to
  /// the cumulative weights, then a normal variate is scaled into it.
  std::vector<double> sample(std::size_t n, std::uint64_t seed) const;

  /// Density of X + h·Z, i.e. f * φ_h.
  NormalMixture convolved(double h) const;

  /// Density of c·X for c > 0.
  NormalMixture scaled(double c) const;

  /// Mixture as Gaussian terms, differentiated `order` times.
  std::vector<GaussTerm> terms(int order = 0) const;

  /// [min μ − k·max σ, max μ + k·max σ]
  std::pair<double, double> support(double k) const;

 private:
  std::vector<NormalComponent> components_;
};

struct RoughnessSet {
  double r_f;   // R(f)
  double r_f2;  // R(f'')
  double r_f3;  // R(f''')
};

/// Exact R(f^{(r)}) for r ∈ {0, 2, 3}.
double roughness_deriv(const NormalMixture& f, int r);
RoughnessSet roughness_set(const NormalMixture& f);

/// ∫ (a − b)²; zero iff a and b are the same function.
double l2_distance_sq(const NormalMixture& a, const NormalMixture& b);

/// The Gaussian-kernel estimate f̂_h as an equal-weight mixture.
NormalMixture kde_mixture(std::span<const double> data, double h);

/// Exact MISE of the Gaussian-kernel estimator for samples of size n from f.
double exact_mise(const NormalMixture& f, std::size_t n, double h);

/// Minimizer of exact_mise over h, located by log-grid scan plus golden
/// refinement on [0.01, 4]·AMISE bandwidth.
double mise_minimizer(const NormalMixture& f, std::size_t n);

struct KernelStats {
  double r_k;   // R(K)
  double mu2k;  // μ_{2K}
};

inline constexpr KernelStats kGaussianKernelStats{0.5 / kSqrtPi, 1.0};

/// {R(K) / (μ_{2K}² R(f''))}^{1/5} n^{−1/5}.
double amise_bandwidth(KernelStats kernel, const NormalMixture& f, std::size_t n);

/// The five normal-mixture targets, by name.
NormalMixture target_density(std::string_view name);
std::span<const std::string_view> target_names();

}  // namespace icv
