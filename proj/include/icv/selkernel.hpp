#pragma once

#include <optional>
#include <vector>

#include "icv/gauss_terms.hpp"
#include "icv/gaussmix.hpp"

namespace icv {

enum class KernelFamily {
  CutOutMiddle,    // α > 0, σ < α/(1+α): negative dip at the origin
  Density,         // α/(1+α) ≤ σ ≤ 1, or α = 0
  NegativeTailed,  // α > 0, σ > 1
};

const char* to_string(KernelFamily family) noexcept;

struct KernelMoments {
  double mu2;    // 1 + α − ασ²
  double mu4;    // 3(1 + α − ασ⁴)
  double r_l;    // R(L)
  double r_rho;  // R(ρ_L), ρ_L(u) = u·γ'(u), γ = L*L − 2L
};

/// Selection kernel L(u; α, σ) = (1+α)φ(u) − (α/σ)φ(u/σ).
///
/// Immutable; moments and the rescale constant are computed once on
/// construction. The rescale constant is absent when μ_{2L} vanishes (the
/// fourth-order members of the family).
class SelectionKernel {
 public:
  /// Throws Errc::invalid_argument unless α ≥ 0 and σ > 0.
  SelectionKernel(double alpha, double sigma);

  static SelectionKernel gaussian() { return SelectionKernel(0.0, 1.0); }

  double alpha() const { return alpha_; }
  double sigma() const { return sigma_; }

  double operator()(double u) const;

  const KernelMoments& moments() const { return moments_; }

  /// C = (μ_{2L}² / (2√π R(L)))^{1/5}; maps an L-kernel bandwidth to the
  /// Gaussian-kernel bandwidth with the same AMISE behaviour. Throws
  /// Errc::degenerate_kernel when |μ_{2L}| < 1e-10.
  double rescale_constant() const;
  bool degenerate() const { return !rescale_.has_value(); }

  KernelFamily family() const;

  KernelStats stats() const { return {moments_.r_l, moments_.mu2}; }

  /// L as two Gaussian terms.
  std::vector<GaussTerm> terms() const;
  /// L*L = (1+α)²φ_{√2} − 2α(1+α)φ_{√(1+σ²)} + α²φ_{σ√2}; total mass 1.
  std::vector<GaussTerm> self_convolution() const;
  /// γ = L*L − 2L, the kernel of the pairwise LSCV sum.
  std::vector<GaussTerm> lscv_kernel() const;
  /// ρ_L(u) = u·γ'(u), written with u·φ_s'(u) = −s²φ_s''(u) − φ_s(u).
  std::vector<GaussTerm> variance_kernel() const;

 private:
  double alpha_;
  double sigma_;
  KernelMoments moments_{};
  std::optional<double> rescale_;
};

}  // namespace icv
