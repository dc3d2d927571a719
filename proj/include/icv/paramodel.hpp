#pragma once

#include <cstddef>
#include <optional>

#include "icv/gaussmix.hpp"
#include "icv/selkernel.hpp"

namespace icv {

enum class ParamSource { Model, MseOptimal, Manual };

const char* to_string(ParamSource source) noexcept;

struct ParamChoice {
  double alpha;
  double sigma;
  ParamSource source;
  std::size_t n;
  /// Model source only: n was outside [100, 500000] and was clamped.
  bool clamped = false;

  SelectionKernel kernel() const { return {alpha, sigma}; }
};

inline constexpr std::size_t kModelMinN = 100;
inline constexpr std::size_t kModelMaxN = 500000;
inline constexpr double kAsymptoticAlpha = 2.4233;

/// Polynomial-in-log10(n) model for (α, σ). n outside the fitted range is
/// clamped into it and flagged; n < 2 throws Errc::invalid_argument.
ParamChoice model_params(std::size_t n);

/// Asymptotic MSE of the ICV bandwidth, including the second-order bias term.
/// Throws Errc::degenerate_kernel if μ_{2L} vanishes.
double asymptotic_mse(const SelectionKernel& kernel, const RoughnessSet& f, double n);

/// Constant A_α of the asymptotically optimal σ.
double a_alpha(double alpha);

/// σ_{n,opt} = n^{3/8}·A_α·[R(f)R(f'')^{13/5}/R(f''')²]^{5/8}.
double optimal_sigma(double alpha, const RoughnessSet& f, double n);

struct MseSearchOptions {
  double param_tol = 1e-6;  // simplex size in (log α, log σ)
  int max_iterations = 20000;
};

/// Numerical minimiser of asymptotic_mse over (log α, log σ): Nelder–Mead from
/// a 3×3 lattice of starts that includes the model point and
/// (2.4233, σ_{n,opt}); the best converged run wins, ties toward smaller α.
/// Throws Errc::optimization_failure if no start converges.
ParamChoice mse_optimal_params(const NormalMixture& f, std::size_t n,
                               const MseSearchOptions& options = {});

}  // namespace icv
