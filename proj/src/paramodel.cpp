#include "icv/paramodel.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_multimin.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "icv/error.hpp"

namespace icv {

const char* to_string(ParamSource source) noexcept {
  switch (source) {
    case ParamSource::Model: return "model";
    case ParamSource::MseOptimal: return "mse-optimal";
    case ParamSource::Manual: return "manual";
  }
  return "unknown";
}

ParamChoice model_params(std::size_t n) {
  if (n < 2) fail(Errc::invalid_argument, "model parameters need n >= 2");
  const std::size_t used = std::clamp(n, kModelMinN, kModelMaxN);
  const double l = std::log10(static_cast<double>(used));
  const double l2 = l * l;
  const double l3 = l2 * l;
  const double log_alpha = 3.390 - 1.093 * l + 0.025 * l3 - 0.00004 * l3 * l3;
  const double log_sigma = -0.58 + 0.386 * l - 0.012 * l2;
  return {std::pow(10.0, log_alpha), std::pow(10.0, log_sigma), ParamSource::Model, n, used != n};
}

double asymptotic_mse(const SelectionKernel& kernel, const RoughnessSet& f, double n) {
  if (kernel.degenerate()) kernel.rescale_constant();  // throws degenerate_kernel
  const auto& m = kernel.moments();
  const double mu2_sq = m.mu2 * m.mu2;
  const double four_pi = 4.0 * std::numbers::pi;
  const double n35 = std::pow(n, -0.6);

  const double lead = std::pow(1.0 / four_pi, 0.2) * f.r_f3 * f.r_f3 / std::pow(f.r_f2, 3.2) * n35;
  const double variance = 2.0 / 25.0 * f.r_f * std::pow(f.r_f2, 2.6) / (f.r_f3 * f.r_f3) * m.r_rho /
                          (std::pow(m.r_l, 1.8) * std::pow(mu2_sq, 0.2));
  const double bias_core =
      std::pow(m.r_l, 0.4) * m.mu2 * m.mu4 / std::pow(mu2_sq, 1.4) - 3.0 / std::pow(four_pi, 0.2);
  const double bias = n35 / 400.0 * bias_core * bias_core;
  return lead * (variance + bias);
}

double a_alpha(double alpha) {
  if (!(alpha > 0.0)) fail(Errc::invalid_argument, "A_alpha needs alpha > 0");
  const double a1 = 1.0 + alpha;
  const double bracket = a1 * a1 / 8.0 - 8.0 / (9.0 * std::sqrt(3.0)) * a1 + 1.0 / std::numbers::sqrt2;
  return 16.0 * kSqrtPi * std::pow(2.0, 7.0 / 16.0) / std::pow(3.0, 5.0 / 8.0) *
         std::pow(alpha, 0.75) / (a1 * a1) * std::pow(bracket, 5.0 / 8.0);
}

double optimal_sigma(double alpha, const RoughnessSet& f, double n) {
  const double ratio = f.r_f * std::pow(f.r_f2, 2.6) / (f.r_f3 * f.r_f3);
  return std::pow(n, 3.0 / 8.0) * a_alpha(alpha) * std::pow(ratio, 5.0 / 8.0);
}

namespace {

struct MseProblem {
  RoughnessSet roughness;
  double n;
};

double log_space_mse(const gsl_vector* p, void* params) {
  const auto* problem = static_cast<const MseProblem*>(params);
  const double alpha = std::exp(gsl_vector_get(p, 0));
  const double sigma = std::exp(gsl_vector_get(p, 1));
  constexpr double kInfeasible = 1e300;
  if (!std::isfinite(alpha) || !std::isfinite(sigma)) return kInfeasible;
  const SelectionKernel kernel(alpha, sigma);
  if (kernel.degenerate()) return kInfeasible;
  const double value = asymptotic_mse(kernel, problem->roughness, problem->n);
  // Cancellation in R(ρ_L) at extreme α can push the value through zero.
  return (std::isfinite(value) && value > 0.0) ? value : kInfeasible;
}

struct StartResult {
  double alpha = 0.0;
  double sigma = 0.0;
  double value = std::numeric_limits<double>::infinity();
  bool converged = false;
};

StartResult run_simplex(const MseProblem& problem, double alpha0, double sigma0,
                        const MseSearchOptions& options) {
  gsl_multimin_function fn{&log_space_mse, 2, const_cast<MseProblem*>(&problem)};
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> x(gsl_vector_alloc(2), &gsl_vector_free);
  std::unique_ptr<gsl_vector, decltype(&gsl_vector_free)> step(gsl_vector_alloc(2),
                                                               &gsl_vector_free);
  gsl_vector_set(x.get(), 0, std::log(alpha0));
  gsl_vector_set(x.get(), 1, std::log(sigma0));
  gsl_vector_set_all(step.get(), 0.3);

  std::unique_ptr<gsl_multimin_fminimizer, decltype(&gsl_multimin_fminimizer_free)> solver(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, 2),
      &gsl_multimin_fminimizer_free);
  gsl_multimin_fminimizer_set(solver.get(), &fn, x.get(), step.get());

  StartResult result;
  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (gsl_multimin_fminimizer_iterate(solver.get()) != GSL_SUCCESS) break;
    const double size = gsl_multimin_fminimizer_size(solver.get());
    if (gsl_multimin_test_size(size, options.param_tol) == GSL_SUCCESS) {
      result.converged = true;
      break;
    }
  }
  result.alpha = std::exp(gsl_vector_get(solver->x, 0));
  result.sigma = std::exp(gsl_vector_get(solver->x, 1));
  result.value = solver->fval;
  if (!(result.value < 1e300)) result.converged = false;
  return result;
}

}  // namespace

ParamChoice mse_optimal_params(const NormalMixture& f, std::size_t n,
                               const MseSearchOptions& options) {
  if (n < kModelMinN) fail(Errc::invalid_argument, "MSE-optimal parameters need n >= 100");
  gsl_set_error_handler_off();

  const MseProblem problem{roughness_set(f), static_cast<double>(n)};
  const auto model = model_params(n);
  const double sigma_asym = optimal_sigma(kAsymptoticAlpha, problem.roughness, problem.n);
  const std::array<double, 3> alphas = {kAsymptoticAlpha, model.alpha, 30.0};
  const std::array<double, 3> sigmas = {sigma_asym, model.sigma, 1.2};

  std::array<StartResult, 9> runs;
#pragma omp parallel for schedule(dynamic)
  for (int k = 0; k < 9; ++k) {
    runs[static_cast<std::size_t>(k)] =
        run_simplex(problem, alphas[static_cast<std::size_t>(k / 3)],
                    sigmas[static_cast<std::size_t>(k % 3)], options);
  }

  const StartResult* best = nullptr;
  const StartResult* best_any = &runs.front();
  for (const auto& r : runs) {
    if (r.value < best_any->value) best_any = &r;
    if (!r.converged) continue;
    if (best == nullptr || r.value < best->value ||
        (r.value == best->value && r.alpha < best->alpha)) {
      best = &r;
    }
  }
  if (best == nullptr) {
    std::ostringstream msg;
    msg << "no Nelder-Mead start converged; best point alpha=" << best_any->alpha
        << " sigma=" << best_any->sigma << " mse=" << best_any->value;
    fail(Errc::optimization_failure, msg.str());
  }
  return {best->alpha, best->sigma, ParamSource::MseOptimal, n, false};
}

}  // namespace icv
