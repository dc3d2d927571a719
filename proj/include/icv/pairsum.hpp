#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace icv {

/// A validated sample: at least one finite observation, stored sorted, with
/// the summary statistics the bandwidth selectors anchor their search on.
class Sample {
 public:
  explicit Sample(std::vector<double> values);

  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }
  /// Standard deviation with the n − 1 divisor (0 for a single value).
  double sd() const { return sd_; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }
  double range() const { return max() - min(); }
  /// Number of observations equal to an earlier one.
  std::size_t tie_count() const { return ties_; }

 private:
  std::vector<double> values_;
  double sd_ = 0.0;
  std::size_t ties_ = 0;
};

// The pair sums below run over all unordered pairs i < j of `values`. They
// are the only O(n²) loops in the library and are compiled with vectorised
// exp(); reference::* holds plain loops for cross-checking.

struct ExpSums {
  double e;   // Σ exp(−scale·d²)
  double e2;  // Σ exp(−2·scale·d²)
};

/// Σ_{i<j} exp(−scale·(X_i − X_j)²).
double pair_exp_sum(std::span<const double> values, double scale);

/// Σ e and Σ e² over pairs from a single exponential per pair.
ExpSums pair_exp_sums(std::span<const double> values, double scale);

/// Σ_i Σ_k weight_k · exp(−scale_k·(X_i − centre_k)²): the data/target cross
/// term of the exact ISE, O(n·K).
double cross_exp_sum(std::span<const double> values, std::span<const double> centres,
                     std::span<const double> weights, std::span<const double> scales);

/// Exponent coefficients for one (x, b) evaluation of the windowed criterion.
/// With d = X_i − X_j, mid = (X_i + X_j)/2, ca = (σ²X_i + X_j)/(1+σ²) and
/// cb = (X_i + σ²X_j)/(1+σ²), each pair contributes
///   w11·exp(−d11·d² − t11·(x−mid)²) + w22·exp(−d22·d² − t22·(x−mid)²)
///   + w12·exp(−d12·d²)·[exp(−t12·(x−ca)²) + exp(−t12·(x−cb)²)]
/// to the first sum, and
///   [l1·exp(−dl1·d²) + l2·exp(−dl2·d²)]·(p_i + p_j)
/// to the leave-one-out sum.
struct LocalCoefficients {
  double sigma2;
  double w11, d11, t11;
  double w22, d22, t22;
  double w12, d12, t12;
  double l1, dl1;
  double l2, dl2;
  bool two_component;  // false when α = 0: only the 11 and l1 terms exist
};

struct LocalSums {
  double first;
  double loo;
};

/// One O(n²) pass; `window_weights[i]` is φ_w(x − X_i).
LocalSums local_pair_sums(std::span<const double> values, const LocalCoefficients& c, double x,
                          std::span<const double> window_weights);

}  // namespace icv
