#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "icv/crossval.hpp"
#include "icv/gaussmix.hpp"
#include "icv/minimize.hpp"
#include "icv/selkernel.hpp"

namespace icv {

/// Exact ISE of the Gaussian-kernel estimate against a normal mixture,
/// ∫(f̂_h − f)², in O(n² + nK).
double integrated_squared_error(const Sample& sample, const NormalMixture& f, double h);

struct IseMinimum {
  double h0;
  double ise0;
  CurveStatus status = CurveStatus::Interior;
};

/// Global minimiser of the ISE over [0.02, 2]·ĥ_OS.
IseMinimum ise_minimizer(const Sample& sample, const NormalMixture& f,
                         const SearchOptions& options = {});

struct StudyConfig {
  std::string density = "gaussian";
  std::size_t n = 100;
  std::size_t replications = 1000;
  std::uint64_t seed = 0;
  std::vector<Method> selectors{Method::LSCV, Method::ICVStar, Method::ICV};
  /// Selection kernel for ICV; unset means the sample-size model.
  std::optional<SelectionKernel> kernel;
  /// Spread replications over the OpenMP team.
  bool parallel = true;
};

/// Throws Errc::invalid_argument describing the first offending field.
void validate(const StudyConfig& config);

/// Seed of replication `rep_index`: a splitmix64 mix of the pair, so each
/// replication draws from its own stream whatever order it runs in.
std::uint64_t replication_seed(std::uint64_t master, std::size_t rep_index);

struct SelectorOutcome {
  Method method;
  double bandwidth = 0.0;
  double ise = 0.0;
  double ise_ratio = 0.0;
  CurveStatus status = CurveStatus::Interior;
  bool failed = false;
  std::string error;  // set when the selector threw
};

struct ReplicationRecord {
  std::size_t rep_index = 0;
  std::uint64_t seed = 0;
  double h0 = 0.0;
  double ise0 = 0.0;
  CurveStatus h0_status = CurveStatus::Interior;
  std::vector<SelectorOutcome> outcomes;  // in StudyConfig::selectors order

  /// A record counts as failed when ĥ₀ or any selector diverged to the lower
  /// end of its search range or threw.
  bool failed() const;
  const SelectorOutcome& outcome(Method method) const;
};

struct SelectorSummary {
  Method method;
  double mean_h = 0.0;
  double sd_h = 0.0;
  double mse_vs_mean_h0 = 0.0;  // mean of (ĥ − mean ĥ₀)²
  double mean_ise_ratio = 0.0;
  double median_ise_ratio = 0.0;
  double corr_h0 = 0.0;         // sample correlation of (ĥ, ĥ₀); 0 if undefined
  std::size_t failures = 0;     // replications where this selector failed
};

struct SimulationSummary {
  StudyConfig config;
  double alpha = 0.0;  // ICV kernel actually used
  double sigma = 0.0;
  std::size_t used = 0;    // replications entering the statistics
  std::size_t failed = 0;  // replications excluded
  double mean_h0 = 0.0;
  double sd_h0 = 0.0;
  std::vector<SelectorSummary> selectors;

  const SelectorSummary& selector(Method method) const;
};

struct StudyResult {
  std::vector<ReplicationRecord> records;  // ordered by rep_index
  SimulationSummary summary;
};

/// One replication: sample, ĥ₀, every selector, ISE ratios.
ReplicationRecord run_replication(const StudyConfig& config, const NormalMixture& f,
                                  const SelectionKernel& icv_kernel, std::size_t rep_index);

/// Statistics over the non-failed records, folded in rep_index order. SDs use
/// the n − 1 divisor and are 0 for a single record.
SimulationSummary summarize(const StudyConfig& config, const SelectionKernel& icv_kernel,
                            const std::vector<ReplicationRecord>& records);

/// Runs every replication and summarises. Output is identical for any
/// number of OpenMP threads.
StudyResult run_study(const StudyConfig& config);

}  // namespace icv
