#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "dpoem/metrics.hpp"
#include "dpoem/problem.hpp"

namespace dpoem {

/// Distributed subgradient-free method with preset schedules
/// eta_t = eta0 / (t+1)^stepsize_exponent and mu_t = mu0 / (t+1)^smoothing_exponent.
struct DsfConfig {
  double eta0 = 1.0;
  double mu0 = 1.0;
  double stepsize_exponent = 0.5;
  double smoothing_exponent = 1.0;

  double stepsize(std::size_t t) const;
  double smoothing(std::size_t t) const;
  /// Throws std::invalid_argument when a field is out of range.
  void validate() const;

  bool operator==(const DsfConfig&) const = default;
};

/// eta0 in {0.01, 0.1, 1, 10} x mu0 in {1e-3, 1e-2, 1e-1, 1}, default exponents.
std::vector<DsfConfig> default_dsf_grid();

/// Each round: gossip the iterates once, take a same-sample two-point estimate
/// at the mixed point with radius mu_t, step with eta_t and project. The output
/// average x~ uses uniform weights.
RunTrace run_dsf(const Problem& problem, const DsfConfig& config, std::size_t horizon,
                 std::uint64_t seed, const TraceOptions& options = {});

struct DsfTuningResult {
  DsfConfig best;
  double best_objective = 0.0;
  std::vector<double> objectives;  // final f(xbar_T), one per grid entry
};

/// Runs every grid entry and keeps the one with the lowest final f(xbar_T);
/// ties go to the smaller eta0, then the smaller mu0, then the earlier entry.
DsfTuningResult tune_dsf(const Problem& problem, std::span<const DsfConfig> grid,
                         std::size_t horizon, std::uint64_t seed, const TraceOptions& options = {});

}  // namespace dpoem
