#include "dpoem/baselines.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "dpoem/estimator.hpp"
#include "dpoem/rng.hpp"

namespace dpoem {

double DsfConfig::stepsize(std::size_t t) const {
  return eta0 / std::pow(static_cast<double>(t + 1), stepsize_exponent);
}

double DsfConfig::smoothing(std::size_t t) const {
  return mu0 / std::pow(static_cast<double>(t + 1), smoothing_exponent);
}

void DsfConfig::validate() const {
  if (!(eta0 > 0.0)) throw std::invalid_argument("DSF eta0 must be positive");
  if (!(mu0 > 0.0)) throw std::invalid_argument("DSF mu0 must be positive");
  if (!(stepsize_exponent > 0.0 && stepsize_exponent <= 1.0))
    throw std::invalid_argument("DSF stepsize exponent must lie in (0, 1]");
  if (!(smoothing_exponent > 0.0)) throw std::invalid_argument("DSF smoothing exponent must be positive");
}

std::vector<DsfConfig> default_dsf_grid() {
  std::vector<DsfConfig> grid;
  for (double eta0 : {0.01, 0.1, 1.0, 10.0})
    for (double mu0 : {1e-3, 1e-2, 1e-1, 1.0}) grid.push_back({eta0, mu0, 0.5, 1.0});
  return grid;
}

RunTrace run_dsf(const Problem& problem, const DsfConfig& config, std::size_t horizon,
                 std::uint64_t seed, const TraceOptions& options) {
  problem.validate();
  config.validate();
  if (horizon == 0) throw std::invalid_argument("horizon must be at least 1");

  const std::size_t n = problem.agents();
  const std::size_t d = problem.dimension();
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(d);

  std::vector<Rng> streams;
  streams.reserve(n);
  for (std::size_t i = 0; i < n; ++i) streams.push_back(make_stream(seed, StreamTag::kAgent, i));
  std::vector<std::uint64_t> calls(n, 0);
  std::uint64_t comm = 0;
  std::size_t violations = 0;

  Matrix x(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) x.row(i) = problem.x0.transpose();
  Matrix next(rows, cols);
  TraceRecorder recorder(problem.objectives, horizon, options);

  for (std::size_t t = 0; t < horizon; ++t) {
    const Matrix mixed = mix(problem.mixing, x);
    ++comm;
    const double mu = config.smoothing(t);
    const double eta = config.stepsize(t);

    RoundRecord round;
    round.t = t;
    if (options.record_agents) round.agents.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto row = static_cast<Eigen::Index>(i);
      const StochasticObjective& obj = *problem.objectives[i];
      const Vector z = mixed.row(row).transpose();
      const GradientEstimate est = estimate_gradient(obj, z, mu, streams[i]);
      calls[i] += static_cast<std::uint64_t>(est.oracle_calls);
      const double g_norm = est.g.norm();
      if (options.check_invariants && g_norm > obj.lipschitz_bound() * static_cast<double>(d) + 1e-6)
        ++violations;
      next.row(row) = project_ball(z - eta * est.g, problem.ball).transpose();
      if (options.record_agents) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        round.agents[i] = {nan, nan, mu, g_norm, eta, nan};
      }
    }

    std::uint64_t total = 0;
    for (auto c : calls) total += c;
    round.eta_mean = eta;
    round.mu_mean = mu;
    round.oracle_calls_total = total;
    round.comm_rounds_total = comm;
    recorder.record(std::move(round), 1.0, x, next);
    std::swap(x, next);
  }

  RunTrace header;
  header.algorithm = "dsf";
  header.seed = seed;
  header.context_fingerprint = problem.fingerprint();
  header.gradient_bound_violations = violations;
  header.agent_oracle_calls = calls;
  header.agent_comm_rounds.assign(n, comm);
  return recorder.finish(std::move(header), std::move(x));
}

DsfTuningResult tune_dsf(const Problem& problem, std::span<const DsfConfig> grid,
                         std::size_t horizon, std::uint64_t seed, const TraceOptions& options) {
  if (grid.empty()) throw std::invalid_argument("tune_dsf: empty grid");
  TraceOptions quiet = options;
  quiet.record_agents = false;
  quiet.metric_stride = horizon;

  DsfTuningResult result;
  std::size_t best = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double f = run_dsf(problem, grid[k], horizon, seed, quiet).final_f_xbar;
    result.objectives.push_back(f);
    if (k == 0) continue;
    const DsfConfig& cur = grid[best];
    const double f_best = result.objectives[best];
    const bool better =
        f < f_best || (f == f_best && (grid[k].eta0 < cur.eta0 ||
                                       (grid[k].eta0 == cur.eta0 && grid[k].mu0 < cur.mu0)));
    if (better) best = k;
  }
  result.best = grid[best];
  result.best_objective = result.objectives[best];
  return result;
}

}  // namespace dpoem
