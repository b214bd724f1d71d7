#include "dpoem/algorithm.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "dpoem/estimator.hpp"

namespace dpoem {

double radius_proxy(const AgentState& state) {
  return std::max(state.r_bar_prev, (state.x - state.x0).norm());
}

double smoothing_radius(double r_bar, std::size_t d, std::size_t t) {
  return r_bar * std::sqrt(static_cast<double>(d) / static_cast<double>(t + 1));
}

double stepsize(double r_bar, double G) {
  return r_bar / std::sqrt(G);
}

std::vector<AgentState> initial_agents(const Problem& problem, double r_eps, std::uint64_t seed) {
  std::vector<AgentState> agents(problem.agents());
  for (std::size_t i = 0; i < agents.size(); ++i) {
    auto& a = agents[i];
    a.id = i;
    a.x = problem.x0;
    a.x0 = problem.x0;
    a.r_bar_prev = r_eps;
    a.G = r_eps * r_eps;
    a.rng = make_stream(seed, StreamTag::kAgent, i);
  }
  return agents;
}

RunTrace run_dpoem(const Problem& problem, const DpoemConfig& config, const TraceOptions& options) {
  problem.validate();
  const double diameter = problem.ball.diameter();
  if (!(config.r_eps > 0.0) || config.r_eps > diameter)
    throw std::invalid_argument("r_eps must lie in (0, " + std::to_string(diameter) + "]");
  if (config.horizon == 0) throw std::invalid_argument("horizon must be at least 1");

  const std::size_t n = problem.agents();
  const std::size_t d = problem.dimension();
  const auto rows = static_cast<Eigen::Index>(n);
  const auto cols = static_cast<Eigen::Index>(d);

  std::vector<AgentState> agents = initial_agents(problem, config.r_eps, config.seed);
  TraceRecorder recorder(problem.objectives, config.horizon, options);
  std::size_t violations = 0;

  Matrix before(rows, cols);
  Matrix after(rows, cols);
  Matrix grads(rows, cols);
  Vector r_hat(rows);
  Vector eta(rows);
  Vector mu(rows);

  for (std::size_t t = 0; t < config.horizon; ++t) {
    for (std::size_t i = 0; i < n; ++i) {
      before.row(static_cast<Eigen::Index>(i)) = agents[i].x.transpose();
      r_hat[static_cast<Eigen::Index>(i)] = radius_proxy(agents[i]);
    }

    // Radius gossip.
    const Vector r_bar = mix(problem.mixing, r_hat);
    for (auto& a : agents) ++a.comm_rounds;

    RoundRecord round;
    round.t = t;
    if (options.record_agents) round.agents.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      auto& a = agents[i];
      const auto row = static_cast<Eigen::Index>(i);
      const StochasticObjective& obj = *problem.objectives[i];
      mu[row] = smoothing_radius(r_bar[row], d, t);
      const GradientEstimate est = estimate_gradient(obj, a.x, mu[row], a.rng);
      a.oracle_calls += static_cast<std::uint64_t>(est.oracle_calls);
      const double g_norm = est.g.norm();
      if (options.check_invariants &&
          g_norm > obj.lipschitz_bound() * static_cast<double>(d) + 1e-6) {
        ++violations;
        assert(false && "two-point estimate exceeds L d");
      }
      a.G += g_norm * g_norm;
      eta[row] = stepsize(r_bar[row], a.G);
      grads.row(row) = est.g.transpose();
      if (options.record_agents)
        round.agents[i] = {r_hat[row], r_bar[row], mu[row], g_norm, eta[row], a.G};
    }

    // Iterate gossip, then the projected step from the mixed point.
    const Matrix mixed = mix(problem.mixing, before);
    for (std::size_t i = 0; i < n; ++i) {
      auto& a = agents[i];
      const auto row = static_cast<Eigen::Index>(i);
      ++a.comm_rounds;
      a.x = project_ball(mixed.row(row).transpose() - eta[row] * grads.row(row).transpose(),
                         problem.ball);
      a.r_bar_prev = r_bar[row];
    }

    double G_max = agents.front().G;
    std::uint64_t calls = 0;
    for (std::size_t i = 0; i < n; ++i) {
      after.row(static_cast<Eigen::Index>(i)) = agents[i].x.transpose();
      G_max = std::max(G_max, agents[i].G);
      calls += agents[i].oracle_calls;
    }
    round.rbar_mean = r_bar.mean();
    round.G_max = G_max;
    round.eta_mean = eta.mean();
    round.mu_mean = mu.mean();
    round.oracle_calls_total = calls;
    round.comm_rounds_total = agents.front().comm_rounds;
    const double weight = round.rbar_mean;
    recorder.record(std::move(round), weight, before, after);
  }

  RunTrace header;
  header.algorithm = "dpoem";
  header.seed = config.seed;
  header.context_fingerprint = problem.fingerprint();
  header.gradient_bound_violations = violations;
  for (const auto& a : agents) {
    header.agent_oracle_calls.push_back(a.oracle_calls);
    header.agent_comm_rounds.push_back(a.comm_rounds);
  }
  return recorder.finish(std::move(header), std::move(after));
}

}  // namespace dpoem
