#pragma once

#include <cstdint>
#include <vector>

#include "dpoem/metrics.hpp"
#include "dpoem/problem.hpp"
#include "dpoem/rng.hpp"

namespace dpoem {

/// One agent's private state between rounds.
struct AgentState {
  std::size_t id = 0;
  Vector x;              // x_{i,t}
  Vector x0;             // anchor x_{i,0}
  double r_bar_prev = 0; // rbar_{i,t-1}
  double G = 0;          // G_{i,t-1}
  Rng rng;
  std::uint64_t oracle_calls = 0;
  std::uint64_t comm_rounds = 0;
};

/// max{ rbar_{i,t-1}, ||x_{i,t} - x_{i,0}|| }.
double radius_proxy(const AgentState& state);

/// mu = rbar * sqrt(d / (t + 1)).
double smoothing_radius(double r_bar, std::size_t d, std::size_t t);

/// eta = rbar / sqrt(G).
double stepsize(double r_bar, double G);

struct DpoemConfig {
  double r_eps = 0.1;
  std::size_t horizon = 1000;
  std::uint64_t seed = 0;
};

/// Agents at round 0: x = x0, rbar_{-1} = r_eps, G_{-1} = r_eps^2, private
/// streams derived from (seed, agent id).
std::vector<AgentState> initial_agents(const Problem& problem, double r_eps, std::uint64_t seed);

/// Runs `horizon` bulk-synchronous D-POEM rounds. Each round every agent
/// forms its radius proxy, the proxies are gossiped once, each agent sets its
/// smoothing radius and takes a two-point estimate at its own iterate, updates
/// its accumulator and stepsize, the iterates are gossiped once, and each agent
/// steps from its mixed iterate and projects back onto the ball.
///
/// Throws std::invalid_argument for an inconsistent problem, r_eps outside
/// (0, diameter] or a zero horizon.
RunTrace run_dpoem(const Problem& problem, const DpoemConfig& config, const TraceOptions& options = {});

}  // namespace dpoem
