#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "dpoem/oracle.hpp"
#include "dpoem/types.hpp"

namespace dpoem {

/// Column-wise mean of the agent-stacked iterates.
Vector network_average(const Matrix& x);

/// ||(I - J) X||_F.
double consensus_error(const Matrix& x);

/// One point of the weighted-output history: R_t and the newest weight in it.
struct OutputPoint {
  double total_weight;  // R_t = sum_{k<t} rbar_k
  double last_weight;   // rbar_{t-1}
};

/// Running R_t = sum_{k<t} w_k and S_t = sum_{k<t} w_k xbar_k, with the full
/// history kept so any x~_t = S_t / R_t can be recovered.
class WeightedOutputAccumulator {
 public:
  WeightedOutputAccumulator() = default;
  explicit WeightedOutputAccumulator(std::size_t d);

  void add(double weight, const Vector& xbar);

  /// Number of terms added (t).
  std::size_t size() const { return history_.size(); }
  double total_weight() const { return total_; }
  /// x~_t for the current t; requires size() >= 1.
  Vector current() const;
  /// x~_t for 1 <= t <= size().
  Vector at(std::size_t t) const;
  const std::vector<OutputPoint>& history() const { return history_; }

 private:
  double total_ = 0.0;
  Vector sum_;
  std::vector<OutputPoint> history_;
  std::vector<Vector> sums_;
};

/// argmax_{1<=t<=T} R_t / rbar_{t-1}, smallest t on ties. Returns 1-based t.
std::size_t select_output_time(std::span<const OutputPoint> history);

struct OutputSelection {
  std::size_t tau = 0;
  Vector x_out;
};

/// Picks tau over the first `horizon` points (all when 0) and returns x~_tau.
OutputSelection select_output(const WeightedOutputAccumulator& acc, std::size_t horizon = 0);

struct BoundCheck {
  bool pass = false;
  double lhs = 0.0;  // R_tau / rbar_tau
  double rhs = 0.0;  // T / (e (1 + log(D / r_eps)))
  double margin = 0.0;  // lhs / rhs
};

/// Checks max_t R_t / rbar_{t-1} >= T / (e (1 + log(diameter / r_eps))) with T = history.size().
BoundCheck poem_bound_check(std::span<const OutputPoint> history, double diameter, double r_eps);

struct AgentRound {
  double r_hat = 0.0;
  double r_bar = 0.0;
  double mu = 0.0;
  double g_norm = 0.0;
  double eta = 0.0;
  double G = 0.0;
};

/// Diagnostics for round t (the step from x_t to x_{t+1}).
struct RoundRecord {
  std::size_t t = 0;
  std::vector<AgentRound> agents;  // empty when per-agent recording is off
  Vector xbar;                     // network average of x_t
  double rbar_mean = std::numeric_limits<double>::quiet_NaN();
  double consensus_error = 0.0;    // of X_t
  double G_max = std::numeric_limits<double>::quiet_NaN();
  double eta_mean = 0.0;
  double mu_mean = 0.0;
  double max_norm_after = 0.0;     // max_i ||x_{i,t+1}||
  std::uint64_t oracle_calls_total = 0;  // network-wide, after this round
  std::uint64_t comm_rounds_total = 0;   // per agent, after this round
};

/// One row of the trace CSV, describing the state after `t` completed rounds.
struct MetricRow {
  std::size_t t = 0;
  std::uint64_t oracle_calls_total = 0;
  std::uint64_t comm_rounds_total = 0;
  double f_xbar = 0.0;
  double f_xtilde = 0.0;
  double consensus_error = 0.0;
  double rbar_mean = 0.0;
  double G_max = 0.0;
  double eta_mean = 0.0;
  double mu_mean = 0.0;
};

struct TraceOptions {
  std::size_t metric_stride = 1;     // CSV row every this many rounds (the last round always)
  std::size_t iterate_stride = 0;    // per-agent iterate snapshots; 0 disables
  bool record_agents = true;
  bool check_invariants = true;      // count ||g|| > L d + 1e-6 events
};

struct RunTrace {
  std::string algorithm;
  std::uint64_t seed = 0;
  std::uint64_t context_fingerprint = 0;
  std::vector<RoundRecord> rounds;
  std::vector<MetricRow> rows;
  WeightedOutputAccumulator output;
  Matrix final_iterates;
  std::vector<std::pair<std::size_t, Matrix>> iterate_snapshots;
  std::vector<std::uint64_t> agent_oracle_calls;
  std::vector<std::uint64_t> agent_comm_rounds;
  std::size_t gradient_bound_violations = 0;
  double final_f_xbar = 0.0;
};

/// Builds a RunTrace round by round from the simulator's global view.
class TraceRecorder {
 public:
  TraceRecorder(const ObjectiveSet& objectives, std::size_t horizon, TraceOptions options);

  /// `before` holds x_t, `after` holds x_{t+1}; `weight` is this round's output weight.
  void record(RoundRecord round, double weight, const Matrix& before, const Matrix& after);

  const TraceOptions& options() const { return options_; }
  RunTrace finish(RunTrace header, Matrix final_iterates);

 private:
  const ObjectiveSet& objectives_;
  std::size_t horizon_;
  TraceOptions options_;
  RunTrace trace_;
};

/// f(x~_t) - f_star for every CSV row.
std::vector<double> gap_vs_reference(const RunTrace& trace, double f_star);

}  // namespace dpoem
