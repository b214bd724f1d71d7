#include "dpoem/metrics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace dpoem {

Vector network_average(const Matrix& x) {
  return x.colwise().mean().transpose();
}

double consensus_error(const Matrix& x) {
  if (x.rows() == 0) return 0.0;
  const Eigen::RowVectorXd mean = x.colwise().mean();
  return (x.rowwise() - mean).norm();
}

WeightedOutputAccumulator::WeightedOutputAccumulator(std::size_t d)
    : sum_(Vector::Zero(static_cast<Eigen::Index>(d))) {}

void WeightedOutputAccumulator::add(double weight, const Vector& xbar) {
  if (!(weight > 0.0)) throw std::invalid_argument("output weight must be positive");
  if (sum_.size() != xbar.size()) throw std::invalid_argument("output accumulator dimension mismatch");
  total_ += weight;
  sum_ += weight * xbar;
  history_.push_back({total_, weight});
  sums_.push_back(sum_);
}

Vector WeightedOutputAccumulator::current() const {
  return at(size());
}

Vector WeightedOutputAccumulator::at(std::size_t t) const {
  if (t == 0 || t > size()) throw std::out_of_range("weighted output index out of range");
  return sums_[t - 1] / history_[t - 1].total_weight;
}

std::size_t select_output_time(std::span<const OutputPoint> history) {
  if (history.empty()) throw std::invalid_argument("select_output: empty history");
  std::size_t best = 0;
  double best_ratio = history[0].total_weight / history[0].last_weight;
  for (std::size_t k = 1; k < history.size(); ++k) {
    const double ratio = history[k].total_weight / history[k].last_weight;
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = k;
    }
  }
  return best + 1;
}

OutputSelection select_output(const WeightedOutputAccumulator& acc, std::size_t horizon) {
  const std::size_t T = horizon == 0 ? acc.size() : horizon;
  if (T == 0 || T > acc.size()) throw std::invalid_argument("select_output: horizon out of range");
  const auto history = std::span<const OutputPoint>(acc.history()).first(T);
  OutputSelection out;
  out.tau = select_output_time(history);
  out.x_out = acc.at(out.tau);
  return out;
}

BoundCheck poem_bound_check(std::span<const OutputPoint> history, double diameter, double r_eps) {
  if (!(r_eps > 0.0) || r_eps > diameter) throw std::invalid_argument("poem_bound_check: r_eps out of range");
  const std::size_t tau = select_output_time(history);
  BoundCheck check;
  check.lhs = history[tau - 1].total_weight / history[tau - 1].last_weight;
  check.rhs = static_cast<double>(history.size()) /
              (std::numbers::e * (1.0 + std::log(diameter / r_eps)));
  check.margin = check.lhs / check.rhs;
  check.pass = check.lhs >= check.rhs;
  return check;
}

TraceRecorder::TraceRecorder(const ObjectiveSet& objectives, std::size_t horizon, TraceOptions options)
    : objectives_(objectives), horizon_(horizon), options_(options) {
  if (options_.metric_stride == 0) throw std::invalid_argument("metric stride must be positive");
  const std::size_t d = objectives.empty() ? 0 : objectives.front()->dimension();
  trace_.output = WeightedOutputAccumulator(d);
  trace_.rounds.reserve(horizon);
}

void TraceRecorder::record(RoundRecord round, double weight, const Matrix& before, const Matrix& after) {
  round.xbar = network_average(before);
  round.consensus_error = consensus_error(before);
  round.max_norm_after = after.rowwise().norm().maxCoeff();
  trace_.output.add(weight, round.xbar);

  const std::size_t completed = round.t + 1;
  if (completed % options_.metric_stride == 0 || completed == horizon_) {
    MetricRow row;
    row.t = completed;
    row.oracle_calls_total = round.oracle_calls_total;
    row.comm_rounds_total = round.comm_rounds_total;
    row.f_xbar = full_objective(objectives_, network_average(after));
    row.f_xtilde = full_objective(objectives_, trace_.output.current());
    row.consensus_error = consensus_error(after);
    row.rbar_mean = round.rbar_mean;
    row.G_max = round.G_max;
    row.eta_mean = round.eta_mean;
    row.mu_mean = round.mu_mean;
    trace_.rows.push_back(row);
  }
  if (options_.iterate_stride > 0 && completed % options_.iterate_stride == 0)
    trace_.iterate_snapshots.emplace_back(completed, after);
  trace_.rounds.push_back(std::move(round));
}

RunTrace TraceRecorder::finish(RunTrace header, Matrix final_iterates) {
  trace_.algorithm = std::move(header.algorithm);
  trace_.seed = header.seed;
  trace_.context_fingerprint = header.context_fingerprint;
  trace_.agent_oracle_calls = std::move(header.agent_oracle_calls);
  trace_.agent_comm_rounds = std::move(header.agent_comm_rounds);
  trace_.gradient_bound_violations = header.gradient_bound_violations;
  trace_.final_f_xbar = full_objective(objectives_, network_average(final_iterates));
  trace_.final_iterates = std::move(final_iterates);
  return std::move(trace_);
}

std::vector<double> gap_vs_reference(const RunTrace& trace, double f_star) {
  std::vector<double> gaps;
  gaps.reserve(trace.rows.size());
  for (const auto& row : trace.rows) gaps.push_back(row.f_xtilde - f_star);
  return gaps;
}

}  // namespace dpoem
