#include <doctest.h>

#include <cmath>

#include "dpoem/algorithm.hpp"
#include "dpoem/estimator.hpp"
#include "centralized.hpp"

using namespace dpoem;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double x : values) v[k++] = x;
  return v;
}

Problem distance_problem(std::size_t n, std::size_t d, const MixingMatrix& w, double noise,
                         std::uint64_t seed, double spread = 0.0) {
  Rng rng(seed);
  std::normal_distribution<double> normal;
  Vector center(static_cast<Eigen::Index>(d));
  for (Eigen::Index k = 0; k < center.size(); ++k) center[k] = normal(rng);
  center *= 0.5 / center.norm();
  Problem p;
  for (std::size_t i = 0; i < n; ++i) {
    Vector c = center;
    for (Eigen::Index k = 0; k < c.size(); ++k) c[k] += spread * normal(rng);
    p.objectives.push_back(std::make_shared<SyntheticObjective>(SyntheticObjective::distance(c, noise)));
  }
  p.mixing = w;
  p.ball = FeasibleBall{1.0};
  p.x0 = Vector::Zero(static_cast<Eigen::Index>(d));
  return p;
}

}  // namespace

TEST_CASE("radius proxy") {
  AgentState s;
  s.x0 = Vector::Zero(2);
  s.r_bar_prev = 0.1;
  s.x = vec({0.03, 0.04});
  CHECK(radius_proxy(s) == 0.1);
  s.x = vec({0.42, 0.56});
  CHECK(radius_proxy(s) == doctest::Approx(0.7));
  s.x = s.x0;
  CHECK(radius_proxy(s) == 0.1);
}

TEST_CASE("smoothing radius") {
  CHECK(smoothing_radius(0.1, 4, 0) == doctest::Approx(0.2));
  CHECK(smoothing_radius(0.1, 4, 3) == doctest::Approx(0.1));
  double prev = smoothing_radius(0.1, 1, 0);
  for (std::size_t t = 1; t < 1000; ++t) {
    const double mu = smoothing_radius(0.1, 1, t);
    CHECK(mu < prev);
    prev = mu;
  }
}

TEST_CASE("stepsize") {
  CHECK(stepsize(0.1, 0.04) == doctest::Approx(0.5));
  CHECK(stepsize(0.1, 0.01) == doctest::Approx(1.0));
  CHECK(stepsize(0.3, 0.18) == doctest::Approx(stepsize(0.3, 0.09) / std::sqrt(2.0)));
}

TEST_CASE("ball projection") {
  const FeasibleBall ball{1.0};
  const Vector p = project_ball(vec({3, 4}), ball);
  CHECK(p[0] == doctest::Approx(0.6));
  CHECK(p[1] == doctest::Approx(0.8));
  CHECK(project_ball(vec({0.3, 0}), ball) == vec({0.3, 0}));
  CHECK(project_ball(Vector::Zero(2), ball).norm() == 0.0);
  CHECK(ball.diameter() == 2.0);
}

TEST_CASE("zero objective is a fixed point") {
  Problem p;
  for (int i = 0; i < 4; ++i)
    p.objectives.push_back(std::make_shared<SyntheticObjective>(SyntheticObjective::linear(Vector::Zero(3))));
  p.mixing = MixingMatrix::metropolis(Graph::path(4));
  p.x0 = vec({0.1, -0.2, 0.3});
  const RunTrace tr = run_dpoem(p, {0.1, 50, 3});
  for (Eigen::Index i = 0; i < 4; ++i) CHECK((tr.final_iterates.row(i).transpose() - p.x0).norm() == 0.0);
  for (const auto& round : tr.rounds) {
    for (const auto& a : round.agents) {
      CHECK(a.g_norm == 0.0);
      CHECK(a.r_bar == doctest::Approx(0.1).epsilon(1e-14));
      CHECK(a.G == doctest::Approx(0.01).epsilon(1e-14));
      CHECK(a.eta == doctest::Approx(1.0).epsilon(1e-13));
    }
  }
  for (double gap : gap_vs_reference(tr, full_objective(p.objectives, p.x0))) CHECK(gap == 0.0);
}

TEST_CASE("single agent matches a centralized implementation step for step") {
  Problem p = distance_problem(1, 6, MixingMatrix{}, 0.2, 1);
  const auto ref = oracle::centralized_reference(*p.objectives[0], p.x0, 1.0, 0.1, 500, 77);
  const RunTrace tr = run_dpoem(p, {0.1, 500, 77}, {1, 1, true, true});
  REQUIRE(tr.iterate_snapshots.size() == 500);
  for (std::size_t t = 0; t < 500; ++t) {
    const Vector x = tr.iterate_snapshots[t].second.row(0).transpose();
    CHECK((x - ref[t].x).cwiseAbs().maxCoeff() <= 1e-12);
    CHECK(std::abs(tr.rounds[t].agents[0].r_bar - ref[t].r_bar) <= 1e-12);
    CHECK(std::abs(tr.rounds[t].agents[0].G - ref[t].G) <= 1e-12 * ref[t].G);
  }
}

TEST_CASE("algorithm laws on a networked run") {
  const MixingMatrix w = MixingMatrix::metropolis(erdos_renyi(10, 0.3, 4));
  const Problem p = distance_problem(10, 5, w, 0.1, 2, 0.2);
  const double r_eps = 0.05, D = 2.0;
  const std::size_t T = 400;
  const RunTrace tr = run_dpoem(p, {r_eps, T, 9});

  REQUIRE(tr.rounds.size() == T);
  double prev_mean = 0.0;
  std::vector<double> prev_G(10, r_eps * r_eps);
  for (const auto& round : tr.rounds) {
    CHECK(round.rbar_mean >= prev_mean * (1 - 1e-12));
    prev_mean = round.rbar_mean;
    CHECK(round.max_norm_after <= 1.0 + 1e-12);
    for (std::size_t i = 0; i < 10; ++i) {
      const auto& a = round.agents[i];
      CHECK(a.r_bar >= r_eps * (1 - 1e-12));
      CHECK(a.r_bar <= D * (1 + 1e-12));
      CHECK(a.G >= prev_G[i]);
      if (a.g_norm > 0) CHECK(a.G > prev_G[i]);
      prev_G[i] = a.G;
      CHECK(a.eta <= D / r_eps);
    }
  }
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(tr.agent_oracle_calls[i] == 2 * T);
    CHECK(tr.agent_comm_rounds[i] == 2 * T);
  }
  for (std::size_t t = 0; t < T; ++t) {
    CHECK(tr.rounds[t].oracle_calls_total == 2 * 10 * (t + 1));
    CHECK(tr.rounds[t].comm_rounds_total == 2 * (t + 1));
  }
  CHECK(tr.gradient_bound_violations == 0);
  CHECK(poem_bound_check(tr.output.history(), D, r_eps).pass);
}

TEST_CASE("identical config and seed give bit-identical traces") {
  const MixingMatrix w = MixingMatrix::metropolis(erdos_renyi(6, 0.5, 1));
  const Problem p = distance_problem(6, 4, w, 0.3, 5);
  const RunTrace a = run_dpoem(p, {0.1, 200, 42}, {7, 0, true, true});
  const RunTrace b = run_dpoem(p, {0.1, 200, 42}, {7, 0, true, true});
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t k = 0; k < a.rows.size(); ++k) {
    CHECK(a.rows[k].f_xbar == b.rows[k].f_xbar);
    CHECK(a.rows[k].f_xtilde == b.rows[k].f_xtilde);
    CHECK(a.rows[k].consensus_error == b.rows[k].consensus_error);
  }
  CHECK(a.final_iterates == b.final_iterates);
  const RunTrace c = run_dpoem(p, {0.1, 200, 43}, {7, 0, true, true});
  CHECK(c.final_iterates != a.final_iterates);
}

TEST_CASE("metric rows follow the stride and always include the last round") {
  const Problem p = distance_problem(3, 2, MixingMatrix::metropolis(Graph::path(3)), 0.0, 3);
  const RunTrace tr = run_dpoem(p, {0.1, 23, 1}, {5, 0, false, true});
  std::vector<std::size_t> ts;
  for (const auto& row : tr.rows) ts.push_back(row.t);
  CHECK(ts == std::vector<std::size_t>{5, 10, 15, 20, 23});
  CHECK(tr.rounds.front().agents.empty());
  CHECK(tr.rows.back().oracle_calls_total == 2 * 3 * 23);
  CHECK(tr.rows.back().comm_rounds_total == 2 * 23);
}

TEST_CASE("distance objective gap equals the distance of the weighted output to the center") {
  const Problem p = distance_problem(4, 3, MixingMatrix::metropolis(Graph::ring(4)), 0.0, 8);
  const auto* obj = dynamic_cast<const SyntheticObjective*>(p.objectives[0].get());
  const RunTrace tr = run_dpoem(p, {0.1, 60, 2}, {1, 0, false, true});
  const auto gaps = gap_vs_reference(tr, 0.0);
  for (std::size_t k = 0; k < gaps.size(); ++k)
    CHECK(gaps[k] == doctest::Approx((tr.output.at(tr.rows[k].t) - obj->vector()).norm()).epsilon(1e-12));
}

TEST_CASE("run_dpoem rejects bad configurations") {
  Problem p = distance_problem(2, 3, MixingMatrix::metropolis(Graph::path(2)), 0.0, 1);
  CHECK_THROWS_AS(run_dpoem(p, {2.5, 10, 0}), std::invalid_argument);
  CHECK_THROWS_AS(run_dpoem(p, {0.0, 10, 0}), std::invalid_argument);
  CHECK_THROWS_AS(run_dpoem(p, {0.1, 0, 0}), std::invalid_argument);
  p.x0 = Vector::Zero(4);
  CHECK_THROWS_AS(run_dpoem(p, {0.1, 10, 0}), std::invalid_argument);
  p.x0 = Vector::Constant(3, 1.0);
  CHECK_THROWS_AS(run_dpoem(p, {0.1, 10, 0}), std::invalid_argument);
  p.x0 = Vector::Zero(3);
  p.mixing = MixingMatrix::metropolis(Graph::path(3));
  CHECK_THROWS_AS(run_dpoem(p, {0.1, 10, 0}), std::invalid_argument);
}
