#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "dpoem/baselines.hpp"
#include "dpoem/estimator.hpp"
#include "dpoem/network.hpp"

using namespace dpoem;

namespace {

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double x : values) v[k++] = x;
  return v;
}

Problem linear_problem(std::vector<Vector> cs, const MixingMatrix& w, double radius = 1.0) {
  Problem p;
  for (auto& c : cs) p.objectives.push_back(std::make_shared<SyntheticObjective>(SyntheticObjective::linear(c)));
  p.mixing = w;
  p.ball = FeasibleBall{radius};
  p.x0 = Vector::Zero(static_cast<Eigen::Index>(p.objectives.front()->dimension()));
  return p;
}

Vector ball(Vector y, double radius) {
  const double n = y.norm();
  if (n > radius) y *= radius / n;
  return y;
}

}  // namespace

TEST_CASE("schedules") {
  const DsfConfig c{2.0, 0.5, 0.5, 1.0};
  CHECK(c.stepsize(0) == doctest::Approx(2.0));
  CHECK(c.stepsize(3) == doctest::Approx(1.0));
  CHECK(c.smoothing(0) == doctest::Approx(0.5));
  CHECK(c.smoothing(4) == doctest::Approx(0.1));
  CHECK_THROWS_AS((DsfConfig{0.0, 1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DsfConfig{1.0, -1.0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DsfConfig{1.0, 1.0, 1.5, 1.0}.validate()), std::invalid_argument);
}

TEST_CASE("default grid") {
  const auto grid = default_dsf_grid();
  CHECK(grid.size() == 16);
  CHECK(grid.front() == DsfConfig{0.01, 1e-3, 0.5, 1.0});
  CHECK(grid.back() == DsfConfig{10.0, 1.0, 0.5, 1.0});
}

TEST_CASE("zero objective leaves every agent at x0") {
  Problem p = linear_problem({Vector::Zero(2), Vector::Zero(2), Vector::Zero(2)},
                             MixingMatrix::metropolis(Graph::path(3)));
  p.x0 = vec({0.2, -0.1});
  const RunTrace tr = run_dsf(p, {}, 40, 1);
  for (Eigen::Index i = 0; i < 3; ++i) CHECK((tr.final_iterates.row(i).transpose() - p.x0).norm() == 0.0);
  CHECK(tr.algorithm == "dsf");
}

TEST_CASE("two agents replayed by hand for three rounds") {
  const Vector c0 = vec({1.0, -2.0, 0.5}), c1 = vec({-0.5, 1.0, 2.0});
  const Problem p = linear_problem({c0, c1}, MixingMatrix::uniform(2), 1.0);
  const DsfConfig cfg{0.3, 0.01, 0.5, 1.0};
  const std::uint64_t seed = 11;
  const RunTrace tr = run_dsf(p, cfg, 3, seed, {1, 1, true, true});

  std::vector<Rng> rngs = {make_stream(seed, StreamTag::kAgent, 0), make_stream(seed, StreamTag::kAgent, 1)};
  const std::vector<Vector> cs = {c0, c1};
  std::vector<Vector> x = {p.x0, p.x0};
  for (std::size_t t = 0; t < 3; ++t) {
    const Vector z = 0.5 * (x[0] + x[1]);
    const double eta = 0.3 / std::sqrt(t + 1.0);
    std::vector<Vector> next(2);
    for (std::size_t i = 0; i < 2; ++i) {
      (void)p.objectives[i]->sample(rngs[i]);
      const Vector v = sample_sphere(3, rngs[i]).vector();
      const Vector g = 3.0 * cs[i].dot(v) * v;
      next[i] = ball(z - eta * g, 1.0);
    }
    x = next;
    const Matrix& snap = tr.iterate_snapshots[t].second;
    for (std::size_t i = 0; i < 2; ++i)
      CHECK((snap.row(static_cast<Eigen::Index>(i)).transpose() - x[i]).cwiseAbs().maxCoeff() <= 1e-12);
  }
  CHECK(tr.rounds[2].mu_mean == doctest::Approx(0.01 / 3));
}

TEST_CASE("counters: two oracle calls and one communication round per iteration") {
  const Problem p = linear_problem({vec({1, 0}), vec({0, 1}), vec({1, 1}), vec({-1, 0})},
                                   MixingMatrix::metropolis(Graph::ring(4)));
  const RunTrace tr = run_dsf(p, {}, 25, 2);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(tr.agent_oracle_calls[i] == 50);
    CHECK(tr.agent_comm_rounds[i] == 25);
  }
  CHECK(tr.rows.back().oracle_calls_total == 200);
  CHECK(tr.rows.back().comm_rounds_total == 25);
  CHECK(tr.gradient_bound_violations == 0);
  for (const auto& r : tr.rounds) CHECK(r.max_norm_after <= 1.0 + 1e-12);
}

TEST_CASE("uniform output weights") {
  const Problem p = linear_problem({vec({1, 2})}, MixingMatrix{});
  const RunTrace tr = run_dsf(p, {}, 10, 3);
  for (std::size_t t = 0; t < 10; ++t) {
    CHECK(tr.output.history()[t].last_weight == 1.0);
    CHECK(tr.output.history()[t].total_weight == doctest::Approx(t + 1.0));
  }
  Vector mean = Vector::Zero(2);
  for (const auto& r : tr.rounds) mean += r.xbar;
  CHECK((tr.output.current() - mean / 10).norm() <= 1e-12);
}

TEST_CASE("tuning") {
  const Problem p = linear_problem({vec({1, 0.5}), vec({0.2, -1})}, MixingMatrix::metropolis(Graph::path(2)));

  SUBCASE("single entry") {
    const std::vector<DsfConfig> grid = {{0.1, 0.01}};
    const auto res = tune_dsf(p, grid, 20, 1);
    CHECK(res.best == grid[0]);
    CHECK(res.objectives.size() == 1);
  }
  SUBCASE("objectives match standalone runs and the best is the minimum") {
    std::vector<DsfConfig> grid;
    for (double e : {0.01, 0.1, 1.0})
      for (double m : {1e-3, 1e-2, 0.1}) grid.push_back({e, m});
    const auto res = tune_dsf(p, grid, 30, 4);
    REQUIRE(res.objectives.size() == 9);
    for (std::size_t k = 0; k < 9; ++k)
      CHECK(res.objectives[k] == run_dsf(p, grid[k], 30, 4).final_f_xbar);
    CHECK(res.best_objective == *std::min_element(res.objectives.begin(), res.objectives.end()));
  }
  SUBCASE("ties prefer smaller eta0, then smaller mu0, then the earlier entry") {
    const Problem zero = linear_problem({Vector::Zero(2), Vector::Zero(2)}, MixingMatrix::uniform(2));
    const std::vector<DsfConfig> grid = {{1.0, 0.1}, {0.1, 1.0}, {0.1, 0.01}, {0.1, 0.01}};
    const auto res = tune_dsf(zero, grid, 5, 1);
    CHECK(res.best == DsfConfig{0.1, 0.01});
    const std::vector<DsfConfig> dup = {{0.5, 0.5}, {0.5, 0.5}};
    CHECK(tune_dsf(zero, dup, 5, 1).best == dup[0]);
  }
  CHECK_THROWS_AS(tune_dsf(p, std::vector<DsfConfig>{}, 5, 1), std::invalid_argument);
}
