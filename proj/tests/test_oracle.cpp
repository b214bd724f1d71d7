#include <doctest.h>

#include <cmath>

#include "dpoem/oracle.hpp"

using namespace dpoem;

namespace {

std::shared_ptr<const Dataset> dataset(std::string_view text, std::size_t dim) {
  LibsvmOptions opts;
  opts.dim = dim;
  return std::make_shared<const Dataset>(parse_libsvm(text, opts));
}

Vector vec(std::initializer_list<double> values) {
  Vector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double x : values) v[k++] = x;
  return v;
}

Vector random_vector(Rng& rng, Eigen::Index d, double scale) {
  std::normal_distribution<double> normal(0.0, scale);
  Vector v(d);
  for (Eigen::Index k = 0; k < d; ++k) v[k] = normal(rng);
  return v;
}

}  // namespace

TEST_CASE("hinge sampling") {
  const auto data = dataset("+1 1:1\n-1 2:1\n+1 1:2\n-1 1:1 2:1\n+1 2:3\n", 2);
  SUBCASE("single-sample shard") {
    const HingeObjective obj(data, {3});
    Rng rng(1);
    for (int k = 0; k < 100; ++k) CHECK(obj.sample(rng).index == 0);
  }
  SUBCASE("uniform over the shard") {
    const HingeObjective obj(data, {0, 1, 2, 3, 4});
    Rng rng(2);
    const int draws = 100000;
    std::vector<int> counts(5, 0);
    for (int k = 0; k < draws; ++k) ++counts[obj.sample(rng).index];
    const double p = 0.2, sd = std::sqrt(p * (1 - p) / draws);
    for (int c : counts) CHECK(std::abs(c / double(draws) - p) <= 5 * sd);
  }
  SUBCASE("deterministic per stream state") {
    const HingeObjective obj(data, {0, 1, 2, 3, 4});
    Rng a(77), b(77);
    for (int k = 0; k < 50; ++k) CHECK(obj.sample(a) == obj.sample(b));
  }
  CHECK_THROWS_AS(HingeObjective(data, {}), std::invalid_argument);
  CHECK_THROWS_AS(HingeObjective(data, {9}), std::invalid_argument);
}

TEST_CASE("hinge two-point pair in the linear region") {
  const auto data = dataset("+1 1:2\n", 2);
  const HingeObjective obj(data, {0});
  const Vector x = Vector::Zero(2);
  const Vector v = vec({0.6, 0.8});
  const double mu = 0.1;
  const auto [plus, minus] = two_point(obj, x, mu, v, {0, 0.0});
  // b <a, v> = 1.2, so the values are 1 -/+ 0.12.
  CHECK(plus == doctest::Approx(0.88).epsilon(1e-14));
  CHECK(minus == doctest::Approx(1.12).epsilon(1e-14));
  CHECK(plus - minus == doctest::Approx(-2 * mu * 1.2).epsilon(1e-14));
}

TEST_CASE("linear two-point difference cancels the noise") {
  const auto obj = SyntheticObjective::linear(vec({2.0, -1.0, 0.5}), 0.3);
  Rng rng(4);
  const Vector x = vec({0.1, 0.2, -0.3});
  const Vector v = vec({0.0, 0.6, 0.8});
  const double mu = 0.25;
  for (int k = 0; k < 20; ++k) {
    const SampleToken xi = obj.sample(rng);
    CHECK(xi.noise != 0.0);
    const auto [plus, minus] = two_point(obj, x, mu, v, xi);
    CHECK(plus - minus == doctest::Approx(2 * mu * (-0.6 + 0.4)).epsilon(1e-12));
    const auto [p2, m2] = two_point(obj, x, mu, Vector(-v), xi);
    CHECK(p2 == minus);
    CHECK(m2 == plus);
    const auto again = two_point(obj, x, mu, v, xi);
    CHECK(again.first == plus);
    CHECK(again.second == minus);
  }
}

TEST_CASE("two_point argument checks") {
  const auto obj = SyntheticObjective::linear(vec({1.0, 0.0}));
  CHECK_THROWS_AS(two_point(obj, Vector::Zero(2), 0.0, vec({1, 0}), {}), std::invalid_argument);
  CHECK_THROWS_AS(two_point(obj, Vector::Zero(2), 0.1, vec({1, 1}), {}), std::invalid_argument);
}

TEST_CASE("full objective examples") {
  const auto data = dataset("+1 1:2\n-1 1:1 2:-1\n+1 2:0.5\n", 2);
  const ObjectiveSet hinge = make_hinge_objectives(data, partition_iid(*data, 2, 0));
  CHECK(full_objective(hinge, Vector::Zero(2)) == 1.0);

  const ObjectiveSet single{std::make_shared<HingeObjective>(dataset("+1 1:2\n", 2), std::vector<std::size_t>{0})};
  CHECK(full_objective(single, vec({1.0, 0.0})) == 0.0);

  const ObjectiveSet lin{std::make_shared<SyntheticObjective>(SyntheticObjective::linear(vec({3.0, 4.0}), 1.0))};
  CHECK(full_objective(lin, Vector::Zero(2)) == 0.0);
  CHECK_THROWS_AS(full_objective(lin, Vector::Zero(3)), std::invalid_argument);
}

TEST_CASE("full objective averages shard means across agents") {
  const auto data = dataset("+1 1:1\n+1 1:1\n-1 1:1\n", 1);
  Partition part;
  part.assignments = {{0, 1}, {2}};
  const ObjectiveSet objs = make_hinge_objectives(data, part);
  // x = 0.5: agent 0 has loss 0.5 on both samples, agent 1 has 1.5.
  CHECK(full_objective(objs, vec({0.5})) == doctest::Approx(0.5 * (0.5 + 1.5)));
}

TEST_CASE("convexity and Lipschitz spot-checks") {
  Rng rng(8);
  const auto data = dataset("+1 1:1 2:2 3:-1\n-1 1:0.5 3:2\n+1 2:-3\n-1 1:1 2:1 3:1\n", 3);
  const HingeObjective hinge(data, {0, 1, 2, 3});
  const auto dist = SyntheticObjective::distance(vec({0.2, -0.1, 0.4}), 0.05);
  const auto lin = SyntheticObjective::linear(vec({1.0, -2.0, 0.5}), 0.05);
  CHECK(hinge.lipschitz_bound() == doctest::Approx(max_feature_norm(*data)));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (const StochasticObjective* obj : {static_cast<const StochasticObjective*>(&hinge),
                                         static_cast<const StochasticObjective*>(&dist),
                                         static_cast<const StochasticObjective*>(&lin)}) {
    for (int trial = 0; trial < 500; ++trial) {
      const Vector x = random_vector(rng, 3, 1.5);
      const Vector y = random_vector(rng, 3, 1.5);
      const double lambda = unit(rng);
      const SampleToken xi = obj->sample(rng);
      const double mid = obj->eval(lambda * x + (1 - lambda) * y, xi);
      CHECK(mid <= lambda * obj->eval(x, xi) + (1 - lambda) * obj->eval(y, xi) + 1e-9);
      CHECK(std::abs(obj->eval(x, xi) - obj->eval(y, xi)) <= obj->lipschitz_bound() * (x - y).norm() + 1e-9);
    }
  }
}

TEST_CASE("mean subgradients") {
  const auto dist = SyntheticObjective::distance(vec({1.0, 0.0}));
  const Vector g = dist.mean_subgradient(vec({1.0, 2.0}));
  CHECK(g[0] == 0.0);
  CHECK(g[1] == 1.0);
  const auto data = dataset("+1 1:2\n", 2);
  const HingeObjective hinge(data, {0});
  CHECK(hinge.mean_subgradient(Vector::Zero(2))[0] == -2.0);
  CHECK(hinge.mean_subgradient(vec({1.0, 0.0})).norm() == 0.0);
}
