#include "dpoem/reference.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpoem {

ReferenceSolution reference_minimum(const ObjectiveSet& objectives, const FeasibleBall& ball,
                                    std::size_t iterations) {
  if (objectives.empty()) throw std::invalid_argument("reference_minimum: no objectives");
  if (iterations == 0) throw std::invalid_argument("reference_minimum: need at least one iteration");
  const auto d = static_cast<Eigen::Index>(objectives.front()->dimension());
  double lipschitz = 0.0;
  for (const auto& obj : objectives) lipschitz = std::max(lipschitz, obj->lipschitz_bound());
  if (lipschitz == 0.0) lipschitz = 1.0;

  Vector x = Vector::Zero(d);
  Vector avg = Vector::Zero(d);
  const double n = static_cast<double>(objectives.size());
  for (std::size_t k = 0; k < iterations; ++k) {
    Vector g = Vector::Zero(d);
    for (const auto& obj : objectives) g += obj->mean_subgradient(x);
    g /= n;
    const double step = ball.diameter() / (lipschitz * std::sqrt(static_cast<double>(k + 1)));
    x = project_ball(x - step * g, ball);
    avg += (x - avg) / static_cast<double>(k + 1);
  }

  ReferenceSolution out;
  out.iterations = iterations;
  const double f_avg = full_objective(objectives, avg);
  const double f_last = full_objective(objectives, x);
  if (f_avg <= f_last) {
    out.f_star = f_avg;
    out.x = avg;
  } else {
    out.f_star = f_last;
    out.x = x;
  }
  return out;
}

}  // namespace dpoem
