#include "dpoem/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace dpoem {

Direction::Direction(Vector v) : v_(std::move(v)) {
  if (v_.size() == 0 || std::abs(v_.norm() - 1.0) > 1e-10)
    throw std::invalid_argument("Direction: vector is not unit length");
}

Direction sample_sphere(std::size_t d, Rng& rng) {
  if (d == 0) throw std::invalid_argument("sample_sphere: dimension must be positive");
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector v(static_cast<Eigen::Index>(d));
  for (;;) {
    for (Eigen::Index k = 0; k < v.size(); ++k) v[k] = normal(rng);
    const double norm = v.norm();
    if (norm > 0.0 && std::isfinite(norm)) return Direction(v / norm);
  }
}

GradientEstimate estimate_gradient(const StochasticObjective& obj, const Vector& x, double mu,
                                   const Direction& v, const SampleToken& xi) {
  if (v.dimension() != static_cast<std::size_t>(x.size()))
    throw std::invalid_argument("estimate_gradient: direction dimension mismatch");
  const auto [plus, minus] = two_point(obj, x, mu, v.vector(), xi);
  const double d = static_cast<double>(x.size());
  GradientEstimate est;
  est.scale = d / (2.0 * mu) * (plus - minus);
  est.g = est.scale * v.vector();
  est.oracle_calls = 2;
  return est;
}

GradientEstimate estimate_gradient(const StochasticObjective& obj, const Vector& x, double mu,
                                   Rng& rng) {
  if (!(mu > 0.0)) throw std::invalid_argument("estimate_gradient: mu must be positive");
  const SampleToken xi = obj.sample(rng);
  const Direction v = sample_sphere(static_cast<std::size_t>(x.size()), rng);
  return estimate_gradient(obj, x, mu, v, xi);
}

}  // namespace dpoem
