#pragma once

#include "dpoem/oracle.hpp"
#include "dpoem/rng.hpp"
#include "dpoem/types.hpp"

namespace dpoem {

/// A unit vector on S^{d-1}.
class Direction {
 public:
  /// Throws std::invalid_argument unless | ||v|| - 1 | <= 1e-10.
  explicit Direction(Vector v);

  const Vector& vector() const { return v_; }
  std::size_t dimension() const { return static_cast<std::size_t>(v_.size()); }
  Direction operator-() const { return Direction(-v_); }

 private:
  Vector v_;
};

/// Uniform on the unit sphere: normalized standard Gaussian, redrawn if the draw is zero.
Direction sample_sphere(std::size_t d, Rng& rng);

struct GradientEstimate {
  Vector g;
  /// (d / 2mu) * (F(x + mu v) - F(x - mu v)); g = scale * v.
  double scale = 0.0;
  int oracle_calls = 0;
};

/// Symmetric two-point estimate along a given direction and sample.
GradientEstimate estimate_gradient(const StochasticObjective& obj, const Vector& x, double mu,
                                   const Direction& v, const SampleToken& xi);

/// Draws xi, then v, from `rng` and forms the two-point estimate.
GradientEstimate estimate_gradient(const StochasticObjective& obj, const Vector& x, double mu,
                                   Rng& rng);

}  // namespace dpoem
