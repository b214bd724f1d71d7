#pragma once

#include <cstdint>

#include "dpoem/network.hpp"
#include "dpoem/oracle.hpp"
#include "dpoem/types.hpp"

namespace dpoem {

/// Euclidean ball of the given radius centered at the origin.
struct FeasibleBall {
  double radius = 1.0;

  double diameter() const { return 2.0 * radius; }
};

/// Euclidean projection onto the ball.
Vector project_ball(const Vector& y, const FeasibleBall& ball);

/// Everything the algorithms share in one comparison: objectives, weights,
/// constraint set and common starting point.
struct Problem {
  ObjectiveSet objectives;
  MixingMatrix mixing;
  FeasibleBall ball;
  Vector x0;

  std::size_t agents() const { return objectives.size(); }
  std::size_t dimension() const { return static_cast<std::size_t>(x0.size()); }

  /// Throws std::invalid_argument on inconsistent sizes or an infeasible x0.
  void validate() const;
  /// Hash of (W, x0, radius); identical for every algorithm run on this problem.
  std::uint64_t fingerprint() const;
};

}  // namespace dpoem
