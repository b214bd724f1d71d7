#pragma once

#include "dpoem/oracle.hpp"
#include "dpoem/problem.hpp"

namespace dpoem {

struct ReferenceSolution {
  double f_star = 0.0;  // best of f(averaged iterate) and f(last iterate)
  Vector x;
  std::size_t iterations = 0;
};

/// Deterministic full-batch projected subgradient with iterate averaging,
/// step D / (L sqrt(k+1)). The result upper-bounds the true minimum; it is
/// the reference used for gap curves on dataset problems.
ReferenceSolution reference_minimum(const ObjectiveSet& objectives, const FeasibleBall& ball,
                                    std::size_t iterations = 100000);

}  // namespace dpoem
