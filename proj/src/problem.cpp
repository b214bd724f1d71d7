#include "dpoem/problem.hpp"

#include <stdexcept>
#include <string>

namespace dpoem {

Vector project_ball(const Vector& y, const FeasibleBall& ball) {
  const double norm = y.norm();
  if (norm <= ball.radius) return y;
  return (ball.radius / norm) * y;
}

void Problem::validate() const {
  if (objectives.empty()) throw std::invalid_argument("problem has no agents");
  if (mixing.size() != objectives.size())
    throw std::invalid_argument("mixing matrix is " + std::to_string(mixing.size()) +
                                "x" + std::to_string(mixing.size()) + " but there are " +
                                std::to_string(objectives.size()) + " agents");
  if (!(ball.radius > 0.0)) throw std::invalid_argument("ball radius must be positive");
  for (const auto& obj : objectives) {
    if (!obj) throw std::invalid_argument("null objective");
    if (obj->dimension() != dimension())
      throw std::invalid_argument("objective dimension " + std::to_string(obj->dimension()) +
                                  " does not match x0 dimension " + std::to_string(dimension()));
  }
  if (x0.norm() > ball.radius * (1.0 + 1e-12)) throw std::invalid_argument("x0 lies outside the feasible ball");
}

std::uint64_t Problem::fingerprint() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix_bytes = [&h](const void* data, std::size_t bytes) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < bytes; ++i) {
      h ^= p[i];
      h *= 0x100000001b3ULL;
    }
  };
  const auto& w = mixing.weights();
  mix_bytes(w.data(), sizeof(double) * static_cast<std::size_t>(w.size()));
  mix_bytes(x0.data(), sizeof(double) * static_cast<std::size_t>(x0.size()));
  mix_bytes(&ball.radius, sizeof ball.radius);
  return h;
}

}  // namespace dpoem
