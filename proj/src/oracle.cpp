#include "dpoem/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace dpoem {

namespace {

double sparse_dot(const Sample& s, const Vector& x) {
  double acc = 0.0;
  for (const auto& f : s.features) acc += f.value * x[static_cast<Eigen::Index>(f.index)];
  return acc;
}

}  // namespace

HingeObjective::HingeObjective(std::shared_ptr<const Dataset> data, std::vector<std::size_t> shard)
    : data_(std::move(data)), shard_(std::move(shard)) {
  if (!data_) throw std::invalid_argument("HingeObjective: null dataset");
  if (shard_.empty()) throw std::invalid_argument("HingeObjective: empty shard");
  double best = 0.0;
  for (std::size_t k : shard_) {
    if (k >= data_->samples.size()) throw std::invalid_argument("HingeObjective: shard index out of range");
    best = std::max(best, data_->samples[k].squared_norm());
  }
  lipschitz_ = std::sqrt(best);
}

SampleToken HingeObjective::sample(Rng& rng) const {
  std::uniform_int_distribution<std::size_t> pick(0, shard_.size() - 1);
  return {pick(rng), 0.0};
}

double HingeObjective::loss(const Sample& s, const Vector& x) const {
  return std::max(0.0, 1.0 - static_cast<double>(s.label) * sparse_dot(s, x));
}

double HingeObjective::eval(const Vector& x, const SampleToken& xi) const {
  return loss(shard_sample(xi.index), x);
}

double HingeObjective::mean_value(const Vector& x) const {
  double acc = 0.0;
  for (std::size_t k : shard_) acc += loss(data_->samples[k], x);
  return acc / static_cast<double>(shard_.size());
}

Vector HingeObjective::mean_subgradient(const Vector& x) const {
  Vector g = Vector::Zero(x.size());
  for (std::size_t k : shard_) {
    const Sample& s = data_->samples[k];
    if (1.0 - s.label * sparse_dot(s, x) > 0.0)
      for (const auto& f : s.features) g[static_cast<Eigen::Index>(f.index)] -= s.label * f.value;
  }
  return g / static_cast<double>(shard_.size());
}

SyntheticObjective::SyntheticObjective(Kind kind, Vector v, double noise)
    : kind_(kind), vec_(std::move(v)), noise_(noise) {
  if (vec_.size() == 0) throw std::invalid_argument("SyntheticObjective: zero dimension");
  if (!(noise_ >= 0.0)) throw std::invalid_argument("SyntheticObjective: negative noise amplitude");
}

SyntheticObjective SyntheticObjective::linear(Vector coefficient, double noise_amplitude) {
  return SyntheticObjective(Kind::kLinear, std::move(coefficient), noise_amplitude);
}

SyntheticObjective SyntheticObjective::distance(Vector center, double noise_amplitude) {
  return SyntheticObjective(Kind::kDistance, std::move(center), noise_amplitude);
}

double SyntheticObjective::lipschitz_bound() const {
  return kind_ == Kind::kLinear ? vec_.norm() : 1.0;
}

SampleToken SyntheticObjective::sample(Rng& rng) const {
  if (noise_ == 0.0) return {};
  std::uniform_real_distribution<double> u(-noise_, noise_);
  return {0, u(rng)};
}

double SyntheticObjective::eval(const Vector& x, const SampleToken& xi) const {
  return mean_value(x) + xi.noise;
}

double SyntheticObjective::mean_value(const Vector& x) const {
  if (x.size() != vec_.size()) throw std::invalid_argument("SyntheticObjective: dimension mismatch");
  return kind_ == Kind::kLinear ? vec_.dot(x) : (x - vec_).norm();
}

Vector SyntheticObjective::mean_subgradient(const Vector& x) const {
  if (kind_ == Kind::kLinear) return vec_;
  const Vector diff = x - vec_;
  const double r = diff.norm();
  return r > 0.0 ? Vector(diff / r) : Vector(Vector::Zero(x.size()));
}

std::pair<double, double> two_point(const StochasticObjective& obj, const Vector& x, double mu,
                                    const Vector& v, const SampleToken& xi) {
  if (!(mu > 0.0)) throw std::invalid_argument("two_point: mu must be positive");
  if (std::abs(v.norm() - 1.0) > 1e-10) throw std::invalid_argument("two_point: direction is not unit length");
  const Vector plus = x + mu * v;
  const Vector minus = x - mu * v;
  return {obj.eval(plus, xi), obj.eval(minus, xi)};
}

double full_objective(const ObjectiveSet& objs, const Vector& x) {
  if (objs.empty()) throw std::invalid_argument("full_objective: no objectives");
  double acc = 0.0;
  for (const auto& obj : objs) {
    if (obj->dimension() != static_cast<std::size_t>(x.size()))
      throw std::invalid_argument("full_objective: dimension mismatch (" +
                                  std::to_string(obj->dimension()) + " vs " +
                                  std::to_string(x.size()) + ")");
    acc += obj->mean_value(x);
  }
  return acc / static_cast<double>(objs.size());
}

ObjectiveSet make_hinge_objectives(std::shared_ptr<const Dataset> data, const Partition& part) {
  ObjectiveSet objs;
  objs.reserve(part.agents());
  for (const auto& shard : part.assignments)
    objs.push_back(std::make_shared<HingeObjective>(data, shard));
  return objs;
}

}  // namespace dpoem
