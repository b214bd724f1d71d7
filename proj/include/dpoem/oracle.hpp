#pragma once

#include <memory>
#include <utility>
#include <vector>

#include "dpoem/data.hpp"
#include "dpoem/rng.hpp"
#include "dpoem/types.hpp"

namespace dpoem {

/// The random sample xi. Hinge objectives use `index` (a shard position);
/// synthetic objectives use `noise`.
struct SampleToken {
  std::size_t index = 0;
  double noise = 0.0;

  bool operator==(const SampleToken&) const = default;
};

/// Local stochastic objective F_i(x; xi). Evaluations with the same token use
/// identical randomness, so two-point differences are exact.
class StochasticObjective {
 public:
  virtual ~StochasticObjective() = default;

  virtual std::size_t dimension() const = 0;
  /// L such that x -> F(x; xi) is L-Lipschitz for every xi.
  virtual double lipschitz_bound() const = 0;
  virtual SampleToken sample(Rng& rng) const = 0;
  virtual double eval(const Vector& x, const SampleToken& xi) const = 0;

  /// Noiseless local objective f_i(x); used by observers, never by agents.
  virtual double mean_value(const Vector& x) const = 0;
  /// A subgradient of f_i at x (reference solver only).
  virtual Vector mean_subgradient(const Vector& x) const = 0;
};

using ObjectivePtr = std::shared_ptr<const StochasticObjective>;
using ObjectiveSet = std::vector<ObjectivePtr>;

/// max{0, 1 - b <a, x>} over one agent's shard of a shared dataset.
class HingeObjective final : public StochasticObjective {
 public:
  HingeObjective(std::shared_ptr<const Dataset> data, std::vector<std::size_t> shard);

  std::size_t dimension() const override { return data_->dim; }
  double lipschitz_bound() const override { return lipschitz_; }
  SampleToken sample(Rng& rng) const override;
  double eval(const Vector& x, const SampleToken& xi) const override;
  double mean_value(const Vector& x) const override;
  Vector mean_subgradient(const Vector& x) const override;

  std::size_t shard_size() const { return shard_.size(); }
  const Sample& shard_sample(std::size_t k) const { return data_->samples[shard_.at(k)]; }

 private:
  double loss(const Sample& s, const Vector& x) const;

  std::shared_ptr<const Dataset> data_;
  std::vector<std::size_t> shard_;
  double lipschitz_ = 0.0;
};

/// Test objectives with analytically known optima. Noise is uniform on
/// [-noise_amplitude, noise_amplitude] and enters additively, so it cancels
/// exactly in same-sample differences.
class SyntheticObjective final : public StochasticObjective {
 public:
  enum class Kind { kLinear, kDistance };

  /// F(x; xi) = <c, x> + noise, L = ||c||.
  static SyntheticObjective linear(Vector coefficient, double noise_amplitude = 0.0);
  /// F(x; xi) = ||x - center|| + noise, L = 1.
  static SyntheticObjective distance(Vector center, double noise_amplitude = 0.0);

  std::size_t dimension() const override { return static_cast<std::size_t>(vec_.size()); }
  double lipschitz_bound() const override;
  SampleToken sample(Rng& rng) const override;
  double eval(const Vector& x, const SampleToken& xi) const override;
  double mean_value(const Vector& x) const override;
  Vector mean_subgradient(const Vector& x) const override;

  Kind kind() const { return kind_; }
  const Vector& vector() const { return vec_; }
  double noise_amplitude() const { return noise_; }

 private:
  SyntheticObjective(Kind kind, Vector v, double noise);

  Kind kind_;
  Vector vec_;
  double noise_;
};

/// (F(x + mu v; xi), F(x - mu v; xi)) with one shared xi. Throws
/// std::invalid_argument if mu <= 0 or ||v|| differs from 1 by more than 1e-10.
std::pair<double, double> two_point(const StochasticObjective& obj, const Vector& x, double mu,
                                    const Vector& v, const SampleToken& xi);

/// f(x) = (1/n) sum_i f_i(x), exact.
double full_objective(const ObjectiveSet& objs, const Vector& x);

/// One HingeObjective per partition block, all sharing `data`.
ObjectiveSet make_hinge_objectives(std::shared_ptr<const Dataset> data, const Partition& part);

}  // namespace dpoem
