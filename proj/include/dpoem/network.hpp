#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dpoem/types.hpp"

namespace dpoem {

/// Undirected simple graph on agents 0..n-1.
class Graph {
 public:
  using Edge = std::pair<std::size_t, std::size_t>;

  explicit Graph(std::size_t n);

  static Graph path(std::size_t n);
  static Graph ring(std::size_t n);
  static Graph complete(std::size_t n);

  /// Throws std::invalid_argument on self-loops, duplicates or out-of-range ends.
  void add_edge(std::size_t i, std::size_t j);

  std::size_t size() const { return adjacency_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  /// Edges stored as (min, max) in insertion order.
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return adjacency_.at(i); }
  std::size_t degree(std::size_t i) const { return adjacency_.at(i).size(); }
  bool has_edge(std::size_t i, std::size_t j) const;
  bool connected() const;

  /// One "i j" pair per line.
  void write_edge_list(std::ostream& out) const;

 private:
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<Edge> edges_;
};

class GraphNeverConnected : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// G(n, p) sample, redrawn with sub-seeds (seed, attempt) until connected.
/// `attempts`, when non-null, receives the number of draws used.
Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed, int max_attempts = 1000,
                  int* attempts = nullptr);

/// Largest absolute eigenvalue of W - (1/n) 11^T.
double spectral_gap(const Eigen::MatrixXd& weights);

/// Symmetric doubly stochastic weights supported on a graph, with the cached
/// contraction factor sigma = ||W - J||_2.
class MixingMatrix {
 public:
  /// The 1x1 identity (a single agent).
  MixingMatrix();

  /// Metropolis-Hastings weights W_ij = 1 / (1 + max(deg_i, deg_j)).
  static MixingMatrix metropolis(const Graph& g);
  /// W = J, exact averaging in one round.
  static MixingMatrix uniform(std::size_t n);

  std::size_t size() const { return static_cast<std::size_t>(weights_.rows()); }
  const Eigen::MatrixXd& weights() const { return weights_; }
  double operator()(std::size_t i, std::size_t j) const {
    return weights_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  }
  double sigma() const { return sigma_; }

 private:
  explicit MixingMatrix(Eigen::MatrixXd w);

  Eigen::MatrixXd weights_;
  double sigma_ = 0.0;
};

/// One gossip round: returns W * rows. Throws std::invalid_argument on a row-count mismatch.
Matrix mix(const MixingMatrix& w, const Matrix& rows);
Vector mix(const MixingMatrix& w, const Vector& values);

}  // namespace dpoem
