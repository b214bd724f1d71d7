#include "dpoem/network.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "dpoem/rng.hpp"

namespace dpoem {

Graph::Graph(std::size_t n) : adjacency_(n) {
  if (n == 0) throw std::invalid_argument("graph needs at least one node");
}

Graph Graph::path(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

Graph Graph::ring(std::size_t n) {
  Graph g = path(n);
  if (n > 2) g.add_edge(n - 1, 0);
  return g;
}

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

void Graph::add_edge(std::size_t i, std::size_t j) {
  if (i >= size() || j >= size()) throw std::invalid_argument("edge endpoint out of range");
  if (i == j) throw std::invalid_argument("self-loop on node " + std::to_string(i));
  if (has_edge(i, j))
    throw std::invalid_argument("duplicate edge " + std::to_string(i) + "-" + std::to_string(j));
  adjacency_[i].push_back(j);
  adjacency_[j].push_back(i);
  edges_.emplace_back(std::min(i, j), std::max(i, j));
}

bool Graph::has_edge(std::size_t i, std::size_t j) const {
  const auto& a = adjacency_.at(i);
  return std::find(a.begin(), a.end(), j) != a.end();
}

bool Graph::connected() const {
  std::vector<char> seen(size(), 0);
  std::vector<std::size_t> stack{0};
  seen[0] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v : adjacency_[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == size();
}

void Graph::write_edge_list(std::ostream& out) const {
  for (const auto& [i, j] : edges_) out << i << ' ' << j << '\n';
}

Graph erdos_renyi(std::size_t n, double p, std::uint64_t seed, int max_attempts, int* attempts) {
  if (n < 2) throw std::invalid_argument("erdos_renyi needs n >= 2");
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in (0, 1]");
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    Rng rng = make_stream(seed, StreamTag::kGraph, static_cast<std::uint64_t>(attempt));
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (coin(rng)) g.add_edge(i, j);
    if (g.connected()) {
      if (attempts) *attempts = attempt + 1;
      return g;
    }
  }
  if (attempts) *attempts = max_attempts;
  throw GraphNeverConnected("graph never connected after " + std::to_string(max_attempts) +
                            " attempts (n=" + std::to_string(n) + ", p=" + std::to_string(p) + ")");
}

double spectral_gap(const Eigen::MatrixXd& weights) {
  const auto n = weights.rows();
  const Eigen::MatrixXd centered =
      weights - Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(n));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(centered, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

MixingMatrix::MixingMatrix() : MixingMatrix(Eigen::MatrixXd::Identity(1, 1)) {}

MixingMatrix::MixingMatrix(Eigen::MatrixXd w) : weights_(std::move(w)) {
  sigma_ = spectral_gap(weights_);
  // W = J leaves eigenvalues at roundoff level.
  if (sigma_ < 1e-14) sigma_ = 0.0;
}

MixingMatrix MixingMatrix::metropolis(const Graph& g) {
  if (!g.connected()) throw std::invalid_argument("metropolis_weights: graph is disconnected");
  const auto n = static_cast<Eigen::Index>(g.size());
  Eigen::MatrixXd w = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [i, j] : g.edges()) {
    const double wij = 1.0 / (1.0 + static_cast<double>(std::max(g.degree(i), g.degree(j))));
    w(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = wij;
    w(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = wij;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    double off = 0.0;
    for (Eigen::Index j = 0; j < n; ++j)
      if (j != i) off += w(i, j);
    w(i, i) = 1.0 - off;
  }
  return MixingMatrix(std::move(w));
}

MixingMatrix MixingMatrix::uniform(std::size_t n) {
  if (n == 0) throw std::invalid_argument("uniform mixing needs n >= 1");
  const auto m = static_cast<Eigen::Index>(n);
  return MixingMatrix(Eigen::MatrixXd::Constant(m, m, 1.0 / static_cast<double>(n)));
}

Matrix mix(const MixingMatrix& w, const Matrix& rows) {
  if (static_cast<std::size_t>(rows.rows()) != w.size())
    throw std::invalid_argument("mix: expected " + std::to_string(w.size()) + " rows, got " +
                                std::to_string(rows.rows()));
  if (rows.cols() < 1) throw std::invalid_argument("mix: need at least one column");
  return w.weights() * rows;
}

Vector mix(const MixingMatrix& w, const Vector& values) {
  if (static_cast<std::size_t>(values.size()) != w.size())
    throw std::invalid_argument("mix: expected " + std::to_string(w.size()) + " values, got " +
                                std::to_string(values.size()));
  return w.weights() * values;
}

}  // namespace dpoem
