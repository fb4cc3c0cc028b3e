#pragma once

#include "genturan/graph.hpp"
#include "genturan/rational.hpp"

#include <utility>
#include <vector>

namespace genturan {

/// Weight function on the pairs of {0..n-1} with values in [0,1].
/// Pairs of weight zero are non-edges; the positive pairs form the support graph.
class WeightedGraph {
 public:
  WeightedGraph() = default;
  explicit WeightedGraph(std::size_t n) : support_(n) {}

  WeightedGraph(std::size_t n, std::vector<std::pair<Edge, Rational>> entries) {
    std::vector<std::pair<Edge, Rational>> positive;
    for (auto& [e, w] : entries) {
      if (w < 0 || w > 1) throw std::invalid_argument("weight outside [0,1]: " + to_string(w));
      if (e.u == e.v) throw std::invalid_argument("self-loop in weighted graph");
      if (w > 0) positive.emplace_back(Edge::of(e.u, e.v), w);
    }
    std::sort(positive.begin(), positive.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < positive.size(); ++i)
      if (positive[i].first == positive[i - 1].first) throw std::invalid_argument("pair weighted twice");
    std::vector<Edge> edges;
    edges.reserve(positive.size());
    for (const auto& entry : positive) {
      edges.push_back(entry.first);
      weights_.push_back(entry.second);
    }
    support_ = Graph(n, std::move(edges));
  }

  /// Every edge of g at weight 1.
  static WeightedGraph indicator(const Graph& g) {
    std::vector<std::pair<Edge, Rational>> entries;
    for (const auto& e : g.edges()) entries.emplace_back(e, Rational(1));
    return WeightedGraph(g.order(), std::move(entries));
  }

  /// Every edge of g at the same weight.
  static WeightedGraph uniform(const Graph& g, const Rational& w) {
    std::vector<std::pair<Edge, Rational>> entries;
    for (const auto& e : g.edges()) entries.emplace_back(e, w);
    return WeightedGraph(g.order(), std::move(entries));
  }

  std::size_t order() const { return support_.order(); }
  const Graph& support() const { return support_; }

  /// Weight of the index-th support edge.
  const Rational& weight_at(std::size_t index) const { return weights_[index]; }

  Rational weight(Vertex u, Vertex v) const {
    auto index = support_.edge_index(u, v);
    return index ? weights_[*index] : Rational(0);
  }

  /// Conventional subgraph keeping the support edges whose flag is set.
  WeightedGraph restrict_to(const std::vector<bool>& keep) const {
    std::vector<std::pair<Edge, Rational>> entries;
    for (std::size_t i = 0; i < weights_.size(); ++i)
      if (keep[i]) entries.emplace_back(support_.edges()[i], weights_[i]);
    return WeightedGraph(order(), std::move(entries));
  }

  /// Every pair either keeps the weight it has in `host` or is zero.
  bool is_conventional_subgraph_of(const WeightedGraph& host) const {
    if (order() != host.order()) return false;
    for (std::size_t i = 0; i < weights_.size(); ++i) {
      const Edge& e = support_.edges()[i];
      if (host.weight(e.u, e.v) != weights_[i]) return false;
    }
    return true;
  }

  friend bool operator==(const WeightedGraph& a, const WeightedGraph& b) {
    return a.support_ == b.support_ && a.weights_ == b.weights_;
  }

 private:
  Graph support_;
  std::vector<Rational> weights_;
};

}  // namespace genturan
