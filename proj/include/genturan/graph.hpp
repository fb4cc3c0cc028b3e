#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace genturan {

using Vertex = std::uint32_t;

/// Number of copies, embeddings and similar non-negative tallies.
using Count = std::uint64_t;

/// Unordered vertex pair, normalized so that u < v.
struct Edge {
  Vertex u = 0;
  Vertex v = 0;

  static Edge of(Vertex a, Vertex b) { return a < b ? Edge{a, b} : Edge{b, a}; }
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Row-major adjacency bit matrix. Row u holds the neighbourhood of u.
class AdjacencyBits {
 public:
  AdjacencyBits() = default;
  explicit AdjacencyBits(std::size_t n) : n_(n), words_((n + 63) / 64), data_(n * ((n + 63) / 64), 0) {}

  std::size_t order() const { return n_; }
  std::size_t words() const { return words_; }

  bool test(Vertex u, Vertex v) const { return (data_[u * words_ + v / 64] >> (v % 64)) & 1u; }
  void set(Vertex u, Vertex v) {
    data_[u * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
    data_[v * words_ + u / 64] |= std::uint64_t{1} << (u % 64);
  }
  void reset(Vertex u, Vertex v) {
    data_[u * words_ + v / 64] &= ~(std::uint64_t{1} << (v % 64));
    data_[v * words_ + u / 64] &= ~(std::uint64_t{1} << (u % 64));
  }
  std::span<const std::uint64_t> row(Vertex u) const { return {data_.data() + u * words_, words_}; }

  /// Mask with the low n bits set, word by word.
  std::vector<std::uint64_t> full_mask() const {
    std::vector<std::uint64_t> mask(words_, ~std::uint64_t{0});
    if (n_ % 64 != 0 && words_ > 0) mask.back() = (std::uint64_t{1} << (n_ % 64)) - 1;
    return mask;
  }

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> data_;
};

/// Calls f(index) for each set bit in ascending order; stops early if f returns false.
template <class F>
bool for_each_bit(std::span<const std::uint64_t> words, F&& f) {
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t bits = words[w];
    while (bits != 0) {
      auto index = static_cast<Vertex>(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
      if (!f(index)) return false;
    }
  }
  return true;
}

inline std::size_t popcount(std::span<const std::uint64_t> words) {
  std::size_t total = 0;
  for (auto w : words) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

/// Simple undirected graph on vertices 0..n-1. Immutable once built.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : Graph(n, std::vector<Edge>{}) {}

  /// Throws std::invalid_argument on self-loops or out-of-range endpoints; duplicates are merged.
  Graph(std::size_t n, std::vector<Edge> edges) : n_(n), bits_(n), adj_(n) {
    for (auto& e : edges) {
      if (e.u == e.v) throw std::invalid_argument("self-loop at vertex " + std::to_string(e.u));
      if (e.u >= n || e.v >= n) throw std::invalid_argument("edge endpoint out of range");
      e = Edge::of(e.u, e.v);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    for (const auto& e : edges_) {
      bits_.set(e.u, e.v);
      adj_[e.u].push_back(e.v);
      adj_[e.v].push_back(e.u);
    }
    for (auto& list : adj_) std::sort(list.begin(), list.end());
  }

  std::size_t order() const { return n_; }
  std::size_t size() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const AdjacencyBits& bits() const { return bits_; }

  bool adjacent(Vertex u, Vertex v) const { return u < n_ && v < n_ && u != v && bits_.test(u, v); }
  std::span<const Vertex> neighbors(Vertex u) const { return adj_[u]; }
  std::size_t degree(Vertex u) const { return adj_[u].size(); }

  std::size_t max_degree() const {
    std::size_t best = 0;
    for (const auto& list : adj_) best = std::max(best, list.size());
    return best;
  }

  /// Position of the edge in edges(), if present.
  std::optional<std::size_t> edge_index(Vertex a, Vertex b) const {
    Edge e = Edge::of(a, b);
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  AdjacencyBits bits_;
  std::vector<std::vector<Vertex>> adj_;
};

/// Subgraph on the same vertex set keeping edges whose flag is set.
inline Graph edge_subgraph(const Graph& g, const std::vector<bool>& keep) {
  std::vector<Edge> kept;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (keep[i]) kept.push_back(g.edges()[i]);
  return Graph(g.order(), std::move(kept));
}

inline bool is_subgraph_of(const Graph& sub, const Graph& host) {
  if (sub.order() != host.order()) return false;
  return std::all_of(sub.edges().begin(), sub.edges().end(),
                     [&](const Edge& e) { return host.adjacent(e.u, e.v); });
}

/// |E(a) symmetric-difference E(b)| for graphs on the same vertex set.
inline std::size_t edit_distance(const Graph& a, const Graph& b) {
  if (a.order() != b.order()) throw std::invalid_argument("edit distance needs equal vertex counts");
  std::vector<Edge> diff;
  std::set_symmetric_difference(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(),
                                std::back_inserter(diff));
  return diff.size();
}

inline Graph graph_intersection(const Graph& a, const Graph& b) {
  if (a.order() != b.order()) throw std::invalid_argument("intersection needs equal vertex counts");
  std::vector<Edge> common;
  std::set_intersection(a.edges().begin(), a.edges().end(), b.edges().begin(), b.edges().end(),
                        std::back_inserter(common));
  return Graph(a.order(), std::move(common));
}

/// Disjoint union; vertices of b are shifted by a.order().
inline Graph disjoint_union(const Graph& a, const Graph& b) {
  std::vector<Edge> edges = a.edges();
  auto shift = static_cast<Vertex>(a.order());
  for (const auto& e : b.edges()) edges.push_back({e.u + shift, e.v + shift});
  return Graph(a.order() + b.order(), std::move(edges));
}

}  // namespace genturan
