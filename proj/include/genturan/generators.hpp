#pragma once

#include "genturan/graph.hpp"

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace genturan {

/// G(n,p): each pair independently with probability p. Same seed, same graph.
inline Graph random_graph(std::size_t n, double p, std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability must lie in [0,1]");
  std::mt19937_64 rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) {
      double draw = static_cast<double>(rng() >> 11) * 0x1.0p-53;
      if (draw < p) edges.push_back({u, v});
    }
  return Graph(n, std::move(edges));
}

/// Groups of the given sizes, every pair in different groups joined.
inline Graph complete_multipartite(const std::vector<std::size_t>& sizes) {
  if (sizes.empty()) throw std::invalid_argument("complete_multipartite needs at least one part");
  std::vector<std::size_t> part;
  for (std::size_t i = 0; i < sizes.size(); ++i) part.insert(part.end(), sizes[i], i);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < part.size(); ++u)
    for (Vertex v = u + 1; v < part.size(); ++v)
      if (part[u] != part[v]) edges.push_back({u, v});
  return Graph(part.size(), std::move(edges));
}

/// h-blowup: vertex x becomes the independent set {x*h, ..., x*h + h-1}, edges become complete bipartite joins.
inline Graph blowup(const Graph& t, std::size_t h) {
  if (h < 1) throw std::invalid_argument("blow-up factor must be at least 1");
  std::vector<Edge> edges;
  for (const auto& e : t.edges())
    for (std::size_t i = 0; i < h; ++i)
      for (std::size_t j = 0; j < h; ++j)
        edges.push_back(Edge::of(static_cast<Vertex>(e.u * h + i), static_cast<Vertex>(e.v * h + j)));
  return Graph(t.order() * h, std::move(edges));
}

inline Graph complete_graph(std::size_t r) {
  if (r == 0) return Graph(0);
  return complete_multipartite(std::vector<std::size_t>(r, 1));
}

inline Graph cycle_graph(std::size_t r) {
  if (r < 3) throw std::invalid_argument("cycles need at least 3 vertices");
  std::vector<Edge> edges;
  for (Vertex i = 0; i < r; ++i) edges.push_back(Edge::of(i, static_cast<Vertex>((i + 1) % r)));
  return Graph(r, std::move(edges));
}

inline Graph path_graph(std::size_t r) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i + 1 < r; ++i) edges.push_back({i, i + 1});
  return Graph(r, std::move(edges));
}

/// K_{1,r}; vertex 0 is the centre.
inline Graph star_graph(std::size_t r) {
  std::vector<Edge> edges;
  for (Vertex i = 1; i <= r; ++i) edges.push_back({0, i});
  return Graph(r + 1, std::move(edges));
}

/// kK2: k disjoint edges {2i, 2i+1}.
inline Graph matching_graph(std::size_t k) {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < k; ++i) edges.push_back({2 * i, 2 * i + 1});
  return Graph(2 * k, std::move(edges));
}

inline Graph petersen_graph() {
  std::vector<Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.push_back(Edge::of(i, (i + 1) % 5));
    edges.push_back(Edge::of(i, i + 5));
    edges.push_back(Edge::of(i + 5, (i + 2) % 5 + 5));
  }
  return Graph(10, std::move(edges));
}

}  // namespace genturan
