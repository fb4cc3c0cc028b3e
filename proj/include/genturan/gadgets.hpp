#pragma once

#include "genturan/generators.hpp"
#include "genturan/graph.hpp"
#include "genturan/pattern.hpp"
#include "genturan/rational.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace genturan {

/// G+ : g plus r = k-3 independent sets U_1..U_r of size s, each joined completely to the
/// other U sets and to V(g). Inner vertices keep their indices 0..n-1.
struct NpGadget {
  Graph host;
  std::vector<Vertex> inner_vertices;
  std::vector<std::vector<Vertex>> u_sets;
  std::size_t m = 0;
  std::size_t k = 0;
  std::size_t s = 0;
  std::size_t r() const { return u_sets.size(); }
};

inline void check_np_params(std::size_t m, std::size_t k, std::size_t s) {
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  if (k < m + 2) throw std::invalid_argument("k must be at least m + 2");
  if (s < 1) throw std::invalid_argument("set size s must be at least 1");
}

inline NpGadget build_np_gadget(const Graph& g, std::size_t m, std::size_t k, std::size_t s) {
  check_np_params(m, k, s);
  const std::size_t n = g.order();
  const std::size_t r = k - 3;
  NpGadget gadget;
  gadget.m = m;
  gadget.k = k;
  gadget.s = s;
  for (Vertex v = 0; v < n; ++v) gadget.inner_vertices.push_back(v);
  Vertex next = static_cast<Vertex>(n);
  gadget.u_sets.resize(r);
  for (auto& u : gadget.u_sets)
    for (std::size_t i = 0; i < s; ++i) u.push_back(next++);

  std::vector<Edge> edges(g.edges());
  for (std::size_t i = 0; i < r; ++i)
    for (Vertex x : gadget.u_sets[i]) {
      for (Vertex v = 0; v < n; ++v) edges.push_back(Edge::of(x, v));
      for (std::size_t j = i + 1; j < r; ++j)
        for (Vertex y : gadget.u_sets[j]) edges.push_back(Edge::of(x, y));
    }
  gadget.host = Graph(next, std::move(edges));
  return gadget;
}

/// Copies of K_m through one missing inner edge that use exactly its two inner vertices:
/// C(r, m-2) * s^(m-2).
inline BigInt per_missing_edge_km_count(std::size_t m, std::size_t r, std::size_t s) {
  if (m < 2) throw std::invalid_argument("m must be at least 2");
  if (r + 2 < m) throw std::invalid_argument("r must be at least m - 2");
  BigInt power_s = 1;
  for (std::size_t i = 0; i + 2 < m; ++i) power_s *= s;
  return binomial(static_cast<long long>(r), static_cast<long long>(m - 2)) * power_s;
}

/// The case-analysis quantities with cn replaced by s. An outer bound is absent when its
/// binomial degenerates.
struct GadgetBounds {
  std::optional<Rational> outer1;  // outer edges missing inside the U sets
  std::optional<Rational> outer2;  // outer edges missing between the U sets and a cover
  Rational inner;                  // inner edges at a minimum K3 vertex cover
};

inline GadgetBounds gadget_bounds(const Graph& g, std::size_t m, std::size_t k, std::size_t s, std::size_t b) {
  check_np_params(m, k, s);
  const std::size_t n = g.order();
  if (n == 0) throw std::invalid_argument("gadget bounds need a nonempty graph");
  const long long r = static_cast<long long>(k - 3);
  const long long mm = static_cast<long long>(m);
  const Rational S(static_cast<long long>(s));
  const Rational N(static_cast<long long>(n));
  const Rational B(static_cast<long long>(b));
  GadgetBounds out;
  if (m >= 3 && r >= 2 && r - 2 >= mm - 3) {
    Rational pairs = Rational(binomial(mm - 1, 2));
    out.outer1 = (S / 2) * (S / 2) * Rational(binomial(r - 2, mm - 3)) * power(S, static_cast<unsigned>(m - 3)) * N / pairs;
  }
  if (r >= mm - 1)
    out.outer2 = B * (S / 2) * Rational(binomial(r - 1, mm - 2)) * power(S, static_cast<unsigned>(m - 2)) / (mm - 1);
  out.inner = B * power(Rational(r) * S / N + 1, static_cast<unsigned>(m - 2)) * power(N, static_cast<unsigned>(m - 1));
  return out;
}

/// Smallest power of two s with inner < every applicable outer bound, taking b = n.
inline std::size_t choose_scale(const Graph& g, std::size_t m, std::size_t k) {
  check_np_params(m, k, 1);
  for (std::size_t s = 1; s < (std::size_t{1} << 62); s *= 2) {
    auto bounds = gadget_bounds(g, m, k, s, g.order());
    bool ok = (bounds.outer1 || bounds.outer2) && (!bounds.outer1 || bounds.inner < *bounds.outer1) &&
              (!bounds.outer2 || bounds.inner < *bounds.outer2);
    if (ok) return s;
  }
  throw std::logic_error("no scale found");
}

/// Copies of K_m in the gadget host that use at least three inner vertices.
inline Count km_copies_with_three_inner(const NpGadget& gadget) {
  const std::size_t n = gadget.inner_vertices.size();
  return count_copies_where(gadget.host, PatternSpec(complete_graph(gadget.m)), [n](std::span<const Vertex> image) {
    std::size_t inner = 0;
    for (Vertex v : image) inner += v < n;
    return inner >= 3;
  });
}

/// ex_bar(G, K2, K3) recovered from ex_bar(G+, K_m, K_k): (ex_bar_plus - g) / (C(r,m-2) s^(m-2)).
inline Rational recover_ex_from_gadget(const BigInt& ex_bar_plus, const BigInt& g, std::size_t m, std::size_t r, std::size_t s) {
  BigInt denominator = per_missing_edge_km_count(m, r, s);
  if (denominator <= 0) throw std::invalid_argument("gadget denominator must be positive");
  return Rational(ex_bar_plus - g) / Rational(denominator);
}

/// Per edge {a,b} of g, an s-blow-up of T' = T - {u,v} for the first edge {u,v} of T, with the
/// sets of u's neighbours joined to a and those of v's neighbours joined to b.
struct BlowupGadget {
  Graph host;
  Edge removed;  // the edge {u,v} of T
  std::vector<Vertex> t_prime_vertices;  // vertices of T other than u, v, in order
  /// per_edge_sets[e][j] is the set standing for t_prime_vertices[j] at edge e of g.
  std::vector<std::vector<std::vector<Vertex>>> per_edge_sets;
  /// attach[j] = {joined to first endpoint, joined to second endpoint}.
  std::vector<std::pair<bool, bool>> attach;
};

/// T is expected to be 3-connected; only v(T) >= 3 is checked.
inline BlowupGadget build_blowup_gadget(const Graph& g, const Graph& t, std::size_t s) {
  if (t.order() < 3) throw std::invalid_argument("T needs at least 3 vertices");
  if (t.size() == 0) throw std::invalid_argument("T needs an edge");
  if (s < 1) throw std::invalid_argument("set size s must be at least 1");
  BlowupGadget gadget;
  gadget.removed = t.edges().front();
  const Vertex u = gadget.removed.u, v = gadget.removed.v;
  std::vector<int> slot(t.order(), -1);
  for (Vertex x = 0; x < t.order(); ++x)
    if (x != u && x != v) {
      slot[x] = static_cast<int>(gadget.t_prime_vertices.size());
      gadget.t_prime_vertices.push_back(x);
      gadget.attach.emplace_back(t.adjacent(x, u), t.adjacent(x, v));
    }
  const std::size_t parts = gadget.t_prime_vertices.size();

  Vertex next = static_cast<Vertex>(g.order());
  std::vector<Edge> edges(g.edges());
  for (const auto& e : g.edges()) {
    std::vector<std::vector<Vertex>> sets(parts);
    for (auto& set : sets)
      for (std::size_t i = 0; i < s; ++i) set.push_back(next++);
    for (const auto& te : t.edges()) {
      if (slot[te.u] < 0 || slot[te.v] < 0) continue;
      for (Vertex x : sets[slot[te.u]])
        for (Vertex y : sets[slot[te.v]]) edges.push_back(Edge::of(x, y));
    }
    for (std::size_t j = 0; j < parts; ++j)
      for (Vertex x : sets[j]) {
        if (gadget.attach[j].first) edges.push_back(Edge::of(x, e.u));
        if (gadget.attach[j].second) edges.push_back(Edge::of(x, e.v));
      }
    gadget.per_edge_sets.push_back(std::move(sets));
  }
  gadget.host = Graph(next, std::move(edges));
  return gadget;
}

}  // namespace genturan
