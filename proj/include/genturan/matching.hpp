#pragma once

#include "genturan/exact.hpp"
#include "genturan/graph.hpp"
#include "genturan/rational.hpp"

#include <algorithm>
#include <cassert>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

namespace genturan {

/// Set of pairwise vertex-disjoint edges of a host graph, sorted.
struct Matching {
  std::vector<Edge> edges;
  std::size_t size() const { return edges.size(); }
};

inline bool is_matching_of(const Matching& m, const Graph& host) {
  std::vector<bool> used(host.order(), false);
  for (const auto& e : m.edges) {
    if (!host.adjacent(e.u, e.v) || used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = true;
  }
  return true;
}

namespace detail {

inline constexpr Vertex kUnmatched = static_cast<Vertex>(-1);

// Edmonds' blossom algorithm, O(n^3): grow an alternating BFS tree from each free vertex,
// contracting odd cycles through their base until an augmenting path appears.
class BlossomMatcher {
 public:
  explicit BlossomMatcher(const Graph& g)
      : g_(g), n_(g.order()), match_(n_, kUnmatched), parent_(n_), base_(n_), used_(n_), blossom_(n_) {}

  /// Grows `initial` (a valid mate array) to a maximum matching.
  std::vector<Vertex> run(std::vector<Vertex> initial) {
    match_ = std::move(initial);
    for (Vertex root = 0; root < n_; ++root) {
      if (match_[root] != kUnmatched) continue;
      Vertex v = find_path(root);
      while (v != kUnmatched) {
        Vertex pv = parent_[v];
        Vertex ppv = match_[pv];
        match_[v] = pv;
        match_[pv] = v;
        v = ppv;
      }
    }
    return match_;
  }

 private:
  Vertex lca(Vertex a, Vertex b) {
    std::vector<bool> seen(n_, false);
    while (true) {
      a = base_[a];
      seen[a] = true;
      if (match_[a] == kUnmatched) break;
      a = parent_[match_[a]];
    }
    while (true) {
      b = base_[b];
      if (seen[b]) return b;
      b = parent_[match_[b]];
    }
  }

  void mark_path(Vertex v, Vertex b, Vertex child) {
    while (base_[v] != b) {
      blossom_[base_[v]] = blossom_[base_[match_[v]]] = true;
      parent_[v] = child;
      child = match_[v];
      v = parent_[match_[v]];
    }
  }

  Vertex find_path(Vertex root) {
    std::fill(used_.begin(), used_.end(), false);
    std::fill(parent_.begin(), parent_.end(), kUnmatched);
    for (Vertex i = 0; i < n_; ++i) base_[i] = i;
    used_[root] = true;
    std::queue<Vertex> queue;
    queue.push(root);
    while (!queue.empty()) {
      Vertex v = queue.front();
      queue.pop();
      for (Vertex to : g_.neighbors(v)) {
        if (base_[v] == base_[to] || match_[v] == to) continue;
        if (to == root || (match_[to] != kUnmatched && parent_[match_[to]] != kUnmatched)) {
          Vertex current = lca(v, to);
          std::fill(blossom_.begin(), blossom_.end(), false);
          mark_path(v, current, to);
          mark_path(to, current, v);
          for (Vertex i = 0; i < n_; ++i) {
            if (!blossom_[base_[i]]) continue;
            base_[i] = current;
            if (!used_[i]) {
              used_[i] = true;
              queue.push(i);
            }
          }
        } else if (parent_[to] == kUnmatched) {
          parent_[to] = v;
          if (match_[to] == kUnmatched) return to;
          used_[match_[to]] = true;
          queue.push(match_[to]);
        }
      }
    }
    return kUnmatched;
  }

  const Graph& g_;
  std::size_t n_;
  std::vector<Vertex> match_;
  std::vector<Vertex> parent_;
  std::vector<Vertex> base_;
  std::vector<bool> used_;
  std::vector<bool> blossom_;
};

inline Matching matching_from_mates(const std::vector<Vertex>& mate) {
  Matching m;
  for (Vertex v = 0; v < mate.size(); ++v)
    if (mate[v] != kUnmatched && v < mate[v]) m.edges.push_back({v, mate[v]});
  return m;
}

}  // namespace detail

/// Maximum-cardinality matching of a general graph (Edmonds).
inline Matching max_matching(const Graph& g) {
  detail::BlossomMatcher matcher(g);
  return detail::matching_from_mates(matcher.run(std::vector<Vertex>(g.order(), detail::kUnmatched)));
}

/// ex(G, kK2, K_{1,2}) = C(nu(G), k): every K_{1,2}-free subgraph is a matching.
inline Count ex_matchings(const Graph& g, std::size_t k) {
  if (k < 1) throw std::invalid_argument("matching size k must be at least 1");
  return to_count(binomial(static_cast<long long>(max_matching(g).size()), static_cast<long long>(k)));
}

/// Auxiliary graph whose maximum matchings encode maximum subgraphs of degree <= t.
///
/// Vertex v of the source becomes an independent set V(v) of size d(v); slot i of V(v)
/// stands for v's i-th neighbour in sorted order, and the two slots of each source edge are
/// joined. When d(v) > t a further set U(v) of size d(v) - t is fully joined to V(v).
struct TutteGadget {
  Graph host;
  std::vector<std::vector<Vertex>> v_sets;  // V(v) for each source vertex
  std::vector<std::vector<Vertex>> u_sets;  // U(v), empty when d(v) <= t
  std::vector<Edge> edge_map;               // gadget edge for each source edge, by source edge index
  std::size_t t = 0;
};

inline TutteGadget build_tutte_gadget(const Graph& g, std::size_t t) {
  if (t < 1) throw std::invalid_argument("degree bound t must be at least 1");
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) == 0)
      throw std::invalid_argument("vertex " + std::to_string(v) + " is isolated; strip isolated vertices first");
  TutteGadget gadget;
  gadget.t = t;
  gadget.v_sets.resize(g.order());
  gadget.u_sets.resize(g.order());
  Vertex next = 0;
  for (Vertex v = 0; v < g.order(); ++v)
    for (std::size_t i = 0; i < g.degree(v); ++i) gadget.v_sets[v].push_back(next++);
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) > t)
      for (std::size_t i = 0; i < g.degree(v) - t; ++i) gadget.u_sets[v].push_back(next++);

  auto slot = [&](Vertex v, Vertex neighbour) {
    auto nbrs = g.neighbors(v);
    auto pos = static_cast<std::size_t>(std::lower_bound(nbrs.begin(), nbrs.end(), neighbour) - nbrs.begin());
    return gadget.v_sets[v][pos];
  };
  std::vector<Edge> edges;
  for (const auto& e : g.edges()) {
    Edge image = Edge::of(slot(e.u, e.v), slot(e.v, e.u));
    gadget.edge_map.push_back(image);
    edges.push_back(image);
  }
  for (Vertex v = 0; v < g.order(); ++v)
    for (Vertex u : gadget.u_sets[v])
      for (Vertex x : gadget.v_sets[v]) edges.push_back(Edge::of(u, x));
  gadget.host = Graph(next, std::move(edges));
  return gadget;
}

/// Mate array in which every U(v) vertex is matched, obtained from a maximum matching by
/// the exchange step: an unmatched w in U(v) takes the smallest-index vertex of V(v) not
/// already matched into U(v), evicting that vertex's current edge. Cardinality never drops.
inline std::vector<Vertex> saturate_u_sets(const TutteGadget& gadget, std::vector<Vertex> mate) {
  std::vector<int> owner(gadget.host.order(), -1);
  for (std::size_t v = 0; v < gadget.u_sets.size(); ++v)
    for (Vertex u : gadget.u_sets[v]) owner[u] = static_cast<int>(v);
  auto in_u = [&](Vertex x) { return x != detail::kUnmatched && owner[x] != -1; };
  for (std::size_t v = 0; v < gadget.u_sets.size(); ++v) {
    for (Vertex w : gadget.u_sets[v]) {
      if (mate[w] != detail::kUnmatched) continue;
      auto it = std::find_if(gadget.v_sets[v].begin(), gadget.v_sets[v].end(), [&](Vertex x) { return !in_u(mate[x]); });
      assert(it != gadget.v_sets[v].end());
      Vertex x = *it;
      if (mate[x] != detail::kUnmatched) mate[mate[x]] = detail::kUnmatched;
      mate[x] = w;
      mate[w] = x;
    }
  }
  return mate;
}

/// ex(G, K2, K_{1,t+1}): the largest subgraph with maximum degree <= t, via a maximum
/// matching of the Tutte gadget. Isolated vertices are stripped first.
///
/// The value is e(G') = |M| - sum over d(v) > t of (d(v) - t), which is also the edge count
/// of the returned witness.
inline ExactResult max_edges_bounded_degree(const Graph& g, std::size_t t) {
  if (t < 1) throw std::invalid_argument("degree bound t must be at least 1");
  std::vector<Vertex> kept;
  std::vector<Vertex> relabel(g.order(), detail::kUnmatched);
  for (Vertex v = 0; v < g.order(); ++v)
    if (g.degree(v) > 0) {
      relabel[v] = static_cast<Vertex>(kept.size());
      kept.push_back(v);
    }
  std::vector<Edge> core_edges;
  for (const auto& e : g.edges()) core_edges.push_back({relabel[e.u], relabel[e.v]});
  Graph core(kept.size(), core_edges);

  TutteGadget gadget = build_tutte_gadget(core, t);
  detail::BlossomMatcher matcher(gadget.host);
  std::vector<Vertex> mate = matcher.run(std::vector<Vertex>(gadget.host.order(), detail::kUnmatched));
  std::size_t matched_before = detail::matching_from_mates(mate).size();
  mate = saturate_u_sets(gadget, std::move(mate));
  std::size_t matched = detail::matching_from_mates(mate).size();
  if (matched < matched_before) throw std::logic_error("saturation step lost matching edges");

  std::vector<Edge> chosen;
  for (std::size_t i = 0; i < core.size(); ++i) {
    const Edge& image = gadget.edge_map[i];
    if (mate[image.u] == image.v) {
      const Edge& e = core.edges()[i];
      chosen.push_back(Edge::of(kept[e.u], kept[e.v]));
    }
  }
  std::size_t surplus = 0;
  for (const auto& u : gadget.u_sets) surplus += u.size();
  Graph witness(g.order(), std::move(chosen));
  if (matched - surplus != witness.size()) throw std::logic_error("gadget edge count disagrees with witness");
  return {static_cast<Count>(witness.size()), std::move(witness), 0};
}

}  // namespace genturan
