#pragma once

#include "genturan/graph.hpp"

#include <cstdint>
#include <optional>
#include <type_traits>
#include <span>
#include <vector>

namespace genturan {

/// Static search order over the vertices of a pattern graph.
///
/// The order is connectivity-aware: after the first vertex, each next vertex is the
/// unplaced one with the most already-placed neighbours (ties: higher degree, then
/// smaller index), so that candidate sets come from neighbourhood intersections
/// whenever the pattern is connected.
class EmbeddingPlan {
 public:
  EmbeddingPlan() = default;

  explicit EmbeddingPlan(const Graph& pattern) : pattern_(pattern), back_(pattern.order()), degree_(pattern.order()) {
    const std::size_t t = pattern.order();
    std::vector<bool> placed(t, false);
    std::vector<std::size_t> position(t, 0);
    for (std::size_t step = 0; step < t; ++step) {
      std::size_t best = t;
      std::size_t best_links = 0;
      for (Vertex x = 0; x < t; ++x) {
        if (placed[x]) continue;
        std::size_t links = 0;
        for (Vertex y : pattern.neighbors(x)) links += placed[y] ? 1 : 0;
        if (best == t || links > best_links ||
            (links == best_links && pattern.degree(x) > pattern.degree(best))) {
          best = x;
          best_links = links;
        }
      }
      placed[best] = true;
      position[best] = step;
      order_.push_back(static_cast<Vertex>(best));
    }
    for (std::size_t step = 0; step < t; ++step) {
      Vertex x = order_[step];
      degree_[step] = pattern.degree(x);
      for (Vertex y : pattern.neighbors(x))
        if (position[y] < step) back_[step].push_back(position[y]);
    }
  }

  std::size_t size() const { return order_.size(); }
  const Graph& pattern() const { return pattern_; }
  Vertex vertex_at(std::size_t step) const { return order_[step]; }
  /// Earlier steps whose pattern vertices are adjacent to the vertex placed at `step`.
  const std::vector<std::size_t>& back_neighbors(std::size_t step) const { return back_[step]; }
  std::size_t degree_at(std::size_t step) const { return degree_[step]; }

 private:
  Graph pattern_;
  std::vector<Vertex> order_;
  std::vector<std::vector<std::size_t>> back_;
  std::vector<std::size_t> degree_;
};

namespace detail {

// Backtracking enumerator of injective edge-preserving maps pattern -> host.
template <class Visit>
class EmbeddingSearch {
 public:
  EmbeddingSearch(const AdjacencyBits& host, const EmbeddingPlan& plan, Visit& visit)
      : host_(host), plan_(plan), visit_(visit), words_(host.words()), used_(words_, 0),
        candidates_(plan.size() * words_, 0), by_step_(plan.size(), 0), image_(plan.pattern().order(), 0) {
    // Host vertices of degree >= d, for each pattern degree d that occurs.
    std::vector<std::size_t> host_degree(host.order());
    for (Vertex v = 0; v < host.order(); ++v) host_degree[v] = popcount(host.row(v));
    degree_mask_.assign(plan.size() * words_, 0);
    for (std::size_t step = 0; step < plan.size(); ++step)
      for (Vertex v = 0; v < host.order(); ++v)
        if (host_degree[v] >= plan.degree_at(step)) degree_mask_[step * words_ + v / 64] |= std::uint64_t{1} << (v % 64);
  }

  /// Runs the search; when `root` is set the first placed vertex is pinned to it.
  bool run(std::optional<Vertex> root = std::nullopt) {
    if (plan_.size() == 0) return visit_(std::span<const Vertex>(image_));
    if (plan_.size() > host_.order()) return true;
    std::uint64_t* cand = candidates_.data();
    for (std::size_t w = 0; w < words_; ++w) cand[w] = degree_mask_[w];
    if (root) {
      bool allowed = (cand[*root / 64] >> (*root % 64)) & 1u;
      std::fill(cand, cand + words_, 0);
      if (allowed) cand[*root / 64] |= std::uint64_t{1} << (*root % 64);
    }
    return descend(0);
  }

 private:
  bool descend(std::size_t step) {
    std::span<const std::uint64_t> cand(candidates_.data() + step * words_, words_);
    return for_each_bit(cand, [&](Vertex v) {
      if ((used_[v / 64] >> (v % 64)) & 1u) return true;
      by_step_[step] = v;
      image_[plan_.vertex_at(step)] = v;
      if (step + 1 == plan_.size()) return static_cast<bool>(visit_(std::span<const Vertex>(image_)));
      used_[v / 64] |= std::uint64_t{1} << (v % 64);
      bool keep_going = true;
      if (prepare(step + 1)) keep_going = descend(step + 1);
      used_[v / 64] &= ~(std::uint64_t{1} << (v % 64));
      return keep_going;
    });
  }

  // Fills the candidate mask for `step`; false when it is empty.
  bool prepare(std::size_t step) {
    std::uint64_t* cand = candidates_.data() + step * words_;
    const std::uint64_t* degree_ok = degree_mask_.data() + step * words_;
    for (std::size_t w = 0; w < words_; ++w) cand[w] = degree_ok[w] & ~used_[w];
    for (std::size_t back : plan_.back_neighbors(step)) {
      auto row = host_.row(by_step_[back]);
      for (std::size_t w = 0; w < words_; ++w) cand[w] &= row[w];
    }
    for (std::size_t w = 0; w < words_; ++w)
      if (cand[w] != 0) return true;
    return false;
  }

  const AdjacencyBits& host_;
  const EmbeddingPlan& plan_;
  Visit& visit_;
  std::size_t words_;
  std::vector<std::uint64_t> used_;
  std::vector<std::uint64_t> candidates_;
  std::vector<std::uint64_t> degree_mask_;
  std::vector<Vertex> by_step_;
  std::vector<Vertex> image_;
};

}  // namespace detail

/// Calls visit(image) for every injective edge-preserving map of the plan's pattern into
/// `host`, where image[x] is the host vertex assigned to pattern vertex x. The visitor
/// returns false to stop; the function returns false iff it was stopped.
template <class Visit>
bool for_each_embedding(const AdjacencyBits& host, const EmbeddingPlan& plan, Visit&& visit,
                        std::optional<Vertex> root = std::nullopt) {
  detail::EmbeddingSearch<std::remove_reference_t<Visit>> search(host, plan, visit);
  return search.run(root);
}

/// Number of injective edge-preserving maps.
inline Count count_embeddings(const AdjacencyBits& host, const EmbeddingPlan& plan) {
  Count total = 0;
  for_each_embedding(host, plan, [&](std::span<const Vertex>) {
    ++total;
    return true;
  });
  return total;
}

inline bool has_embedding(const AdjacencyBits& host, const EmbeddingPlan& plan) {
  return !for_each_embedding(host, plan, [](std::span<const Vertex>) { return false; });
}

}  // namespace genturan
