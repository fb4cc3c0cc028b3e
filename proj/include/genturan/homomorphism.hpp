#pragma once

#include "genturan/embedding.hpp"
#include "genturan/graph.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace genturan {

namespace detail {

// Backtracking over vertex maps f -> host with forward checking on bitset domains.
// Domains start arc-consistent (every value has a support along every edge).
template <class Visit>
class HomomorphismSearch {
 public:
  HomomorphismSearch(const Graph& f, const EmbeddingPlan& plan, const AdjacencyBits& host, Visit& visit)
      : f_(f), plan_(plan), host_(host), visit_(visit), words_(host.words()),
        domains_(f.order() * host.words(), 0), backup_(f.order() * f.order() * host.words(), 0),
        image_(f.order(), 0), position_(f.order(), 0) {
    for (std::size_t step = 0; step < plan.size(); ++step) position_[plan.vertex_at(step)] = step;
  }

  bool run() {
    const std::size_t t = f_.order();
    if (t == 0) return visit_(std::span<const Vertex>(image_));
    if (host_.order() == 0) return true;
    auto all = host_.full_mask();
    std::vector<std::uint64_t> non_isolated(words_, 0);
    for (Vertex v = 0; v < host_.order(); ++v)
      if (popcount(host_.row(v)) > 0) non_isolated[v / 64] |= std::uint64_t{1} << (v % 64);
    for (Vertex x = 0; x < t; ++x) {
      const auto& source = f_.degree(x) > 0 ? non_isolated : all;
      std::copy(source.begin(), source.end(), domain(x));
    }
    if (!make_arc_consistent()) return true;
    return descend(0);
  }

 private:
  std::uint64_t* domain(Vertex x) { return domains_.data() + x * words_; }

  bool empty(const std::uint64_t* mask) const {
    for (std::size_t w = 0; w < words_; ++w)
      if (mask[w] != 0) return false;
    return true;
  }

  // AC-3 style fixpoint: drop y from D(x) if no neighbour of y lies in D(z) for some edge xz.
  bool make_arc_consistent() {
    bool changed = true;
    while (changed) {
      changed = false;
      for (Vertex x = 0; x < f_.order(); ++x) {
        for (Vertex z : f_.neighbors(x)) {
          std::uint64_t* dx = domain(x);
          const std::uint64_t* dz = domain(z);
          for_each_bit(std::span<const std::uint64_t>(dx, words_), [&](Vertex y) {
            auto row = host_.row(y);
            bool supported = false;
            for (std::size_t w = 0; w < words_ && !supported; ++w) supported = (row[w] & dz[w]) != 0;
            if (!supported) {
              dx[y / 64] &= ~(std::uint64_t{1} << (y % 64));
              changed = true;
            }
            return true;
          });
          if (empty(dx)) return false;
        }
      }
    }
    return true;
  }

  bool descend(std::size_t step) {
    Vertex x = plan_.vertex_at(step);
    std::vector<std::uint64_t> choices(domain(x), domain(x) + words_);
    return for_each_bit(std::span<const std::uint64_t>(choices), [&](Vertex y) {
      image_[x] = y;
      if (step + 1 == plan_.size()) return static_cast<bool>(visit_(std::span<const Vertex>(image_)));
      // Forward check: restrict domains of not-yet-placed neighbours of x.
      std::uint64_t* saved = backup_.data() + step * f_.order() * words_;
      bool consistent = true;
      auto row = host_.row(y);
      for (Vertex z : f_.neighbors(x)) {
        if (position_[z] <= step) continue;
        std::uint64_t* dz = domain(z);
        std::copy(dz, dz + words_, saved + z * words_);
        for (std::size_t w = 0; w < words_; ++w) dz[w] &= row[w];
        if (empty(dz)) consistent = false;
      }
      bool keep_going = consistent ? descend(step + 1) : true;
      for (Vertex z : f_.neighbors(x)) {
        if (position_[z] <= step) continue;
        std::copy(saved + z * words_, saved + (z + 1) * words_, domain(z));
      }
      return keep_going;
    });
  }

  const Graph& f_;
  const EmbeddingPlan& plan_;
  const AdjacencyBits& host_;
  Visit& visit_;
  std::size_t words_;
  std::vector<std::uint64_t> domains_;
  std::vector<std::uint64_t> backup_;
  std::vector<Vertex> image_;
  std::vector<std::size_t> position_;
};

}  // namespace detail

/// Calls visit(map) for every edge-preserving vertex map f -> host (not necessarily injective).
/// Returns false iff the visitor stopped the enumeration.
template <class Visit>
bool for_each_homomorphism(const Graph& f, const EmbeddingPlan& plan, const AdjacencyBits& host, Visit&& visit) {
  detail::HomomorphismSearch<std::remove_reference_t<Visit>> search(f, plan, host, visit);
  return search.run();
}

/// Some homomorphism f -> g, as the image of each vertex of f.
inline std::optional<std::vector<Vertex>> find_homomorphism(const Graph& f, const Graph& g) {
  EmbeddingPlan plan(f);
  std::optional<std::vector<Vertex>> found;
  for_each_homomorphism(f, plan, g.bits(), [&](std::span<const Vertex> image) {
    found.emplace(image.begin(), image.end());
    return false;
  });
  return found;
}

/// True iff an edge-preserving map f -> g exists.
inline bool hom_exists(const Graph& f, const Graph& g) { return find_homomorphism(f, g).has_value(); }

/// Checks that `image` maps every edge of f onto an edge of g.
inline bool is_homomorphism(const Graph& f, const Graph& g, std::span<const Vertex> image) {
  if (image.size() != f.order()) return false;
  for (Vertex y : image)
    if (y >= g.order()) return false;
  for (const auto& e : f.edges())
    if (!g.adjacent(image[e.u], image[e.v])) return false;
  return true;
}

}  // namespace genturan
