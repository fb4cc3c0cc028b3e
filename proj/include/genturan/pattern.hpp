#pragma once

#include "genturan/embedding.hpp"
#include "genturan/generators.hpp"
#include "genturan/graph.hpp"
#include "genturan/graph_io.hpp"
#include "genturan/homomorphism.hpp"
#include "genturan/partition.hpp"
#include "genturan/rational.hpp"
#include "genturan/weighted_graph.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace genturan {

/// Target graph T with its vertex count t and automorphism count.
class PatternSpec {
 public:
  PatternSpec() : PatternSpec(Graph(0)) {}
  explicit PatternSpec(Graph t) : plan_(t) {
    aut_ = count_embeddings(plan_.pattern().bits(), plan_);
  }

  const Graph& graph() const { return plan_.pattern(); }
  std::size_t t() const { return plan_.pattern().order(); }
  std::size_t edge_count() const { return plan_.pattern().size(); }
  Count automorphisms() const { return aut_; }
  const EmbeddingPlan& plan() const { return plan_; }

 private:
  EmbeddingPlan plan_;
  Count aut_ = 1;
};

/// Finite nonempty family of forbidden graphs.
class ForbiddenFamily {
 public:
  explicit ForbiddenFamily(std::vector<Graph> members) {
    if (members.empty()) throw std::invalid_argument("forbidden family must be nonempty");
    for (auto& f : members) {
      max_degree_ = std::max(max_degree_, f.max_degree());
      max_order_ = std::max(max_order_, f.order());
      plans_.emplace_back(std::move(f));
    }
  }

  std::size_t size() const { return plans_.size(); }
  const Graph& member(std::size_t i) const { return plans_[i].pattern(); }
  const EmbeddingPlan& plan(std::size_t i) const { return plans_[i]; }
  /// Largest maximum degree over the members.
  std::size_t max_degree() const { return max_degree_; }
  /// Largest vertex count over the members.
  std::size_t max_order() const { return max_order_; }

 private:
  std::vector<EmbeddingPlan> plans_;
  std::size_t max_degree_ = 0;
  std::size_t max_order_ = 0;
};

/// Number of subgraphs of g isomorphic to T: embeddings divided by |Aut(T)|.
/// With threads > 1 the first search level is split round-robin across workers.
inline Count count_copies(const Graph& g, const PatternSpec& t, unsigned threads = 1) {
  if (t.t() == 0) return 1;
  if (threads <= 1 || g.order() < 2) return count_embeddings(g.bits(), t.plan()) / t.automorphisms();
  std::vector<Count> partial(threads, 0);
  std::vector<std::thread> workers;
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      for (Vertex root = w; root < g.order(); root += threads)
        for_each_embedding(g.bits(), t.plan(), [&](std::span<const Vertex>) {
          ++partial[w];
          return true;
        }, root);
    });
  }
  for (auto& worker : workers) worker.join();
  Count total = 0;
  for (Count c : partial) total += c;
  return total / t.automorphisms();
}

/// N(W,T): sum over copies of T on positive-weight pairs of the product of their weights.
inline Rational count_weighted(const WeightedGraph& w, const PatternSpec& t) {
  if (t.t() == 0) return 1;
  const Graph& s = w.support();
  const auto& pattern_edges = t.graph().edges();
  Rational total = 0;
  for_each_embedding(s.bits(), t.plan(), [&](std::span<const Vertex> image) {
    Rational product = 1;
    for (const auto& e : pattern_edges) product *= w.weight_at(*s.edge_index(image[e.u], image[e.v]));
    total += product;
    return true;
  });
  return total / t.automorphisms();
}

/// One copy of T in a host: its vertex images (indexed by pattern vertex) and its host edges.
struct Copy {
  std::vector<Vertex> vertices;
  std::vector<Edge> edges;
  friend auto operator<=>(const Copy&, const Copy&) = default;
};
using CopyList = std::vector<Copy>;

/// Every copy of T in g exactly once, ordered by (sorted vertex set, sorted edge set).
inline CopyList list_copies(const Graph& g, const PatternSpec& t) {
  std::set<std::pair<std::vector<Vertex>, std::vector<Edge>>> seen;
  CopyList copies;
  for_each_embedding(g.bits(), t.plan(), [&](std::span<const Vertex> image) {
    std::vector<Vertex> vs(image.begin(), image.end());
    std::vector<Edge> es;
    for (const auto& e : t.graph().edges()) es.push_back(Edge::of(image[e.u], image[e.v]));
    std::sort(es.begin(), es.end());
    std::vector<Vertex> sorted_vs = vs;
    std::sort(sorted_vs.begin(), sorted_vs.end());
    if (seen.emplace(sorted_vs, es).second) copies.push_back({std::move(vs), std::move(es)});
    return true;
  });
  std::sort(copies.begin(), copies.end(), [](const Copy& a, const Copy& b) {
    auto va = a.vertices, vb = b.vertices;
    std::sort(va.begin(), va.end());
    std::sort(vb.begin(), vb.end());
    return std::tie(va, a.edges) < std::tie(vb, b.edges);
  });
  return copies;
}

/// Copies of T whose host vertex set satisfies `keep`. The predicate sees the vertex images
/// and must depend only on the image set.
template <class Predicate>
Count count_copies_where(const Graph& g, const PatternSpec& t, Predicate&& keep) {
  Count embeddings = 0;
  for_each_embedding(g.bits(), t.plan(), [&](std::span<const Vertex> image) {
    if (keep(image)) ++embeddings;
    return true;
  });
  return embeddings / t.automorphisms();
}

/// True iff g contains no subgraph isomorphic to a member of the family.
inline bool is_family_free(const Graph& g, const ForbiddenFamily& family) {
  for (std::size_t i = 0; i < family.size(); ++i)
    if (has_embedding(g.bits(), family.plan(i))) return false;
  return true;
}

/// True iff no member of the family maps homomorphically into the support of w.
inline bool is_hom_free(const WeightedGraph& w, const ForbiddenFamily& family) {
  for (std::size_t i = 0; i < family.size(); ++i)
    if (hom_exists(family.member(i), w.support())) return false;
  return true;
}

/// Whether f is a subgraph of some blow-up of t. An edge-preserving map f -> t places
/// adjacent vertices of f into joined classes of t(v(f)) and conversely, so this is hom_exists.
inline bool blowup_subgraph_test(const Graph& f, const Graph& t) { return hom_exists(f, t); }

/// Weighted mass of the copies of T that use two or more vertices of one class.
inline Rational same_part_copy_mass(const WeightedGraph& w, const Partition& p, const PatternSpec& t) {
  if (p.order() != w.order()) throw std::invalid_argument("partition does not cover the vertex set");
  if (!p.exceptional().empty()) throw std::invalid_argument("same-part mass expects an empty exceptional class");
  const Graph& s = w.support();
  std::vector<char> seen(p.class_count() + 1, 0);
  Rational total = 0;
  for_each_embedding(s.bits(), t.plan(), [&](std::span<const Vertex> image) {
    std::fill(seen.begin(), seen.end(), 0);
    bool repeated = false;
    for (Vertex v : image) {
      auto c = p.class_of(v);
      if (seen[c]) repeated = true;
      seen[c] = 1;
    }
    if (!repeated) return true;
    Rational product = 1;
    for (const auto& e : t.graph().edges()) product *= w.weight_at(*s.edge_index(image[e.u], image[e.v]));
    total += product;
    return true;
  });
  return total / t.automorphisms();
}

/// Shorthand: K<r>, C<r>, P<r> (r vertices), S<r> (K_{1,r}), M<k> (kK2), or @<file>.
inline Graph parse_pattern(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty pattern");
  if (text[0] == '@') return load_graph(text.substr(1));
  std::string digits = text.substr(1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 4)
    throw std::invalid_argument("invalid pattern '" + text + "'");
  std::size_t r = std::stoul(digits);
  switch (text[0]) {
    case 'K':
      if (r < 1) break;
      return complete_graph(r);
    case 'C':
      if (r < 3) break;
      return cycle_graph(r);
    case 'P':
      if (r < 1) break;
      return path_graph(r);
    case 'S':
      if (r < 1) break;
      return star_graph(r);
    case 'M':
      if (r < 1) break;
      return matching_graph(r);
    default:
      break;
  }
  throw std::invalid_argument("invalid pattern '" + text + "'");
}

/// Comma-separated list of pattern shorthands.
inline ForbiddenFamily parse_family(const std::string& text) {
  std::vector<Graph> members;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    members.push_back(parse_pattern(text.substr(start, comma - start)));
    start = comma + 1;
  }
  return ForbiddenFamily(std::move(members));
}

}  // namespace genturan
