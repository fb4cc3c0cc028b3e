#pragma once

#include "genturan/embedding.hpp"
#include "genturan/graph.hpp"
#include "genturan/homomorphism.hpp"
#include "genturan/pattern.hpp"
#include "genturan/rational.hpp"
#include "genturan/weighted_graph.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <variant>
#include <vector>

namespace genturan {

struct SearchOptions {
  std::uint64_t node_budget = 10'000'000;
  unsigned threads = 1;
  /// Obstructions (forbidden copies or homomorphic images) collected per node.
  std::size_t obstruction_limit = 64;
};

template <class Value, class Witness>
struct OracleResult {
  Value value{};
  Witness witness;
  std::uint64_t nodes_explored = 0;
};

using ExactResult = OracleResult<Count, Graph>;
using ExactHomResult = OracleResult<Rational, WeightedGraph>;

/// The node budget ran out. Carries the best feasible value found so far, a lower bound.
class SearchIncomplete : public std::runtime_error {
 public:
  SearchIncomplete(Rational best, std::variant<Graph, WeightedGraph> witness, std::uint64_t nodes)
      : std::runtime_error("search incomplete: node budget exhausted after " + std::to_string(nodes) +
                           " nodes, best value found " + to_string(best)),
        best_(std::move(best)), witness_(std::move(witness)), nodes_(nodes) {}

  const Rational& best_value() const { return best_; }
  const std::variant<Graph, WeightedGraph>& best_witness() const { return witness_; }
  std::uint64_t nodes() const { return nodes_; }

 private:
  Rational best_;
  std::variant<Graph, WeightedGraph> witness_;
  std::uint64_t nodes_;
};

namespace detail {

enum class EdgeStatus : std::uint8_t { free, fixed, deleted };

struct EdgeState {
  std::vector<EdgeStatus> status;
  AdjacencyBits alive;
  AdjacencyBits fixed;

  explicit EdgeState(const Graph& support) : status(support.size(), EdgeStatus::free), alive(support.bits()),
                                              fixed(support.order()) {}

  std::vector<bool> alive_mask() const {
    std::vector<bool> mask(status.size());
    for (std::size_t i = 0; i < status.size(); ++i) mask[i] = status[i] != EdgeStatus::deleted;
    return mask;
  }
};

template <class Value>
struct Evaluation {
  Value total{};
  std::vector<Value> per_edge;  // mass of copies of T through each support edge
};

struct ObstructionScan {
  bool blocked = false;                          // some obstruction uses only fixed edges
  std::vector<std::vector<std::size_t>> sets;    // free edge indices of each obstruction found
};

// Shared machinery: support graph, pattern, dense edge-index lookup.
class ProblemBase {
 public:
  ProblemBase(const Graph& support, const PatternSpec& t, const ForbiddenFamily& family)
      : support_(support), t_(t), family_(family), index_(support.order() * support.order(), -1) {
    const std::size_t n = support.order();
    for (std::size_t i = 0; i < support.size(); ++i) {
      const Edge& e = support.edges()[i];
      index_[e.u * n + e.v] = index_[e.v * n + e.u] = static_cast<int>(i);
    }
  }

  const Graph& support() const { return support_; }
  const PatternSpec& pattern() const { return t_; }
  std::size_t edge_of(Vertex a, Vertex b) const { return static_cast<std::size_t>(index_[a * support_.order() + b]); }

 protected:
  template <class EdgeSets>
  void collect_free(const EdgeState& state, const EdgeSets& image_edges, ObstructionScan& scan) const {
    std::vector<std::size_t> free_edges;
    for (std::size_t idx : image_edges)
      if (state.status[idx] == EdgeStatus::free) free_edges.push_back(idx);
    std::sort(free_edges.begin(), free_edges.end());
    free_edges.erase(std::unique(free_edges.begin(), free_edges.end()), free_edges.end());
    if (free_edges.empty()) {
      scan.blocked = true;
      return;
    }
    scan.sets.push_back(std::move(free_edges));
  }

  const Graph& support_;
  const PatternSpec& t_;
  const ForbiddenFamily& family_;
  std::vector<int> index_;
};

// ex(G,T,F): obstructions are subgraph copies of family members.
class SubgraphProblem : public ProblemBase {
 public:
  using Value = Count;
  using ProblemBase::ProblemBase;

  Evaluation<Value> evaluate(const EdgeState& state) const {
    Evaluation<Value> eval;
    eval.per_edge.assign(support_.size(), 0);
    Count embeddings = 0;
    const auto& pattern_edges = t_.graph().edges();
    for_each_embedding(state.alive, t_.plan(), [&](std::span<const Vertex> image) {
      ++embeddings;
      for (const auto& e : pattern_edges) ++eval.per_edge[edge_of(image[e.u], image[e.v])];
      return true;
    });
    eval.total = embeddings / t_.automorphisms();
    for (auto& c : eval.per_edge) c /= t_.automorphisms();
    return eval;
  }

  ObstructionScan scan(const EdgeState& state, std::size_t limit) const {
    ObstructionScan scan;
    for (std::size_t i = 0; i < family_.size(); ++i)
      if (has_embedding(state.fixed, family_.plan(i))) {
        scan.blocked = true;
        return scan;
      }
    for (std::size_t i = 0; i < family_.size() && scan.sets.size() < limit; ++i) {
      const auto& member_edges = family_.member(i).edges();
      for_each_embedding(state.alive, family_.plan(i), [&](std::span<const Vertex> image) {
        std::vector<std::size_t> used;
        for (const auto& e : member_edges) used.push_back(edge_of(image[e.u], image[e.v]));
        collect_free(state, used, scan);
        return scan.sets.size() < limit;
      });
    }
    return scan;
  }
};

// ex_hom(W,T,F): obstructions are homomorphic images of family members in the support.
class HomProblem : public ProblemBase {
 public:
  using Value = Rational;

  HomProblem(const WeightedGraph& w, const PatternSpec& t, const ForbiddenFamily& family)
      : ProblemBase(w.support(), t, family), w_(w) {}

  Evaluation<Value> evaluate(const EdgeState& state) const {
    Evaluation<Value> eval;
    eval.per_edge.assign(support_.size(), Rational(0));
    const auto& pattern_edges = t_.graph().edges();
    std::vector<std::size_t> used(pattern_edges.size());
    for_each_embedding(state.alive, t_.plan(), [&](std::span<const Vertex> image) {
      Rational product = 1;
      for (std::size_t j = 0; j < pattern_edges.size(); ++j) {
        used[j] = edge_of(image[pattern_edges[j].u], image[pattern_edges[j].v]);
        product *= w_.weight_at(used[j]);
      }
      eval.total += product;
      for (std::size_t idx : used) eval.per_edge[idx] += product;
      return true;
    });
    eval.total /= t_.automorphisms();
    for (auto& c : eval.per_edge) c /= t_.automorphisms();
    return eval;
  }

  ObstructionScan scan(const EdgeState& state, std::size_t limit) const {
    ObstructionScan scan;
    for (std::size_t i = 0; i < family_.size(); ++i) {
      bool found = !for_each_homomorphism(family_.member(i), family_.plan(i), state.fixed,
                                          [](std::span<const Vertex>) { return false; });
      if (found) {
        scan.blocked = true;
        return scan;
      }
    }
    for (std::size_t i = 0; i < family_.size() && scan.sets.size() < limit; ++i) {
      const auto& member_edges = family_.member(i).edges();
      for_each_homomorphism(family_.member(i), family_.plan(i), state.alive, [&](std::span<const Vertex> image) {
        std::vector<std::size_t> used;
        for (const auto& e : member_edges) used.push_back(edge_of(image[e.u], image[e.v]));
        collect_free(state, used, scan);
        return scan.sets.size() < limit;
      });
    }
    return scan;
  }

 private:
  const WeightedGraph& w_;
};

template <class Value>
Value destroyed_lower_bound(const std::vector<std::vector<std::size_t>>& sets, const std::vector<Value>& per_edge,
                            std::size_t edges_per_copy) {
  // Free-edge-disjoint obstructions each lose a distinct edge; a copy of T holds at most
  // edges_per_copy of those edges, so the destroyed mass is at least sum(min)/edges_per_copy.
  if (edges_per_copy == 0) return Value(0);
  std::vector<std::size_t> order(sets.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sets[a].size() < sets[b].size(); });
  std::vector<bool> taken(per_edge.size(), false);
  Value sum{};
  std::size_t packed = 0;
  for (std::size_t i : order) {
    const auto& set = sets[i];
    if (std::any_of(set.begin(), set.end(), [&](std::size_t e) { return taken[e]; })) continue;
    Value least = per_edge[set.front()];
    for (std::size_t e : set) {
      taken[e] = true;
      least = std::min(least, per_edge[e]);
    }
    sum += least;
    ++packed;
  }
  std::size_t divisor = std::max<std::size_t>(1, std::min(edges_per_copy, packed));
  if constexpr (std::is_same_v<Value, Count>) {
    return (sum + divisor - 1) / divisor;
  } else {
    return sum / static_cast<long long>(divisor);
  }
}

template <class Problem>
class BranchAndBound {
 public:
  using Value = typename Problem::Value;

  struct Best {
    std::optional<Value> value;
    std::vector<bool> alive;
  };

  BranchAndBound(const Problem& problem, const SearchOptions& options) : problem_(problem), options_(options) {}

  // Explores the subtree below `state`. Incumbent starts at `floor` and is improved locally.
  void solve(EdgeState& state, Best& best) {
    aborted_ = false;
    nodes_ = 0;
    descend(state, best);
  }

  std::uint64_t nodes() const { return nodes_; }
  bool aborted() const { return aborted_; }

  // Deterministic greedy completion: repeatedly delete the cheapest free edge of the
  // smallest obstruction until none remains.
  static std::optional<Best> greedy(const Problem& problem, const SearchOptions& options) {
    EdgeState state(problem.support());
    while (true) {
      auto scan = problem.scan(state, options.obstruction_limit);
      if (scan.blocked) return std::nullopt;
      auto eval = problem.evaluate(state);
      if (scan.sets.empty()) return Best{eval.total, state.alive_mask()};
      const auto& target = *std::min_element(scan.sets.begin(), scan.sets.end(),
                                             [](const auto& a, const auto& b) { return a.size() < b.size(); });
      std::size_t victim = target.front();
      for (std::size_t e : target)
        if (eval.per_edge[e] < eval.per_edge[victim]) victim = e;
      remove(problem, state, victim);
    }
  }

  static void remove(const Problem& problem, EdgeState& state, std::size_t e) {
    const Edge& edge = problem.support().edges()[e];
    state.status[e] = EdgeStatus::deleted;
    state.alive.reset(edge.u, edge.v);
  }
  static void restore(const Problem& problem, EdgeState& state, std::size_t e) {
    const Edge& edge = problem.support().edges()[e];
    state.status[e] = EdgeStatus::free;
    state.alive.set(edge.u, edge.v);
  }
  static void fix(const Problem& problem, EdgeState& state, std::size_t e) {
    const Edge& edge = problem.support().edges()[e];
    state.status[e] = EdgeStatus::fixed;
    state.fixed.set(edge.u, edge.v);
  }
  static void unfix(const Problem& problem, EdgeState& state, std::size_t e) {
    const Edge& edge = problem.support().edges()[e];
    state.status[e] = EdgeStatus::free;
    state.fixed.reset(edge.u, edge.v);
  }

 private:
  void descend(EdgeState& state, Best& best) {
    if (aborted_) return;
    if (++nodes_ > options_.node_budget) {
      aborted_ = true;
      return;
    }
    auto eval = problem_.evaluate(state);
    if (best.value && eval.total <= *best.value) return;
    auto scan = problem_.scan(state, options_.obstruction_limit);
    if (scan.blocked) return;
    if (scan.sets.empty()) {
      best.value = eval.total;
      best.alive = state.alive_mask();
      return;
    }
    Value bound = eval.total - destroyed_lower_bound(scan.sets, eval.per_edge, problem_.pattern().edge_count());
    if (best.value && bound <= *best.value) return;
    branch(state, best, pick(scan));
  }

  void branch(EdgeState& state, Best& best, const std::vector<std::size_t>& edges) {
    // Child i deletes edges[i] and keeps edges[0..i-1]; the children partition the solutions.
    for (std::size_t i = 0; i < edges.size() && !aborted_; ++i) {
      remove(problem_, state, edges[i]);
      descend(state, best);
      restore(problem_, state, edges[i]);
      fix(problem_, state, edges[i]);
    }
    for (std::size_t i = 0; i < edges.size(); ++i)
      if (state.status[edges[i]] == EdgeStatus::fixed) unfix(problem_, state, edges[i]);
  }

 public:
  static const std::vector<std::size_t>& pick(const ObstructionScan& scan) {
    return *std::min_element(scan.sets.begin(), scan.sets.end(),
                             [](const auto& a, const auto& b) { return a.size() < b.size(); });
  }

 private:
  const Problem& problem_;
  const SearchOptions& options_;
  std::uint64_t nodes_ = 0;
  bool aborted_ = false;
};

// Root split into independent subtrees, each with its own incumbent seeded by the greedy
// value. Results, witnesses and node counts do not depend on the thread count.
template <class Problem>
std::pair<typename BranchAndBound<Problem>::Best, std::uint64_t> search(const Problem& problem,
                                                                       const SearchOptions& options, bool& complete) {
  using Engine = BranchAndBound<Problem>;
  using Best = typename Engine::Best;
  complete = true;
  auto greedy = Engine::greedy(problem, options);
  if (!greedy) throw std::invalid_argument("no subgraph of the host avoids the forbidden family");

  EdgeState root(problem.support());
  auto eval = problem.evaluate(root);
  auto scan = problem.scan(root, options.obstruction_limit);
  if (scan.sets.empty()) return {Best{eval.total, root.alive_mask()}, 1};
  std::vector<std::size_t> edges = Engine::pick(scan);

  std::vector<Best> results(edges.size(), *greedy);
  std::vector<std::uint64_t> nodes(edges.size(), 0);
  std::vector<char> aborted(edges.size(), 0);
  auto run_child = [&](std::size_t i) {
    EdgeState state(problem.support());
    for (std::size_t j = 0; j < i; ++j) Engine::fix(problem, state, edges[j]);
    Engine::remove(problem, state, edges[i]);
    Engine engine(problem, options);
    engine.solve(state, results[i]);
    nodes[i] = engine.nodes();
    aborted[i] = engine.aborted();
  };
  unsigned threads = std::max(1u, options.threads);
  if (threads == 1 || edges.size() == 1) {
    for (std::size_t i = 0; i < edges.size(); ++i) run_child(i);
  } else {
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < threads; ++w)
      workers.emplace_back([&, w] {
        for (std::size_t i = w; i < edges.size(); i += threads) run_child(i);
      });
    for (auto& worker : workers) worker.join();
  }

  Best best = *greedy;
  std::uint64_t total_nodes = 1;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    total_nodes += nodes[i];
    if (aborted[i]) complete = false;
    if (*results[i].value > *best.value) best = results[i];
  }
  if (total_nodes > options.node_budget) complete = false;
  return {best, total_nodes};
}

}  // namespace detail

/// ex(G,T,F): the largest number of copies of T in an F-free subgraph of g, with a witness.
///
/// Branch and bound over edge deletions: pick a forbidden copy, branch on which of its free
/// edges is deleted (earlier edges of the copy are kept in later branches). The bound is the
/// current copy count minus a packing estimate of the copies that must still be destroyed.
/// Throws SearchIncomplete if the node budget is exhausted.
inline ExactResult exact_ex(const Graph& g, const PatternSpec& t, const ForbiddenFamily& family,
                            const SearchOptions& options = {}) {
  detail::SubgraphProblem problem(g, t, family);
  bool complete = true;
  auto [best, nodes] = detail::search(problem, options, complete);
  Graph witness = edge_subgraph(g, best.alive);
  if (!complete) throw SearchIncomplete(Rational(*best.value), witness, nodes);
  return {*best.value, std::move(witness), nodes};
}

/// ex_hom(W,T,F): the largest N(W0,T) over conventional subgraphs W0 of w into which no
/// member of the family maps homomorphically. Same search as exact_ex, with homomorphic
/// images of family members as the obstructions.
inline ExactHomResult exact_ex_hom(const WeightedGraph& w, const PatternSpec& t, const ForbiddenFamily& family,
                                   const SearchOptions& options = {}) {
  detail::HomProblem problem(w, t, family);
  bool complete = true;
  auto [best, nodes] = detail::search(problem, options, complete);
  WeightedGraph witness = w.restrict_to(best.alive);
  if (!complete) throw SearchIncomplete(*best.value, witness, nodes);
  return {*best.value, std::move(witness), nodes};
}

/// N(G,T) - ex(G,T,F): copies that every F-free subgraph must lose.
inline Count ex_bar(const Graph& g, const PatternSpec& t, const ForbiddenFamily& family,
                    const SearchOptions& options = {}) {
  return count_copies(g, t) - exact_ex(g, t, family, options).value;
}

}  // namespace genturan
