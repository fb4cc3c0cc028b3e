#pragma once

#include "genturan/exact.hpp"
#include "genturan/params.hpp"
#include "genturan/pattern.hpp"
#include "genturan/regularity.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace genturan {

enum class ApproxPath { fast, exact, regularity };

inline const char* to_string(ApproxPath path) {
  switch (path) {
    case ApproxPath::fast: return "fast";
    case ApproxPath::exact: return "exact";
    case ApproxPath::regularity: return "regularity";
  }
  return "unknown";
}

struct ApproxOptions {
  std::size_t k_cap = 12;
  std::optional<Rational> budget;       // edit fraction; eps when unset
  std::optional<Rational> d;            // partition-graph density threshold override
  bool force_regularity = false;        // take the regularity path even when n < n0
  std::uint64_t seed = 0;
  unsigned threads = 1;
  std::uint64_t node_budget = 10'000'000;
};

struct ApproxReport {
  Rational estimate;
  Count lower_bound_count = 0;
  Graph certificate;
  std::size_t edits_applied = 0;
  std::size_t k = 0;
  bool fast_path = false;
  ApproxPath path = ApproxPath::exact;
  ParameterSet params;
  Rational achieved_eps;
  double certified_level = 0;
};

/// Pipeline failure that still carries what was computed before it.
class ApproxError : public std::runtime_error {
 public:
  ApproxError(const std::string& what, ApproxReport partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const ApproxReport& partial() const { return partial_; }

 private:
  ApproxReport partial_;
};

namespace detail {

inline void finish_report(ApproxReport& report, const PatternSpec& t) {
  report.lower_bound_count = count_copies(report.certificate, t);
}

}  // namespace detail

/// Estimates ex(g, T, F) up to an additive eps * n^t.
///
/// Some member mapping homomorphically into T makes 0 a valid answer. Small graphs go to the
/// exact oracle. Otherwise: regular partition with edits, drop V0 edges, build the partition
/// graph, solve ex_hom on it and scale by (n/k)^t. The certificate is G_{W0}, intersected with
/// g so it stays a subgraph of the input.
inline ApproxReport approx_ex(const Graph& g, const PatternSpec& t, const ForbiddenFamily& family, const Rational& eps,
                              const ApproxOptions& options = {}) {
  const std::size_t n = g.order();
  for (std::size_t i = 0; i < family.size(); ++i)
    if (family.member(i).size() == 0 && family.member(i).order() <= n)
      throw std::invalid_argument("no subgraph of the host avoids the forbidden family");

  ApproxReport report;
  report.params = compute_params(eps, t, family, options.k_cap);
  report.achieved_eps = eps;
  report.certificate = Graph(n);

  for (std::size_t i = 0; i < family.size(); ++i)
    if (blowup_subgraph_test(family.member(i), t.graph())) {
      report.fast_path = true;
      report.path = ApproxPath::fast;
      report.estimate = 0;
      detail::finish_report(report, t);
      return report;
    }

  SearchOptions search;
  search.threads = options.threads;
  search.node_budget = options.node_budget;

  std::size_t l = std::min(report.params.k_min, n / 4);
  if ((n < report.params.n0 && !options.force_regularity) || l == 0) {
    auto exact = exact_ex(g, t, family, search);
    report.path = ApproxPath::exact;
    report.estimate = Rational(exact.value);
    report.certificate = exact.witness;
    detail::finish_report(report, t);
    return report;
  }

  report.path = ApproxPath::regularity;
  Rational budget = options.budget.value_or(eps);
  RefineOptions refine;
  refine.k_cap = std::max(options.k_cap, l);
  refine.seed = options.seed;
  EditedPartition edited = [&] {
    try {
      return refine_partition(g, eps, l, budget, refine);
    } catch (const RefinementError& e) {
      report.k = e.best_partition().class_count();
      report.edits_applied = e.edits_needed();
      throw ApproxError(e.what(), report);
    }
  }();
  const Partition& p = edited.partition;
  report.k = p.class_count();

  std::vector<bool> keep(edited.g_star.size());
  for (std::size_t i = 0; i < keep.size(); ++i) {
    const Edge& e = edited.g_star.edges()[i];
    keep[i] = p.class_of(e.u) != 0 && p.class_of(e.v) != 0;
  }
  Graph g_star = edge_subgraph(edited.g_star, keep);
  report.edits_applied = edit_distance(g, g_star);
  report.achieved_eps = edited.achieved_eps;
  report.certified_level = edited.certified_level;
  if (Rational(static_cast<long long>(report.edits_applied)) > budget * static_cast<long long>(n * n))
    throw ApproxError("edit budget exceeded after removing exceptional-class edges", report);

  Rational d = options.d.value_or(report.params.d_threshold);
  PartitionGraph w = build_partition_graph(g_star, p, edited.achieved_eps, d);
  auto hom = exact_ex_hom(w.w, t, family, search);
  Rational scale = Rational(static_cast<long long>(n)) / static_cast<long long>(report.k);
  report.estimate = power(scale, static_cast<unsigned>(t.t())) * hom.value;
  report.certificate = graph_intersection(extract_subgraph(g_star, p, hom.witness), g);
  detail::finish_report(report, t);
  return report;
}

/// Re-checks a report: certificate F-free, copy count matches, fast path reports 0.
inline bool certify(const ApproxReport& report, const ForbiddenFamily& family, const PatternSpec& t) {
  if (!is_family_free(report.certificate, family)) return false;
  if (count_copies(report.certificate, t) != report.lower_bound_count) return false;
  if (report.fast_path && report.estimate != 0) return false;
  return report.estimate >= 0;
}

}  // namespace genturan
