// genturan: command-line front end for the generalized Turán toolkit.

#include "genturan/genturan.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace genturan;
using Json = nlohmann::ordered_json;

constexpr int kSchemaVersion = 1;
constexpr int kExitUsage = 2;
constexpr int kExitFailure = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ComputationFailure : public std::runtime_error {
 public:
  ComputationFailure(const std::string& what, Json partial) : std::runtime_error(what), partial_(std::move(partial)) {}
  const Json& partial() const { return partial_; }

 private:
  Json partial_;
};

struct Flags {
  std::string graph;
  std::string pattern;
  std::string forbid;
  std::string eps;
  std::string budget;
  std::string d;
  std::string set_a;
  std::string set_b;
  std::size_t t = 0;
  std::size_t k = 0;
  std::size_t m = 0;
  std::size_t s = 0;
  std::size_t b = 0;
  std::size_t k_cap = 12;
  std::size_t min_classes = 2;
  std::uint64_t seed = 0;
  std::uint64_t node_budget = 10'000'000;
  unsigned threads = 1;
  bool json = false;
  bool force_regularity = false;
  bool exact_check = false;
};

template <class F>
auto as_usage(const std::string& what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::exception& e) {
    throw UsageError(what + ": " + e.what());
  }
}

Graph input_graph(const Flags& f) {
  if (f.graph.empty()) throw UsageError("--graph is required");
  return as_usage("cannot read graph", [&] { return load_graph(f.graph); });
}

WeightedGraph input_weighted(const Flags& f) {
  if (f.graph.empty()) throw UsageError("--graph is required");
  return as_usage("cannot read weighted graph", [&] { return load_weighted_graph(f.graph); });
}

PatternSpec input_pattern(const Flags& f) {
  if (f.pattern.empty()) throw UsageError("--T is required");
  return as_usage("invalid --T", [&] { return PatternSpec(parse_pattern(f.pattern)); });
}

ForbiddenFamily input_family(const Flags& f) {
  if (f.forbid.empty()) throw UsageError("--forbid is required");
  return as_usage("invalid --forbid", [&] { return parse_family(f.forbid); });
}

Rational input_rational(const std::string& text, const std::string& flag) {
  if (text.empty()) throw UsageError(flag + " is required");
  return as_usage("invalid " + flag, [&] { return parse_rational(text); });
}

VertexSet input_set(const std::string& text, std::size_t n, const std::string& flag) {
  VertexSet out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto v = as_usage("invalid " + flag, [&] { return std::stoull(item); });
    if (v < 1 || v > n) throw UsageError(flag + ": vertex " + item + " out of range");
    out.push_back(static_cast<Vertex>(v - 1));
  }
  return out;
}

Json vertex_list(const VertexSet& vs) {
  Json out = Json::array();
  for (Vertex v : vs) out.push_back(v + 1);
  return out;
}

Json header(const std::string& command) {
  Json j;
  j["schemaVersion"] = kSchemaVersion;
  j["command"] = command;
  return j;
}

SearchOptions search_options(const Flags& f) {
  SearchOptions options;
  options.node_budget = f.node_budget;
  options.threads = f.threads;
  return options;
}

Json partition_json(const Partition& p) {
  Json classes = Json::array();
  for (const auto& c : p.classes()) classes.push_back(vertex_list(c));
  return classes;
}

Json params_json(const ParameterSet& p) {
  Json j;
  j["eps"] = to_string(p.eps);
  j["eps0"] = to_string(p.eps0);
  j["delta"] = p.delta;
  j["dEmb"] = p.d_emb;
  j["dThreshold"] = to_string(p.d_threshold);
  j["dEmbClamped"] = p.d_emb_clamped;
  j["mEmb"] = to_string(p.m_emb);
  j["kMin"] = p.k_min;
  j["kCap"] = p.k_cap;
  j["n0"] = p.n0;
  j["r"] = p.r;
  j["deltaMult"] = to_string(p.delta_mult);
  return j;
}

Json approx_json(const ApproxReport& r) {
  Json j;
  j["estimate"] = to_string(r.estimate);
  j["lowerBoundCount"] = r.lower_bound_count;
  j["certificate"] = write_graph(r.certificate);
  j["editsApplied"] = r.edits_applied;
  j["k"] = r.k;
  j["fastPath"] = r.fast_path;
  j["path"] = to_string(r.path);
  j["achievedEps"] = to_string(r.achieved_eps);
  j["certifiedLevel"] = r.certified_level;
  j["params"] = params_json(r.params);
  return j;
}

Json verdict_json(const RegularityVerdict& v) {
  Json j;
  j["regular"] = v.regular;
  j["certifiedLevel"] = v.certified_level;
  if (v.witness) {
    j["witness"] = {{"A", vertex_list(v.witness->a_sub)},
                    {"B", vertex_list(v.witness->b_sub)},
                    {"deviation", to_string(v.witness->deviation)}};
  } else {
    j["witness"] = nullptr;
  }
  return j;
}

// Commands ------------------------------------------------------------------

Json run_count(const Flags& f) {
  Graph g = input_graph(f);
  PatternSpec t = input_pattern(f);
  Json j = header("count");
  j["count"] = count_copies(g, t, f.threads);
  return j;
}

Json run_exact(const Flags& f) {
  Graph g = input_graph(f);
  PatternSpec t = input_pattern(f);
  ForbiddenFamily fam = input_family(f);
  Json j = header("exact");
  try {
    auto result = exact_ex(g, t, fam, search_options(f));
    j["complete"] = true;
    j["value"] = result.value;
    j["witness"] = write_graph(result.witness);
    j["nodesExplored"] = result.nodes_explored;
  } catch (const SearchIncomplete& e) {
    j["complete"] = false;
    j["lowerBound"] = to_string(e.best_value());
    j["witness"] = write_graph(std::get<Graph>(e.best_witness()));
    j["nodesExplored"] = e.nodes();
    throw ComputationFailure(e.what(), j);
  }
  return j;
}

Json run_exhom(const Flags& f) {
  WeightedGraph w = input_weighted(f);
  PatternSpec t = input_pattern(f);
  ForbiddenFamily fam = input_family(f);
  Json j = header("exhom");
  try {
    auto result = exact_ex_hom(w, t, fam, search_options(f));
    j["complete"] = true;
    j["value"] = to_string(result.value);
    j["witness"] = write_weighted_graph(result.witness);
    j["nodesExplored"] = result.nodes_explored;
  } catch (const SearchIncomplete& e) {
    j["complete"] = false;
    j["lowerBound"] = to_string(e.best_value());
    j["witness"] = write_weighted_graph(std::get<WeightedGraph>(e.best_witness()));
    j["nodesExplored"] = e.nodes();
    throw ComputationFailure(e.what(), j);
  }
  return j;
}

Json run_approx(const Flags& f) {
  Graph g = input_graph(f);
  PatternSpec t = input_pattern(f);
  ForbiddenFamily fam = input_family(f);
  Rational eps = input_rational(f.eps, "--eps");
  if (eps <= 0 || eps >= 1) throw UsageError("--eps must lie in (0,1)");
  ApproxOptions options;
  options.k_cap = f.k_cap;
  options.seed = f.seed;
  options.threads = f.threads;
  options.node_budget = f.node_budget;
  options.force_regularity = f.force_regularity;
  if (!f.budget.empty()) options.budget = input_rational(f.budget, "--budget");
  if (!f.d.empty()) options.d = input_rational(f.d, "--d");
  Json j = header("approx");
  try {
    ApproxReport report = approx_ex(g, t, fam, eps, options);
    j.update(approx_json(report));
    j["certified"] = certify(report, fam, t);
  } catch (const ApproxError& e) {
    j.update(approx_json(e.partial()));
    throw ComputationFailure(e.what(), j);
  }
  return j;
}

Json run_star_max_edges(const Flags& f) {
  Graph g = input_graph(f);
  if (f.t < 1) throw UsageError("--t must be at least 1");
  auto result = max_edges_bounded_degree(g, f.t);
  Json j = header("star-max-edges");
  j["t"] = f.t;
  j["value"] = result.value;
  j["witness"] = write_graph(result.witness);
  return j;
}

Json run_matching_copies(const Flags& f) {
  Graph g = input_graph(f);
  if (f.k < 1) throw UsageError("--k must be at least 1");
  Matching m = max_matching(g);
  Json j = header("matching-copies");
  j["k"] = f.k;
  j["matchingSize"] = m.size();
  j["value"] = ex_matchings(g, f.k);
  Json edges = Json::array();
  for (const auto& e : m.edges) edges.push_back({e.u + 1, e.v + 1});
  j["matching"] = edges;
  return j;
}

Json run_regularity_check(const Flags& f) {
  Graph g = input_graph(f);
  Rational eps = input_rational(f.eps, "--eps");
  if (eps <= 0) throw UsageError("--eps must be positive");
  Json j = header("regularity check");
  j["eps"] = to_string(eps);
  auto check = [&](const VertexSet& a, const VertexSet& b) {
    return f.exact_check ? check_regular_exact(g, a, b, eps) : check_regular_witness(g, a, b, eps);
  };
  j["checker"] = f.exact_check ? "exact" : "witness";
  if (!f.set_a.empty() || !f.set_b.empty()) {
    VertexSet a = input_set(f.set_a, g.order(), "--a");
    VertexSet b = input_set(f.set_b, g.order(), "--b");
    auto verdict = as_usage("invalid pair", [&] { return check(a, b); });
    j["density"] = to_string(density(g, a, b));
    j.update(verdict_json(verdict));
    return j;
  }
  std::size_t k = f.min_classes;
  if (k < 2 || k > g.order()) throw UsageError("--min-classes must lie in [2, n]");
  Partition p = Partition::equitable(g.order(), k);
  j["partition"] = partition_json(p);
  Json pairs = Json::array();
  std::size_t irregular = 0;
  for (std::size_t i = 1; i <= k; ++i)
    for (std::size_t l = i + 1; l <= k; ++l) {
      auto verdict = as_usage("invalid pair", [&] { return check(p.cls(i), p.cls(l)); });
      irregular += !verdict.regular;
      Json pair{{"i", i}, {"j", l}, {"density", to_string(density(g, p.cls(i), p.cls(l)))}};
      pair.update(verdict_json(verdict));
      pairs.push_back(pair);
    }
  j["irregularPairs"] = irregular;
  j["pairs"] = pairs;
  return j;
}

Json run_regularity_partition(const Flags& f) {
  Graph g = input_graph(f);
  Rational eps = input_rational(f.eps, "--eps");
  Rational budget = f.budget.empty() ? eps : input_rational(f.budget, "--budget");
  Rational d = f.d.empty() ? Rational(0) : input_rational(f.d, "--d");
  RefineOptions options;
  options.k_cap = f.k_cap;
  options.seed = f.seed;
  Json j = header("regularity partition");
  j["eps"] = to_string(eps);
  j["budget"] = to_string(budget);
  EditedPartition edited = [&] {
    try {
      return refine_partition(g, eps, f.min_classes, budget, options);
    } catch (const RefinementError& e) {
      Json partial = j;
      partial["partition"] = partition_json(e.best_partition());
      partial["irregularPairs"] = e.irregular_pairs();
      partial["editsNeeded"] = e.edits_needed();
      throw ComputationFailure(e.what(), partial);
    }
  }();
  j["k"] = edited.partition.class_count();
  j["partition"] = partition_json(edited.partition);
  j["editsApplied"] = edited.edits_applied;
  j["achievedEps"] = to_string(edited.achieved_eps);
  j["certifiedLevel"] = edited.certified_level;
  auto pg = build_partition_graph(edited.g_star, edited.partition, edited.achieved_eps, d);
  j["d"] = to_string(d);
  j["partitionGraph"] = write_weighted_graph(pg.w);
  j["gStar"] = write_graph(edited.g_star);
  return j;
}

Json run_gadget_np(const Flags& f) {
  Graph g = input_graph(f);
  auto gadget = as_usage("invalid gadget parameters", [&] { return build_np_gadget(g, f.m, f.k, f.s); });
  std::size_t b = f.b ? f.b : g.order();
  Json j = header("gadget np");
  j["m"] = f.m;
  j["k"] = f.k;
  j["s"] = f.s;
  j["r"] = gadget.r();
  j["innerVertices"] = g.order();
  Json u_sets = Json::array();
  for (const auto& u : gadget.u_sets) u_sets.push_back(vertex_list(u));
  j["uSets"] = u_sets;
  j["perMissingEdgeKmCount"] = per_missing_edge_km_count(f.m, gadget.r(), f.s).str();
  if (g.order() > 0) {
    auto bounds = gadget_bounds(g, f.m, f.k, f.s, b);
    j["b"] = b;
    j["outer1"] = bounds.outer1 ? Json(to_string(*bounds.outer1)) : Json(nullptr);
    j["outer2"] = bounds.outer2 ? Json(to_string(*bounds.outer2)) : Json(nullptr);
    j["inner"] = to_string(bounds.inner);
    j["chooseScale"] = choose_scale(g, f.m, f.k);
  }
  j["host"] = write_graph(gadget.host);
  return j;
}

Json run_gadget_blowup(const Flags& f) {
  Graph g = input_graph(f);
  PatternSpec t = input_pattern(f);
  auto gadget = as_usage("invalid gadget parameters", [&] { return build_blowup_gadget(g, t.graph(), f.s); });
  Json j = header("gadget blowup");
  j["s"] = f.s;
  j["removedEdge"] = {gadget.removed.u + 1, gadget.removed.v + 1};
  j["tPrimeVertices"] = vertex_list(gadget.t_prime_vertices);
  Json attach = Json::array();
  for (const auto& [first, second] : gadget.attach) attach.push_back({first, second});
  j["attach"] = attach;
  j["host"] = write_graph(gadget.host);
  return j;
}

Json run_selftest(const Flags&) {
  struct Check {
    const char* name;
    std::function<bool()> run;
  };
  PatternSpec k2(complete_graph(2));
  ForbiddenFamily triangle({complete_graph(3)});
  std::vector<Check> checks{
      {"count K3 in K4", [] { return count_copies(complete_graph(4), PatternSpec(complete_graph(3))) == 4; }},
      {"Mantel K6", [&] { return exact_ex(complete_graph(6), k2, triangle).value == 9; }},
      {"matching Petersen", [] { return max_matching(petersen_graph()).size() == 5; }},
      {"degree bound K5 t=2", [] { return max_edges_bounded_degree(complete_graph(5), 2).value == 5; }},
      {"block pair irregular", [] {
         std::vector<Edge> edges;
         for (Vertex x = 0; x < 4; ++x)
           for (Vertex y = 8; y < 12; ++y) edges.push_back({x, y});
         VertexSet a{0, 1, 2, 3, 4, 5, 6, 7}, b{8, 9, 10, 11, 12, 13, 14, 15};
         return !check_regular_witness(Graph(16, edges), a, b, make_rational(2, 5)).regular;
       }},
      {"gadget recovery K4", [] {
         auto gadget = build_np_gadget(complete_graph(4), 3, 5, 1);
         Count bar = ex_bar(gadget.host, PatternSpec(complete_graph(3)), ForbiddenFamily({complete_graph(5)}));
         return recover_ex_from_gadget(BigInt(bar), BigInt(km_copies_with_three_inner(gadget)), 3, 2, 1) == 2;
       }},
  };
  Json j = header("selftest");
  Json results = Json::array();
  bool all = true;
  for (const auto& c : checks) {
    bool ok = c.run();
    all &= ok;
    results.push_back({{"check", c.name}, {"pass", ok}});
  }
  j["checks"] = results;
  j["pass"] = all;
  if (!all) throw ComputationFailure("selftest failed", j);
  return j;
}

// Output --------------------------------------------------------------------

void print_text(std::ostream& out, const Json& j, const std::string& indent = "") {
  for (auto it = j.begin(); it != j.end(); ++it) {
    const Json& v = it.value();
    if (v.is_string()) {
      const std::string& s = v.get_ref<const std::string&>();
      if (s.find('\n') != std::string::npos) {
        out << indent << it.key() << ":\n";
        std::istringstream lines(s);
        std::string line;
        while (std::getline(lines, line)) out << indent << "  " << line << "\n";
      } else {
        out << indent << it.key() << ": " << s << "\n";
      }
    } else if (v.is_object()) {
      out << indent << it.key() << ":\n";
      print_text(out, v, indent + "  ");
    } else {
      out << indent << it.key() << ": " << v.dump() << "\n";
    }
  }
}

void emit(const Json& j, bool json) {
  if (json) std::cout << j.dump(2) << "\n";
  else print_text(std::cout, j);
}

}  // namespace

int main(int argc, char** argv) {
  Flags f;
  CLI::App app{"Generalized Turán numbers ex(G,T,F): counting, exact search, approximation and gadgets", "genturan"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "Show help for every command");

  auto common = [&](CLI::App* cmd) {
    cmd->add_flag("--json", f.json, "Emit a JSON report");
    cmd->add_option("--threads", f.threads, "Worker threads (output does not depend on it)")->check(CLI::Range(1u, 256u));
    cmd->add_option("--seed", f.seed, "Seed for every random choice");
  };
  auto graph_opt = [&](CLI::App* cmd, const char* what = "Graph file (p edge n m / e u v)") {
    cmd->add_option("--graph", f.graph, what)->required();
  };
  auto node_budget = [&](CLI::App* cmd) {
    cmd->add_option("--node-budget", f.node_budget, "Branch-and-bound node budget per subtree");
  };

  auto* count = app.add_subcommand("count", "Copies of T in the graph");
  graph_opt(count);
  count->add_option("--T", f.pattern, "Pattern (K3, C5, P4, S3, M2 or @file)")->required();
  common(count);

  auto* exact = app.add_subcommand("exact", "Exact ex(G,T,F) by branch and bound");
  graph_opt(exact);
  exact->add_option("--T", f.pattern, "Pattern")->required();
  exact->add_option("--forbid", f.forbid, "Comma-separated forbidden patterns")->required();
  node_budget(exact);
  common(exact);

  auto* exhom = app.add_subcommand("exhom", "Exact ex_hom(W,T,F) on a weighted graph");
  graph_opt(exhom, "Weighted graph file (p wedge n m / e u v w)");
  exhom->add_option("--T", f.pattern, "Pattern")->required();
  exhom->add_option("--forbid", f.forbid, "Comma-separated forbidden patterns")->required();
  node_budget(exhom);
  common(exhom);

  auto* approx = app.add_subcommand("approx", "Approximate ex(G,T,F) within eps n^t");
  graph_opt(approx);
  approx->add_option("--T", f.pattern, "Pattern")->required();
  approx->add_option("--forbid", f.forbid, "Comma-separated forbidden patterns")->required();
  approx->add_option("--eps", f.eps, "Accuracy in (0,1), as a/b or decimal")->required();
  approx->add_option("--budget", f.budget, "Edit budget as a fraction of n^2 (default eps)");
  approx->add_option("--k-cap", f.k_cap, "Largest class count")->check(CLI::PositiveNumber);
  approx->add_option("--d", f.d, "Density threshold for the partition graph");
  approx->add_flag("--force-regularity", f.force_regularity, "Use the regularity path even for small graphs");
  node_budget(approx);
  common(approx);

  auto* star = app.add_subcommand("star-max-edges", "ex(G,K2,K_{1,t+1}): largest subgraph of maximum degree t");
  graph_opt(star);
  star->add_option("--t", f.t, "Degree bound")->required();
  common(star);

  auto* matching = app.add_subcommand("matching-copies", "ex(G,kK2,K_{1,2}) = C(nu(G),k)");
  graph_opt(matching);
  matching->add_option("--k", f.k, "Matching size")->required();
  common(matching);

  auto* regularity = app.add_subcommand("regularity", "Regularity checks and partitions");
  regularity->require_subcommand(1);
  auto* check = regularity->add_subcommand("check", "Check a pair, or all pairs of an equitable partition");
  graph_opt(check);
  check->add_option("--eps", f.eps, "Regularity parameter")->required();
  check->add_option("--a", f.set_a, "First set, comma-separated 1-indexed vertices");
  check->add_option("--b", f.set_b, "Second set");
  check->add_option("--min-classes", f.min_classes, "Classes of the equitable partition when no pair is given");
  check->add_flag("--exact", f.exact_check, "Exhaustive check (at most 16 vertices per side)");
  common(check);
  auto* partition = regularity->add_subcommand("partition", "Regular partition with edge edits");
  graph_opt(partition);
  partition->add_option("--eps", f.eps, "Regularity parameter")->required();
  partition->add_option("--min-classes", f.min_classes, "Smallest class count l");
  partition->add_option("--budget", f.budget, "Edit budget as a fraction of n^2 (default eps)");
  partition->add_option("--k-cap", f.k_cap, "Largest class count");
  partition->add_option("--d", f.d, "Density threshold for the partition graph (default 0)");
  common(partition);

  auto* gadget = app.add_subcommand("gadget", "Reduction gadgets");
  gadget->require_subcommand(1);
  auto* np = gadget->add_subcommand("np", "G+ with r = k-3 sets of size s");
  graph_opt(np);
  np->add_option("--m", f.m, "Clique size m")->required();
  np->add_option("--k", f.k, "Forbidden clique size k")->required();
  np->add_option("--s", f.s, "Set size")->required();
  np->add_option("--b", f.b, "Vertex cover size for the bounds (default n)");
  common(np);
  auto* blowup = gadget->add_subcommand("blowup", "Blow-up attachment gadget");
  graph_opt(blowup);
  blowup->add_option("--T", f.pattern, "Pattern T")->required();
  blowup->add_option("--s", f.s, "Set size")->required();
  common(blowup);

  auto* selftest = app.add_subcommand("selftest", "Run built-in sanity checks");
  common(selftest);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    Json report;
    if (count->parsed()) report = run_count(f);
    else if (exact->parsed()) report = run_exact(f);
    else if (exhom->parsed()) report = run_exhom(f);
    else if (approx->parsed()) report = run_approx(f);
    else if (star->parsed()) report = run_star_max_edges(f);
    else if (matching->parsed()) report = run_matching_copies(f);
    else if (check->parsed()) report = run_regularity_check(f);
    else if (partition->parsed()) report = run_regularity_partition(f);
    else if (np->parsed()) report = run_gadget_np(f);
    else if (blowup->parsed()) report = run_gadget_blowup(f);
    else if (selftest->parsed()) report = run_selftest(f);
    emit(report, f.json);
    return 0;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ComputationFailure& e) {
    emit(e.partial(), f.json);
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
}
