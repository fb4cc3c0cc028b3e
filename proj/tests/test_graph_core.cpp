#include "genturan/generators.hpp"
#include "genturan/graph.hpp"
#include "genturan/graph_io.hpp"
#include "genturan/partition.hpp"
#include "genturan/pattern.hpp"
#include "genturan/weighted_graph.hpp"
#include "support/oracles.hpp"

#include <catch_amalgamated.hpp>

using namespace genturan;

TEST_CASE("parse_graph reads the edge format", "[graph-core]") {
  Graph k3 = parse_graph("p edge 3 3\ne 1 2\ne 2 3\ne 1 3\n");
  CHECK(k3 == complete_graph(3));

  Graph empty = parse_graph("c two isolated vertices\np edge 2 0\n");
  CHECK(empty.order() == 2);
  CHECK(empty.size() == 0);

  SECTION("CRLF line endings and duplicate edges") {
    Graph g = parse_graph("p edge 3 3\r\ne 2 1\r\ne 1 2\r\ne 3 2\r\n");
    CHECK(g.size() == 2);
    CHECK(g.adjacent(0, 1));
    CHECK(g.adjacent(1, 2));
  }

  SECTION("order of edge lines does not matter") {
    CHECK(parse_graph("p edge 4 2\ne 3 4\ne 1 2\n") == parse_graph("p edge 4 2\ne 1 2\ne 4 3\n"));
  }
}

TEST_CASE("parse_graph reports errors with line numbers", "[graph-core]") {
  auto line_of = [](const std::string& text) {
    try {
      parse_graph(text);
    } catch (const ParseError& err) {
      return err.line();
    }
    return std::size_t{0};
  };
  CHECK(line_of("p edge 4 1\ne 1 5\n") == 2);
  CHECK(line_of("c x\np edge 3 1\ne 2 2\n") == 3);
  CHECK(line_of("p edges 3 1\n") == 1);
  CHECK(line_of("p edge three 1\n") == 1);
  CHECK(line_of("e 1 2\np edge 3 1\n") == 1);
  CHECK(line_of("p edge 3 1\ne 1\n") == 2);
  CHECK_THROWS_AS(parse_graph("c only a comment\n"), ParseError);
}

TEST_CASE("write_graph is canonical", "[graph-core]") {
  CHECK(write_graph(complete_graph(3)) == "p edge 3 3\ne 1 2\ne 1 3\ne 2 3\n");
  CHECK(write_graph(Graph(4)) == "p edge 4 0\n");
}

TEST_CASE("parse/write round trip on random graphs", "[graph-core][property]") {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = rng() % 15;
    double p = static_cast<double>(rng() % 101) / 100.0;
    Graph g = random_graph(n, p, rng());
    CHECK(parse_graph(write_graph(g)) == g);
  }
}

TEST_CASE("weighted graph file round trip", "[graph-core]") {
  WeightedGraph w(4, {{{0, 1}, make_rational(1, 2)}, {{2, 3}, Rational(1)}, {{1, 2}, Rational(0)}});
  CHECK(w.support().size() == 2);
  CHECK(parse_weighted_graph(write_weighted_graph(w)) == w);
  CHECK_THROWS_AS(parse_weighted_graph("p wedge 2 1\ne 1 2 3/2\n"), ParseError);
}

TEST_CASE("random_graph contract", "[graph-core]") {
  CHECK(random_graph(5, 0.0, 1).size() == 0);
  CHECK(random_graph(5, 1.0, 1) == complete_graph(5));
  CHECK(random_graph(20, 0.5, 7) == random_graph(20, 0.5, 7));
  CHECK_THROWS(random_graph(3, 1.5, 0));
}

TEST_CASE("complete_multipartite", "[graph-core]") {
  CHECK(complete_multipartite({1, 1, 1}) == complete_graph(3));
  CHECK(complete_multipartite({2, 2}) == parse_graph("p edge 4 4\ne 1 3\ne 1 4\ne 2 3\ne 2 4\n"));
  Graph g = complete_multipartite({2, 2, 1});
  CHECK(g.size() == 8);
  // Triangles pick one vertex per part: 2*2*1.
  CHECK(oracle::distinct_copies(complete_graph(3), g) == 4);
  CHECK(count_copies(g, PatternSpec(complete_graph(3))) == 4);
}

TEST_CASE("blowup", "[graph-core]") {
  CHECK(blowup(complete_graph(2), 2) == complete_multipartite({2, 2}));
  Graph petersen = petersen_graph();
  CHECK(blowup(petersen, 1) == petersen);
  Graph k3x2 = blowup(complete_graph(3), 2);
  CHECK(k3x2.order() == 6);
  CHECK(k3x2.size() == 12);
  CHECK(oracle::distinct_copies(complete_graph(3), k3x2) == 8);
  CHECK(count_copies(k3x2, PatternSpec(complete_graph(3))) == 8);
}

TEST_CASE("blowup vertex and edge counts", "[graph-core][property]") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    Graph t = random_graph(1 + rng() % 6, 0.5, rng());
    std::size_t h = 1 + rng() % 4;
    Graph b = blowup(t, h);
    CHECK(b.order() == h * t.order());
    CHECK(b.size() == h * h * t.size());
  }
}

TEST_CASE("Partition invariants", "[graph-core]") {
  Partition p = Partition::equitable(10, 3);
  CHECK(p.class_count() == 3);
  CHECK(p.class_size() == 3);
  CHECK(p.exceptional().size() == 1);
  CHECK(p.class_of(9) == 0);
  CHECK(p.class_of(4) == 2);

  CHECK_THROWS(Partition(4, {{}, {0, 1}, {2}}));           // unequal sizes
  CHECK_THROWS(Partition(4, {{3}, {0}, {1, 2}}));          // unequal sizes
  CHECK_THROWS(Partition(4, {{}, {0, 1}, {1, 2}}));        // overlap
  CHECK_THROWS(Partition(5, {{}, {0, 1}, {2, 3}}));        // not covering
  CHECK_THROWS(Partition(5, {{0, 1, 4}, {2}, {3}}));       // |V0| >= k
  CHECK_NOTHROW(Partition(5, {{4}, {0, 1}, {2, 3}}));
}

TEST_CASE("Graph rejects invalid edges", "[graph-core]") {
  CHECK_THROWS(Graph(3, {{1, 1}}));
  CHECK_THROWS(Graph(3, {{0, 3}}));
  Graph g(3, {{2, 0}, {0, 2}});
  CHECK(g.size() == 1);
  CHECK(g.edges()[0] == Edge{0, 2});
}

TEST_CASE("rational parsing is exact", "[graph-core]") {
  CHECK(parse_rational("1/4") == make_rational(1, 4));
  CHECK(parse_rational("0.25") == make_rational(1, 4));
  CHECK(parse_rational("-3/6") == make_rational(-1, 2));
  CHECK(parse_rational("7") == Rational(7));
  CHECK(parse_rational(".5") == make_rational(1, 2));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK(to_string(make_rational(6, 4)) == "3/2");
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(-1, 0) == 0);
  CHECK(binomial(3, -1) == 0);
}
