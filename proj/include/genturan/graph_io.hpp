#pragma once

#include "genturan/graph.hpp"
#include "genturan/rational.hpp"
#include "genturan/weighted_graph.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace genturan {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

namespace detail {

inline std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.emplace_back(line.substr(start, i - start));
  }
  return tokens;
}

inline unsigned long long parse_index(const std::string& token, std::size_t line) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError(line, "expected a non-negative integer, got '" + token + "'");
  try {
    return std::stoull(token);
  } catch (const std::exception&) {
    throw ParseError(line, "integer out of range: '" + token + "'");
  }
}

// Shared reader for the "p <kind> n m" / "e u v [extra]" family of formats.
template <class OnEdge>
std::size_t read_edge_file(std::string_view text, std::string_view kind, std::size_t extra_fields, OnEdge&& on_edge) {
  bool have_header = false;
  std::size_t n = 0;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0] == "c") continue;
    if (tokens[0] == "p") {
      if (have_header) throw ParseError(line_no, "duplicate problem line");
      if (tokens.size() != 4 || tokens[1] != kind)
        throw ParseError(line_no, "malformed header, expected 'p " + std::string(kind) + " <n> <m>'");
      n = parse_index(tokens[2], line_no);
      parse_index(tokens[3], line_no);
      have_header = true;
    } else if (tokens[0] == "e") {
      if (!have_header) throw ParseError(line_no, "edge line before header");
      if (tokens.size() != 3 + extra_fields) throw ParseError(line_no, "malformed edge line");
      auto u = parse_index(tokens[1], line_no);
      auto v = parse_index(tokens[2], line_no);
      if (u < 1 || v < 1 || u > n || v > n) throw ParseError(line_no, "vertex out of range");
      if (u == v) throw ParseError(line_no, "self-loop");
      on_edge(Edge::of(static_cast<Vertex>(u - 1), static_cast<Vertex>(v - 1)),
              std::vector<std::string>(tokens.begin() + 3, tokens.end()), line_no);
    } else {
      throw ParseError(line_no, "unrecognised line type '" + tokens[0] + "'");
    }
    if (end == text.size()) break;
  }
  if (!have_header) throw ParseError(line_no, "missing 'p " + std::string(kind) + "' header");
  return n;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace detail

/// Reads the DIMACS-like edge format: "c ..." comments, one "p edge n m", then "e u v" (1-indexed).
inline Graph parse_graph(std::string_view text) {
  std::vector<Edge> edges;
  std::size_t n = detail::read_edge_file(text, "edge", 0, [&](Edge e, const auto&, std::size_t) { edges.push_back(e); });
  return Graph(n, std::move(edges));
}

/// Canonical listing: header plus edges in sorted order.
inline std::string write_graph(const Graph& g) {
  std::string out = "p edge " + std::to_string(g.order()) + " " + std::to_string(g.size()) + "\n";
  for (const auto& e : g.edges()) out += "e " + std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) + "\n";
  return out;
}

/// Weighted variant: "p wedge n m" then "e u v w" with w a rational in [0,1].
inline WeightedGraph parse_weighted_graph(std::string_view text) {
  std::vector<std::pair<Edge, Rational>> entries;
  std::size_t n = detail::read_edge_file(text, "wedge", 1, [&](Edge e, const std::vector<std::string>& extra, std::size_t line) {
    Rational w;
    try {
      w = parse_rational(extra[0]);
    } catch (const std::invalid_argument& err) {
      throw ParseError(line, err.what());
    }
    if (w < 0 || w > 1) throw ParseError(line, "weight outside [0,1]");
    entries.emplace_back(e, w);
  });
  try {
    return WeightedGraph(n, std::move(entries));
  } catch (const std::invalid_argument& err) {
    throw ParseError(0, err.what());
  }
}

inline std::string write_weighted_graph(const WeightedGraph& w) {
  const Graph& s = w.support();
  std::string out = "p wedge " + std::to_string(s.order()) + " " + std::to_string(s.size()) + "\n";
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Edge& e = s.edges()[i];
    out += "e " + std::to_string(e.u + 1) + " " + std::to_string(e.v + 1) + " " + to_string(w.weight_at(i)) + "\n";
  }
  return out;
}

inline Graph load_graph(const std::string& path) { return parse_graph(detail::read_file(path)); }
inline WeightedGraph load_weighted_graph(const std::string& path) {
  return parse_weighted_graph(detail::read_file(path));
}

}  // namespace genturan
