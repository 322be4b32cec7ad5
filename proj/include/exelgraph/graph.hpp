#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace exelgraph {

/// Index into one of the graph's sorted identifier tables. The tag keeps
/// vertex and edge indices from being mixed up.
template <typename Tag>
struct StrongIndex {
  std::uint32_t value = 0;

  constexpr StrongIndex() = default;
  constexpr explicit StrongIndex(std::size_t v) : value(static_cast<std::uint32_t>(v)) {}
  constexpr std::size_t idx() const { return value; }
  friend constexpr auto operator<=>(StrongIndex, StrongIndex) = default;
};

using Vertex = StrongIndex<struct VertexTag>;
using Edge = StrongIndex<struct EdgeTag>;

/// Syntax or semantic error in a graph document, carrying the 1-based line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Finite directed graph E = (E⁰, E¹, r, s).
///
/// Vertices and edges are stored in lexicographic order of their identifiers,
/// so index order is identifier order everywhere downstream. Immutable after
/// construction.
class Graph {
 public:
  struct EdgeSpec {
    std::string id;
    std::string range;
    std::string source;
  };

  Graph() = default;

  /// Throws std::invalid_argument on duplicate identifiers or an edge naming
  /// an undeclared vertex.
  Graph(std::vector<std::string> vertex_ids, const std::vector<EdgeSpec>& edges) {
    std::sort(vertex_ids.begin(), vertex_ids.end());
    if (std::adjacent_find(vertex_ids.begin(), vertex_ids.end()) != vertex_ids.end())
      throw std::invalid_argument("duplicate vertex identifier");
    vertex_names_ = std::move(vertex_ids);

    std::vector<EdgeSpec> sorted = edges;
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    for (std::size_t i = 0; i + 1 < sorted.size(); ++i)
      if (sorted[i].id == sorted[i + 1].id) throw std::invalid_argument("duplicate edge identifier '" + sorted[i].id + "'");

    rinv_.resize(vertex_names_.size());
    sinv_.resize(vertex_names_.size());
    for (const auto& spec : sorted) {
      const auto r = find_vertex(spec.range);
      const auto s = find_vertex(spec.source);
      if (!r) throw std::invalid_argument("edge '" + spec.id + "' uses undeclared vertex '" + spec.range + "'");
      if (!s) throw std::invalid_argument("edge '" + spec.id + "' uses undeclared vertex '" + spec.source + "'");
      const Edge e(edge_names_.size());
      edge_names_.push_back(spec.id);
      range_.push_back(*r);
      source_.push_back(*s);
      rinv_[r->idx()].push_back(e);
      sinv_[s->idx()].push_back(e);
    }
  }

  std::size_t num_vertices() const { return vertex_names_.size(); }
  std::size_t num_edges() const { return edge_names_.size(); }

  Vertex range(Edge e) const { return range_[e.idx()]; }
  Vertex source(Edge e) const { return source_[e.idx()]; }
  /// r⁻¹(v), in edge order.
  const std::vector<Edge>& edges_into(Vertex v) const { return rinv_[v.idx()]; }
  /// s⁻¹(v), in edge order.
  const std::vector<Edge>& edges_from(Vertex v) const { return sinv_[v.idx()]; }
  /// c(v) = |s⁻¹(v)|, the number of σ-preimages of any path with range v.
  std::size_t c(Vertex v) const { return sinv_[v.idx()].size(); }

  const std::string& name(Vertex v) const { return vertex_names_[v.idx()]; }
  const std::string& name(Edge e) const { return edge_names_[e.idx()]; }

  std::optional<Vertex> find_vertex(std::string_view id) const {
    auto it = std::lower_bound(vertex_names_.begin(), vertex_names_.end(), id);
    if (it == vertex_names_.end() || *it != id) return std::nullopt;
    return Vertex(static_cast<std::size_t>(it - vertex_names_.begin()));
  }
  std::optional<Edge> find_edge(std::string_view id) const {
    auto it = std::lower_bound(edge_names_.begin(), edge_names_.end(), id);
    if (it == edge_names_.end() || *it != id) return std::nullopt;
    return Edge(static_cast<std::size_t>(it - edge_names_.begin()));
  }

  std::vector<Vertex> vertices() const {
    std::vector<Vertex> out;
    for (std::size_t i = 0; i < num_vertices(); ++i) out.emplace_back(i);
    return out;
  }
  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (std::size_t i = 0; i < num_edges(); ++i) out.emplace_back(i);
    return out;
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_names_ == b.vertex_names_ && a.edge_names_ == b.edge_names_ && a.range_ == b.range_ &&
           a.source_ == b.source_;
  }

 private:
  std::vector<std::string> vertex_names_;
  std::vector<std::string> edge_names_;
  std::vector<Vertex> range_;
  std::vector<Vertex> source_;
  std::vector<std::vector<Edge>> rinv_;
  std::vector<std::vector<Edge>> sinv_;
};

namespace detail {

inline bool is_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](unsigned char ch) {
    return (ch >= 'A' && ch <= 'Z') || (ch >= 'a' && ch <= 'z') || (ch >= '0' && ch <= '9') || ch == '_';
  });
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

inline std::string attribute(const std::string& tok, std::string_view key, std::size_t line) {
  if (tok.size() <= key.size() + 1 || tok.compare(0, key.size(), key) != 0 || tok[key.size()] != '=')
    throw ParseError(line, "expected '" + std::string(key) + "=<vertex>', got '" + tok + "'");
  return tok.substr(key.size() + 1);
}

}  // namespace detail

/// Parses the line-oriented graph language:
///
///     # comment
///     vertex <id>
///     edge <id> r=<vertex> s=<vertex>
///
/// Vertices must be declared before an edge refers to them.
inline Graph parse_graph(std::string_view text) {
  std::vector<std::string> vertex_ids;
  std::vector<Graph::EdgeSpec> edges;
  std::map<std::string, std::size_t, std::less<>> declared;  // id -> line

  std::istringstream in{std::string(text)};
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto toks = detail::split_ws(line);

    auto declare = [&](const std::string& id) {
      if (!detail::is_identifier(id)) throw ParseError(lineno, "invalid identifier '" + id + "'");
      if (auto it = declared.find(id); it != declared.end())
        throw ParseError(lineno, "duplicate identifier '" + id + "' (first declared on line " +
                                     std::to_string(it->second) + ")");
      declared.emplace(id, lineno);
    };

    if (toks[0] == "vertex") {
      if (toks.size() != 2) throw ParseError(lineno, "expected 'vertex <id>'");
      declare(toks[1]);
      vertex_ids.push_back(toks[1]);
    } else if (toks[0] == "edge") {
      if (toks.size() != 4) throw ParseError(lineno, "expected 'edge <id> r=<vertex> s=<vertex>'");
      const auto r = detail::attribute(toks[2], "r", lineno);
      const auto s = detail::attribute(toks[3], "s", lineno);
      for (const auto& v : {r, s}) {
        if (std::find(vertex_ids.begin(), vertex_ids.end(), v) == vertex_ids.end())
          throw ParseError(lineno, "undeclared vertex '" + v + "'");
      }
      declare(toks[1]);
      edges.push_back({toks[1], r, s});
    } else {
      throw ParseError(lineno, "unknown declaration '" + toks[0] + "'");
    }
  }
  return Graph(std::move(vertex_ids), edges);
}

/// Serializes back to the graph language, vertices first, in identifier order.
inline std::string to_dsl(const Graph& g) {
  std::string out;
  for (auto v : g.vertices()) out += "vertex " + g.name(v) + "\n";
  for (auto e : g.edges())
    out += "edge " + g.name(e) + " r=" + g.name(g.range(e)) + " s=" + g.name(g.source(e)) + "\n";
  return out;
}

/// Standing hypotheses checked before analysis. A failing flag lists the
/// vertices that break it.
struct ValidityReport {
  bool no_sources = true;    // r⁻¹(v) ≠ ∅ for all v
  bool shift_total = true;   // s⁻¹(v) ≠ ∅ for all v
  bool row_finite = true;    // always true for finite graphs
  bool column_finite = true; // always true for finite graphs
  std::vector<Vertex> source_witnesses;
  std::vector<Vertex> sink_witnesses;

  bool ok() const { return no_sources && shift_total && row_finite && column_finite; }
};

inline ValidityReport validate(const Graph& g) {
  ValidityReport rep;
  for (auto v : g.vertices()) {
    if (g.edges_into(v).empty()) {
      rep.no_sources = false;
      rep.source_witnesses.push_back(v);
    }
    if (g.edges_from(v).empty()) {
      rep.shift_total = false;
      rep.sink_witnesses.push_back(v);
    }
  }
  return rep;
}

/// Finite path μ = μ₁…μₙ with s(μᵢ) = r(μᵢ₊₁). A length-0 path is a vertex;
/// `base` is r(μ) (equal to the vertex itself when the path is trivial).
struct Path {
  Vertex base;
  std::vector<Edge> edges;

  std::size_t length() const { return edges.size(); }
  bool empty() const { return edges.empty(); }
  Vertex range() const { return base; }
  Vertex source(const Graph& g) const { return edges.empty() ? base : g.source(edges.back()); }

  static Path trivial(Vertex v) { return {v, {}}; }
  static Path of(const Graph& g, std::vector<Edge> es) {
    if (es.empty()) throw std::invalid_argument("Path::of needs at least one edge; use Path::trivial");
    for (std::size_t i = 0; i + 1 < es.size(); ++i)
      if (g.source(es[i]) != g.range(es[i + 1]))
        throw std::invalid_argument("edges " + g.name(es[i]) + "," + g.name(es[i + 1]) + " are not composable");
    const Vertex b = g.range(es.front());
    return {b, std::move(es)};
  }

  friend bool operator==(const Path&, const Path&) = default;
  friend auto operator<=>(const Path& a, const Path& b) {
    if (auto c = a.edges <=> b.edges; c != 0) return c;
    return a.base <=> b.base;
  }
};

/// Looks up comma-separated edge identifiers, or a single vertex identifier
/// for a trivial path.
inline Path parse_path(const Graph& g, std::string_view text) {
  if (text.find(',') == std::string_view::npos) {
    if (auto v = g.find_vertex(text)) return Path::trivial(*v);
  }
  std::vector<Edge> es;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto tok = text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
    auto e = g.find_edge(tok);
    if (!e) throw std::invalid_argument("unknown edge or vertex '" + std::string(tok) + "'");
    es.push_back(*e);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return Path::of(g, std::move(es));
}

inline std::string path_string(const Graph& g, const Path& p) {
  if (p.empty()) return g.name(p.base);
  std::string out;
  for (std::size_t i = 0; i < p.edges.size(); ++i) {
    if (i) out += ',';
    out += g.name(p.edges[i]);
  }
  return out;
}

}  // namespace exelgraph
