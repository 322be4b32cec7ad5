#pragma once

// Fixture graphs, seeded graph generators and brute-force oracles shared by
// the unit tests. The oracles avoid the library's own
// enumeration helpers: they walk raw edge sequences and adjacency tables.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "exelgraph/graph.hpp"
#include "exelgraph/vertex_set.hpp"

namespace testing_support {

using namespace exelgraph;

inline Graph G1() { return parse_graph("vertex v\nedge e r=v s=v\n"); }
inline Graph G2() { return parse_graph("vertex v\nedge e r=v s=v\nedge f r=v s=v\n"); }
inline Graph G3() { return parse_graph("vertex u\nvertex v\nedge a r=u s=v\nedge b r=v s=u\n"); }
inline Graph G4() { return parse_graph("vertex v\nvertex w\nedge e r=v s=v\nedge h r=v s=w\nedge k r=w s=w\n"); }

inline std::vector<std::pair<std::string, Graph>> fixtures() {
  return {{"G1", G1()}, {"G2", G2()}, {"G3", G3()}, {"G4", G4()}};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name) { return std::string(EXELGRAPH_TEST_DATA) + "/" + name; }

inline Edge E(const Graph& g, const std::string& id) { return *g.find_edge(id); }
inline Vertex V(const Graph& g, const std::string& id) { return *g.find_vertex(id); }
inline Path P(const Graph& g, const std::string& text) { return parse_path(g, text); }

/// Random graph on n vertices with m edges whose endpoints are uniform;
/// retried until every vertex both receives and emits an edge.
inline Graph random_valid_graph(std::mt19937_64& rng, std::size_t n, std::size_t m) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  while (true) {
    std::vector<bool> in(n, false), out(n, false);
    std::vector<std::pair<std::size_t, std::size_t>> es(m);
    for (auto& [r, s] : es) {
      r = pick(rng);
      s = pick(rng);
      in[r] = out[s] = true;
    }
    if (std::find(in.begin(), in.end(), false) != in.end()) continue;
    if (std::find(out.begin(), out.end(), false) != out.end()) continue;
    std::string text;
    for (std::size_t i = 0; i < n; ++i) text += "vertex x" + std::to_string(i) + "\n";
    for (std::size_t i = 0; i < m; ++i)
      text += "edge f" + std::to_string(i) + " r=x" + std::to_string(es[i].first) + " s=x" + std::to_string(es[i].second) + "\n";
    return parse_graph(text);
  }
}

/// A few hundred small valid graphs: every fixture plus seeded random ones
/// with up to 4 vertices and 6 edges.
inline std::vector<Graph> small_graphs(std::size_t count = 300, std::uint64_t seed = 7) {
  std::vector<Graph> out;
  for (auto& [name, g] : fixtures()) out.push_back(g);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_n(1, 4);
  while (out.size() < count) {
    const std::size_t n = pick_n(rng);
    std::uniform_int_distribution<std::size_t> pick_m(n, std::max<std::size_t>(n, 6));
    out.push_back(random_valid_graph(rng, n, pick_m(rng)));
  }
  return out;
}

// Oracles --------------------------------------------------------------------

/// Reflexive-transitive closure of "v ≤ s(e) whenever r(e) = v", by
/// Floyd–Warshall on a boolean matrix.
inline std::vector<std::vector<bool>> reach_table(const Graph& g) {
  const std::size_t n = g.num_vertices();
  std::vector<std::vector<bool>> t(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) t[i][i] = true;
  for (auto e : g.edges()) t[g.range(e).idx()][g.source(e).idx()] = true;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (t[i][k] && t[k][j]) t[i][j] = true;
  return t;
}

/// Visits every composable edge sequence of length 1..max_len whose first
/// edge has range `start` (any range when start is unset).
template <typename Visit>
void for_each_edge_sequence(const Graph& g, std::size_t max_len, std::optional<Vertex> start, Visit&& visit) {
  std::vector<Edge> seq;
  auto rec = [&](auto&& self) -> void {
    visit(seq);
    if (seq.size() == max_len) return;
    for (auto e : g.edges()) {
      if (g.range(e) != g.source(seq.back())) continue;
      seq.push_back(e);
      self(self);
      seq.pop_back();
    }
  };
  for (auto e : g.edges()) {
    if (start && g.range(e) != *start) continue;
    seq.assign(1, e);
    rec(rec);
  }
}

/// Number of paths of length d with range v, by the recursion
/// N_d(v) = Σ_{r(e)=v} N_{d−1}(s(e)).
inline std::size_t path_count(const Graph& g, std::size_t d, Vertex v) {
  if (d == 0) return 1;
  std::size_t total = 0;
  for (auto e : g.edges())
    if (g.range(e) == v) total += path_count(g, d - 1, g.source(e));
  return total;
}

/// Simple cycles found by trying every edge sequence of length ≤ |E⁰|,
/// each rotated to start at its smallest edge.
inline std::set<std::vector<Edge>> brute_simple_cycles(const Graph& g) {
  std::set<std::vector<Edge>> out;
  for_each_edge_sequence(g, g.num_vertices(), std::nullopt, [&](const std::vector<Edge>& seq) {
    if (g.source(seq.back()) != g.range(seq.front())) return;
    std::set<Vertex> seen;
    for (auto e : seq) seen.insert(g.range(e));
    if (seen.size() != seq.size()) return;
    auto best = seq;
    auto rot = seq;
    for (std::size_t k = 1; k < rot.size(); ++k) {
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
      best = std::min(best, rot);
    }
    out.insert(best);
  });
  return out;
}

/// Return paths at v of length ≤ max_len: closed at v and not visiting v in
/// between. Counting stops at `cap`.
inline std::size_t brute_return_paths(const Graph& g, Vertex v, std::size_t max_len, std::size_t cap = 2) {
  std::size_t count = 0;
  std::vector<Edge> seq;
  auto rec = [&](auto&& self, Vertex at) -> void {
    if (count >= cap) return;
    for (auto e : g.edges()) {
      if (g.range(e) != at) continue;
      const Vertex next = g.source(e);
      if (next == v) {
        ++count;
        if (count >= cap) return;
        continue;
      }
      if (seq.size() + 1 >= max_len) continue;
      seq.push_back(e);
      self(self, next);
      seq.pop_back();
    }
  };
  rec(rec, v);
  return count;
}

inline bool brute_hereditary(const Graph& g, std::uint64_t mask) {
  for (auto e : g.edges())
    if ((mask >> g.range(e).idx() & 1U) && !(mask >> g.source(e).idx() & 1U)) return false;
  return true;
}

inline bool brute_saturated(const Graph& g, std::uint64_t mask) {
  for (auto v : g.vertices()) {
    if (mask >> v.idx() & 1U) continue;
    bool any = false, all_in = true;
    for (auto e : g.edges())
      if (g.range(e) == v) {
        any = true;
        all_in = all_in && (mask >> g.source(e).idx() & 1U);
      }
    if (any && all_in) return false;
  }
  return true;
}

/// (MH1)–(MH3) read off the reach table.
inline bool brute_maximal_head(const Graph& g, std::uint64_t mask) {
  if (mask == 0) return false;
  const auto t = reach_table(g);
  const std::size_t n = g.num_vertices();
  auto in = [&](std::size_t i) { return (mask >> i & 1U) != 0; };
  for (std::size_t w = 0; w < n; ++w)
    for (std::size_t v = 0; v < n; ++v)
      if (in(w) && t[v][w] && !in(v)) return false;
  for (std::size_t v = 0; v < n; ++v) {
    if (!in(v)) continue;
    bool ok = false;
    for (auto e : g.edges()) ok = ok || (g.range(e).idx() == v && in(g.source(e).idx()));
    if (!ok) return false;
  }
  for (std::size_t v = 0; v < n; ++v)
    for (std::size_t w = 0; w < n; ++w) {
      if (!in(v) || !in(w)) continue;
      bool ok = false;
      for (std::size_t y = 0; y < n; ++y) ok = ok || (in(y) && t[v][y] && t[w][y]);
      if (!ok) return false;
    }
  return true;
}

/// Every vertex reaches every vertex that lies on a closed walk.
inline bool brute_cofinal(const Graph& g) {
  const auto t = reach_table(g);
  for (auto u : g.vertices()) {
    bool on_cycle = false;
    for (auto e : g.edges()) on_cycle = on_cycle || (g.range(e) == u && t[g.source(e).idx()][u.idx()]);
    if (!on_cycle) continue;
    for (auto v : g.vertices())
      if (!t[v.idx()][u.idx()]) return false;
  }
  return true;
}

}  // namespace testing_support
