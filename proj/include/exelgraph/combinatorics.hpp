#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "exelgraph/graph.hpp"
#include "exelgraph/vertex_set.hpp"

namespace exelgraph {

/// All paths of length `depth` (trivial paths when depth is 0), optionally
/// restricted to range `start`. Output is lexicographic in edge identifiers:
/// each level is built by extending an already sorted level with edges of
/// r⁻¹(s(μ)) in identifier order.
inline std::vector<Path> enumerate_paths(const Graph& g, std::size_t depth, std::optional<Vertex> start = {}) {
  std::vector<Path> level;
  if (depth == 0) {
    for (auto v : g.vertices())
      if (!start || *start == v) level.push_back(Path::trivial(v));
    return level;
  }
  for (auto e : g.edges())
    if (!start || g.range(e) == *start) level.push_back({g.range(e), {e}});
  for (std::size_t d = 1; d < depth; ++d) {
    std::vector<Path> next;
    for (const auto& p : level) {
      for (auto e : g.edges_into(p.source(g))) {
        Path q = p;
        q.edges.push_back(e);
        next.push_back(std::move(q));
      }
    }
    level = std::move(next);
  }
  return level;
}

/// Rotates a closed path so it starts at its smallest edge index.
inline Path canonical_rotation(const Graph& g, const Path& cycle) {
  auto es = cycle.edges;
  std::vector<Edge> best = es;
  for (std::size_t k = 1; k < es.size(); ++k) {
    std::rotate(es.begin(), es.begin() + 1, es.end());
    if (es < best) best = es;
  }
  return {g.range(best.front()), best};
}

/// Every simple cycle (pairwise distinct vertices r(μ₁),…,r(μₙ)) exactly once,
/// each in its canonical rotation, sorted.
inline std::vector<Path> simple_cycles(const Graph& g) {
  std::vector<Path> out;
  std::vector<Edge> stack;
  std::vector<bool> on_path(g.num_vertices(), false);

  // Each cycle is found once, rooted at its smallest vertex.
  auto dfs = [&](auto&& self, Vertex root, Vertex at) -> void {
    for (auto e : g.edges_into(at)) {
      const Vertex next = g.source(e);
      if (next == root) {
        stack.push_back(e);
        out.push_back(canonical_rotation(g, {root, stack}));
        stack.pop_back();
      } else if (next > root && !on_path[next.idx()]) {
        on_path[next.idx()] = true;
        stack.push_back(e);
        self(self, root, next);
        stack.pop_back();
        on_path[next.idx()] = false;
      }
    }
  };
  for (auto v : g.vertices()) {
    on_path[v.idx()] = true;
    dfs(dfs, v, v);
    on_path[v.idx()] = false;
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Edges e ≠ μⱼ with r(e) = r(μⱼ); with `within`, only those with s(e) ∈ M.
inline std::vector<Edge> cycle_entries(const Graph& g, const Path& cycle,
                                       const std::optional<VertexSet>& within = std::nullopt) {
  std::vector<Edge> out;
  for (auto mu_j : cycle.edges) {
    for (auto e : g.edges_into(g.range(mu_j))) {
      if (e == mu_j) continue;
      if (within && !within->contains(g.source(e))) continue;
      out.push_back(e);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct ConditionL {
  bool holds = true;
  std::optional<Path> entryless_cycle;
};

/// Condition (L): every cycle has an entry.
inline ConditionL condition_L(const Graph& g) {
  for (const auto& c : simple_cycles(g))
    if (cycle_entries(g, c).empty()) return {false, c};
  return {};
}

/// The preorder v ≤ w: some path μ has r(μ) = v and s(μ) = w. Reflexive via
/// trivial paths.
class Reachability {
 public:
  explicit Reachability(const Graph& g) : n_(g.num_vertices()), reach_(n_ * n_, false), on_cycle_(n_, false) {
    std::vector<Vertex> queue;
    for (auto v : g.vertices()) {
      queue.assign(1, v);
      reach_[v.idx() * n_ + v.idx()] = true;
      while (!queue.empty()) {
        const Vertex x = queue.back();
        queue.pop_back();
        for (auto e : g.edges_into(x)) {
          const Vertex y = g.source(e);
          if (y == v) on_cycle_[v.idx()] = true;
          if (!reach_[v.idx() * n_ + y.idx()]) {
            reach_[v.idx() * n_ + y.idx()] = true;
            queue.push_back(y);
          }
        }
      }
    }
  }

  bool operator()(Vertex v, Vertex w) const { return reach_[v.idx() * n_ + w.idx()]; }
  /// True iff a path of positive length runs from v back to v.
  bool on_cycle(Vertex v) const { return on_cycle_[v.idx()]; }

 private:
  std::size_t n_;
  std::vector<bool> reach_;
  std::vector<bool> on_cycle_;
};

inline bool reaches(const Graph& g, Vertex v, Vertex w) { return Reachability(g)(v, w); }

enum class ReturnPaths { None, One, Many };

inline const char* to_string(ReturnPaths r) {
  switch (r) {
    case ReturnPaths::None: return "0";
    case ReturnPaths::One: return "1";
    case ReturnPaths::Many: return "many";
  }
  return "?";
}

/// Classifies the return paths at v (paths with r(μ) = s(μ) = v that do not
/// pass through v in between).
///
/// R_v is the set of edges lying on some return path: reachable from v and
/// co-reachable to v with v split into an exit copy and an entry copy. There
/// is exactly one return path iff the walk out of v is forced, i.e. every
/// vertex of R_v has a single R_v-edge with that range.
inline ReturnPaths count_return_paths(const Graph& g, Vertex v) {
  const std::size_t n = g.num_vertices();
  std::vector<bool> fwd(n, false), bwd(n, false);
  std::vector<Vertex> queue;

  for (auto e : g.edges_into(v)) {
    const Vertex y = g.source(e);
    if (y != v && !fwd[y.idx()]) fwd[y.idx()] = true, queue.push_back(y);
  }
  while (!queue.empty()) {
    const Vertex x = queue.back();
    queue.pop_back();
    for (auto e : g.edges_into(x)) {
      const Vertex y = g.source(e);
      if (y != v && !fwd[y.idx()]) fwd[y.idx()] = true, queue.push_back(y);
    }
  }
  for (auto e : g.edges_from(v)) {
    const Vertex y = g.range(e);
    if (y != v && !bwd[y.idx()]) bwd[y.idx()] = true, queue.push_back(y);
  }
  while (!queue.empty()) {
    const Vertex x = queue.back();
    queue.pop_back();
    for (auto e : g.edges_from(x)) {
      const Vertex y = g.range(e);
      if (y != v && !bwd[y.idx()]) bwd[y.idx()] = true, queue.push_back(y);
    }
  }

  std::vector<std::size_t> out_degree(n, 0);
  std::size_t total = 0;
  for (auto e : g.edges()) {
    const Vertex r = g.range(e), s = g.source(e);
    const bool from_ok = r == v || fwd[r.idx()];
    const bool to_ok = s == v || bwd[s.idx()];
    if (from_ok && to_ok) {
      ++out_degree[r.idx()];
      ++total;
    }
  }
  if (total == 0) return ReturnPaths::None;
  for (std::size_t i = 0; i < n; ++i)
    if (out_degree[i] > 1) return ReturnPaths::Many;
  return ReturnPaths::One;
}

struct ConditionK {
  bool holds = true;
  std::optional<Vertex> single_return_vertex;
};

/// Condition (K): no vertex has exactly one return path.
inline ConditionK condition_K(const Graph& g) {
  for (auto v : g.vertices())
    if (count_return_paths(g, v) == ReturnPaths::One) return {false, v};
  return {};
}

struct Cofinality {
  bool holds = true;
  /// A vertex v and a cycle κ such that v cannot be reached from κ^∞.
  std::optional<std::pair<Vertex, Path>> witness;
};

/// Cofinal: every vertex can be reached from every infinite path.
///
/// An infinite path eventually stays inside one strongly connected component
/// that carries a cycle, and reachability from a path is monotone along it,
/// so it is enough to ask that every v satisfies v ≤ r(κ) for every simple
/// cycle κ.
inline Cofinality cofinal(const Graph& g) {
  const Reachability le(g);
  const auto cycles = simple_cycles(g);
  for (auto v : g.vertices())
    for (const auto& k : cycles)
      if (!le(v, k.base)) return {false, std::make_pair(v, k)};
  return {};
}

}  // namespace exelgraph
