#pragma once

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "exelgraph/combinatorics.hpp"
#include "exelgraph/errors.hpp"
#include "exelgraph/graph.hpp"
#include "exelgraph/ideals.hpp"
#include "exelgraph/vertex_set.hpp"

namespace exelgraph {

/// Eventually periodic infinite path ξ = head · cycle^∞.
///
/// Canonical form: `cycle` is primitive (not a proper power) and `head` is as
/// short as possible, i.e. its last edge differs from the last edge of
/// `cycle`. Two canonical values are equal iff they describe the same
/// infinite path. The rotation of `cycle` is fixed by where it starts in ξ,
/// so it is not normalized independently.
struct EvPath {
  std::vector<Edge> head;
  std::vector<Edge> cycle;

  bool periodic() const { return head.empty(); }
  /// ξᵢ for i ≥ 1.
  Edge at(std::size_t i) const {
    if (i <= head.size()) return head[i - 1];
    return cycle[(i - head.size() - 1) % cycle.size()];
  }

  friend bool operator==(const EvPath&, const EvPath&) = default;
  friend auto operator<=>(const EvPath& a, const EvPath& b) {
    if (auto c = a.head <=> b.head; c != 0) return c;
    return a.cycle <=> b.cycle;
  }
};

inline EvPath canonicalize(EvPath xi) {
  auto& c = xi.cycle;
  const std::size_t n = c.size();
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool repeats = true;
    for (std::size_t i = p; i < n && repeats; ++i) repeats = c[i] == c[i - p];
    if (repeats) {
      c.resize(p);
      break;
    }
  }
  while (!xi.head.empty() && xi.head.back() == c.back()) {
    xi.head.pop_back();
    std::rotate(c.begin(), c.end() - 1, c.end());
  }
  return xi;
}

/// Builds a canonical EvPath, checking that head·cycle^∞ is a path of g.
inline EvPath make_evpath(const Graph& g, std::vector<Edge> head, std::vector<Edge> cycle) {
  if (cycle.empty()) throw std::invalid_argument("eventually periodic path needs a non-empty cycle");
  auto composable = [&](Edge a, Edge b) { return g.source(a) == g.range(b); };
  for (std::size_t i = 0; i + 1 < head.size(); ++i)
    if (!composable(head[i], head[i + 1])) throw std::invalid_argument("head is not a path");
  if (!head.empty() && !composable(head.back(), cycle.front()))
    throw std::invalid_argument("head does not end where the cycle starts");
  for (std::size_t i = 0; i < cycle.size(); ++i)
    if (!composable(cycle[i], cycle[(i + 1) % cycle.size()])) throw std::invalid_argument("cycle is not a closed path");
  return canonicalize({std::move(head), std::move(cycle)});
}

/// r(ξ) = r(ξ₁).
inline Vertex range(const Graph& g, const EvPath& xi) { return g.range(xi.at(1)); }

/// Every vertex r(ξᵢ), i ≥ 1.
inline std::vector<Vertex> visited_vertices(const Graph& g, const EvPath& xi) {
  std::vector<Vertex> out;
  for (auto e : xi.head) out.push_back(g.range(e));
  for (auto e : xi.cycle) out.push_back(g.range(e));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// `head|cycle` with comma-separated edge identifiers, e.g. `h|k` or `|a,b`.
inline std::string to_string(const Graph& g, const EvPath& xi) {
  auto join = [&](const std::vector<Edge>& es) {
    std::string s;
    for (std::size_t i = 0; i < es.size(); ++i) s += (i ? "," : "") + g.name(es[i]);
    return s;
  };
  return join(xi.head) + "|" + join(xi.cycle);
}

inline EvPath parse_evpath(const Graph& g, std::string_view text) {
  const auto bar = text.find('|');
  if (bar == std::string_view::npos) throw std::invalid_argument("expected 'head|cycle'");
  auto split = [&](std::string_view part) {
    std::vector<Edge> es;
    if (part.empty()) return es;
    std::size_t start = 0;
    while (true) {
      const auto comma = part.find(',', start);
      const auto tok = part.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start);
      auto e = g.find_edge(tok);
      if (!e) throw std::invalid_argument("unknown edge '" + std::string(tok) + "'");
      es.push_back(*e);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    return es;
  };
  return make_evpath(g, split(text.substr(0, bar)), split(text.substr(bar + 1)));
}

/// σᵏ(ξ).
inline EvPath shift(EvPath xi, std::size_t k) {
  if (k <= xi.head.size()) {
    xi.head.erase(xi.head.begin(), xi.head.begin() + static_cast<std::ptrdiff_t>(k));
    return xi;
  }
  k -= xi.head.size();
  xi.head.clear();
  std::rotate(xi.cycle.begin(), xi.cycle.begin() + static_cast<std::ptrdiff_t>(k % xi.cycle.size()), xi.cycle.end());
  return xi;
}

/// σ⁻¹(ξ) = {eξ : s(e) = r(ξ)}, in edge order.
inline std::vector<EvPath> preimages(const Graph& g, const EvPath& xi) {
  std::vector<EvPath> out;
  for (auto e : g.edges_from(range(g, xi))) {
    EvPath eta = xi;
    eta.head.insert(eta.head.begin(), e);
    out.push_back(canonicalize(std::move(eta)));
  }
  return out;
}

/// Smallest n ≥ 1 with σⁿ(ξ) = ξ, if ξ is periodic.
inline std::optional<std::size_t> period(const EvPath& xi) {
  if (!xi.periodic()) return std::nullopt;
  return xi.cycle.size();
}

/// The unique infinite path with range x, when every vertex forward of x has
/// exactly one edge into it (|r⁻¹| = 1); nullopt if some choice exists.
inline std::optional<EvPath> forced_continuation(const Graph& g, Vertex x) {
  std::vector<Edge> walk;
  std::map<Vertex, std::size_t> seen;
  while (!seen.contains(x)) {
    seen.emplace(x, walk.size());
    if (g.edges_into(x).size() != 1) return std::nullopt;
    const Edge e = g.edges_into(x).front();
    walk.push_back(e);
    x = g.source(e);
  }
  const auto loop_start = seen.at(x);
  EvPath xi;
  xi.head.assign(walk.begin(), walk.begin() + static_cast<std::ptrdiff_t>(loop_start));
  xi.cycle.assign(walk.begin() + static_cast<std::ptrdiff_t>(loop_start), walk.end());
  return canonicalize(std::move(xi));
}

/// Decides Z(μ) ⊂ H_{m,n} = {ξ : σᵐ(ξ) = σⁿ(ξ)} exactly.
///
/// After refining μ to length ≥ n, a point of Z(ν) ∩ H_{m,n} is determined by
/// ν, so Z(ν) ⊂ H_{m,n} requires Z(ν) to be a single point (the continuation
/// from s(ν) is forced) and that point to satisfy σᵐ = σⁿ.
inline bool cylinder_in_Hmn(const Graph& g, const Path& mu, std::size_t m, std::size_t n) {
  if (m >= n) throw std::invalid_argument("cylinder_in_Hmn needs m < n");
  const std::size_t target = std::max(mu.length(), n);

  auto singleton_in_H = [&](const Path& nu) {
    auto tail = forced_continuation(g, nu.source(g));
    if (!tail) return false;
    EvPath xi = *tail;
    xi.head.insert(xi.head.begin(), nu.edges.begin(), nu.edges.end());
    xi = canonicalize(std::move(xi));
    return shift(xi, m) == shift(xi, n);
  };

  Path nu = mu;
  auto all_refinements = [&](auto&& self) -> bool {
    if (nu.length() == target) return singleton_in_H(nu);
    for (auto e : g.edges_into(nu.source(g))) {
      nu.edges.push_back(e);
      const bool ok = self(self);
      nu.edges.pop_back();
      if (!ok) return false;
    }
    return true;
  };
  return all_refinements(all_refinements);
}

/// Topological freeness, dynamical side: no cylinder Z(μ) with |μ| ≤ p lies
/// inside H_{0,p} for 1 ≤ p ≤ |E⁰|. An interior point of some H_{m,n} pushes
/// forward to one of H_{0,n−m}, and an interior witness forces an entry-less
/// simple cycle, whose length is at most |E⁰|.
inline bool topologically_free_dynamical(const Graph& g) {
  const std::size_t n = g.num_vertices();
  for (std::size_t p = 1; p <= n; ++p)
    for (std::size_t len = 0; len <= p; ++len)
      for (const auto& mu : enumerate_paths(g, len))
        if (cylinder_in_Hmn(g, mu, 0, p)) return false;
  return true;
}

/// Returns Condition (L) after checking it against the dynamical computation;
/// throws PropertyViolation if they disagree.
inline bool topologically_free(const Graph& g) {
  const bool graph_side = condition_L(g).holds;
  const bool dynamical = topologically_free_dynamical(g);
  if (graph_side != dynamical)
    throw PropertyViolation("topological freeness: Condition (L) gives " + std::string(graph_side ? "true" : "false") +
                            " but the cylinder search gives " + (dynamical ? "true" : "false"));
  return graph_side;
}

enum class SearchOutcome { Confirmed, Refuted, Indeterminate };

inline const char* to_string(SearchOutcome s) {
  switch (s) {
    case SearchOutcome::Confirmed: return "confirmed";
    case SearchOutcome::Refuted: return "refuted";
    case SearchOutcome::Indeterminate: return "indeterminate";
  }
  return "?";
}

struct ClusterSearchOptions {
  std::size_t depth = 8;                    // D
  std::optional<std::size_t> length_bound;  // |ρ| bound; default |E⁰|·|E¹| + D
};

namespace detail {

/// Shortest path length from x to y following edges r → s; nullopt if none.
inline std::optional<std::size_t> distance(const Graph& g, Vertex x, Vertex y) {
  std::vector<std::size_t> dist(g.num_vertices(), std::numeric_limits<std::size_t>::max());
  std::vector<Vertex> frontier{x};
  dist[x.idx()] = 0;
  for (std::size_t i = 0; i < frontier.size(); ++i) {
    const Vertex u = frontier[i];
    if (u == y) return dist[u.idx()];
    for (auto e : g.edges_into(u)) {
      const Vertex w = g.source(e);
      if (dist[w.idx()] == std::numeric_limits<std::size_t>::max()) {
        dist[w.idx()] = dist[u.idx()] + 1;
        frontier.push_back(w);
      }
    }
  }
  return std::nullopt;
}

/// Shortest ρ with s(ρ) = r(ξ), ρξ ≠ ξ, and ρξ agreeing with ξ on the first d
/// edges. Either ρ is a prefix ξ₁…ξ_ℓ whose length is not a multiple of the
/// period, or ρ follows ξ past position d, leaves it through an edge e ≠ ξⱼ
/// with r(e) = r(ξⱼ), and then returns to r(ξ). Both families are periodic
/// in the position modulo the period, so one period past d is exhaustive.
inline std::optional<std::size_t> shortest_approximant(const Graph& g, const EvPath& xi, std::size_t d) {
  const std::size_t p = xi.cycle.size();
  const Vertex base = range(g, xi);
  std::optional<std::size_t> best;
  auto consider = [&](std::size_t len) {
    if (!best || len < *best) best = len;
  };

  for (std::size_t len = 1; len <= d + p; ++len) {
    if (len % p == 0 || g.source(xi.at(len)) != base) continue;
    bool agrees = true;
    for (std::size_t i = 1; len + i <= d && agrees; ++i) agrees = xi.at(i) == xi.at(len + i);
    if (agrees) consider(len);
  }
  for (std::size_t j = d + 1; j <= d + p; ++j) {
    const Edge on_path = xi.at(j);
    for (auto e : g.edges_into(g.range(on_path))) {
      if (e == on_path) continue;
      if (auto back = distance(g, g.source(e), base)) consider(j + *back);
    }
  }
  return best;
}

}  // namespace detail

/// Dynamical test of whether periodic ξ is a cluster point of its backward
/// orbit σ^{-ℕ}(ξ): for every depth d ≤ D, some ρξ ≠ ξ agrees with ξ to
/// depth d, with |ρ| within the length bound.
inline SearchOutcome cluster_point_search(const Graph& g, const EvPath& xi, const ClusterSearchOptions& opt = {}) {
  if (!xi.periodic()) throw std::invalid_argument("cluster point search needs a periodic path");
  const std::size_t bound = opt.length_bound.value_or(g.num_vertices() * g.num_edges() + opt.depth);
  SearchOutcome outcome = SearchOutcome::Confirmed;
  for (std::size_t d = 1; d <= opt.depth; ++d) {
    const auto len = detail::shortest_approximant(g, xi, d);
    if (!len) return SearchOutcome::Refuted;
    if (*len > bound) outcome = SearchOutcome::Indeterminate;
  }
  return outcome;
}

struct ClusterVerdict {
  bool cluster = false;  // from the return-path criterion
  SearchOutcome search = SearchOutcome::Indeterminate;
};

/// Periodic ξ is a cluster point iff r(ξ) has at least two return paths.
/// The search is run alongside; a definite disagreement throws
/// PropertyViolation, an indeterminate search is reported as such.
inline ClusterVerdict is_cluster_point(const Graph& g, const EvPath& xi, const ClusterSearchOptions& opt = {}) {
  if (!xi.periodic()) throw std::invalid_argument("is_cluster_point needs a periodic path");
  ClusterVerdict v;
  v.cluster = count_return_paths(g, range(g, xi)) == ReturnPaths::Many;
  v.search = cluster_point_search(g, xi, opt);
  const bool disagree = (v.cluster && v.search == SearchOutcome::Refuted) ||
                        (!v.cluster && v.search == SearchOutcome::Confirmed);
  if (disagree)
    throw PropertyViolation("cluster point of " + to_string(g, xi) + ": return paths give " +
                            (v.cluster ? "true" : "false") + ", search " + to_string(v.search));
  return v;
}

/// One periodic point per periodic orbit that comes from a simple cycle,
/// κ^∞ with κ in canonical rotation.
inline std::vector<EvPath> cycle_orbit_points(const Graph& g) {
  std::vector<EvPath> out;
  for (const auto& c : simple_cycles(g)) out.push_back(canonicalize({{}, c.edges}));
  return out;
}

/// β = {σᵏ(ξ) : 0 ≤ k < n}, stored through its representative ξ = κ^∞.
struct DiscreteCycle {
  EvPath point;
  std::size_t period = 0;

  Vertex base(const Graph& g) const { return range(g, point); }
  friend bool operator==(const DiscreteCycle&, const DiscreteCycle&) = default;
};

/// Periodic orbits whose points are isolated in the closure of their backward
/// orbit. Every such orbit is carried by a simple cycle, since a primitive
/// closed path through a repeated vertex gives that vertex two return paths.
inline std::vector<DiscreteCycle> discrete_cycles(const Graph& g, const ClusterSearchOptions& opt = {}) {
  std::vector<DiscreteCycle> out;
  for (auto& xi : cycle_orbit_points(g))
    if (!is_cluster_point(g, xi, opt).cluster) out.push_back({xi, xi.cycle.size()});
  return out;
}

/// M = {v : v ≤ base(β)}, the vertex set of the maximal head σ^{-ℕ}(β)‾.
/// Throws PropertyViolation unless M satisfies (MH1)–(MH3) and the cycle of
/// β has no entry in M.
inline VertexSet maximal_head_of_cycle(const Graph& g, const DiscreteCycle& beta) {
  const Reachability le(g);
  const Vertex b = beta.base(g);
  VertexSet m(g.num_vertices());
  for (auto v : g.vertices())
    if (le(v, b)) m.insert(v);
  if (!is_maximal_head(g, m))
    throw PropertyViolation("vertex set below " + g.name(b) + " is not a maximal head");
  if (!cycle_entries(g, Path{b, beta.point.cycle}, m).empty())
    throw PropertyViolation("cycle " + to_string(g, beta.point) + " has an entry inside its head");
  return m;
}

struct HeadsCorrespondence {
  bool holds = false;
  std::size_t ml_heads = 0;
  std::size_t discrete_orbits = 0;
  std::vector<std::pair<DiscreteCycle, VertexSet>> pairs;
  std::string detail;
};

/// ℳ_l(E) against discrete cycles: M ↦ Y_{E⁰∖M} restricts to a bijection
/// onto the closures σ^{-ℕ}(β)‾. Checked as equal counts plus injectivity
/// and image containment of β ↦ maximal_head_of_cycle(β).
inline HeadsCorrespondence heads_correspondence(const Graph& g, const EnumerationLimit& limit = {},
                                                const ClusterSearchOptions& opt = {}) {
  HeadsCorrespondence hc;
  std::vector<VertexSet> ml;
  for (const auto& h : maximal_heads(g, limit))
    if (h.in_Ml()) ml.push_back(h.vertices);
  hc.ml_heads = ml.size();

  const auto cycles = discrete_cycles(g, opt);
  hc.discrete_orbits = cycles.size();
  std::vector<VertexSet> images;
  for (const auto& beta : cycles) {
    auto m = maximal_head_of_cycle(g, beta);
    images.push_back(m);
    hc.pairs.emplace_back(beta, std::move(m));
  }

  hc.holds = true;
  if (hc.ml_heads != hc.discrete_orbits) {
    hc.holds = false;
    hc.detail = std::to_string(hc.ml_heads) + " heads in M_l but " + std::to_string(hc.discrete_orbits) +
                " discrete cycles";
  }
  for (std::size_t i = 0; i < images.size() && hc.holds; ++i) {
    if (std::find(ml.begin(), ml.end(), images[i]) == ml.end()) {
      hc.holds = false;
      hc.detail = "head of " + to_string(g, cycles[i].point) + " is not in M_l";
    }
    for (std::size_t j = 0; j < i && hc.holds; ++j)
      if (images[i] == images[j]) {
        hc.holds = false;
        hc.detail = to_string(g, cycles[i].point) + " and " + to_string(g, cycles[j].point) + " share a head";
      }
  }
  return hc;
}

/// Membership in Y_H, taken as "every vertex of ξ lies outside H". For a
/// hereditary H this is the closed invariant set attached to H; the
/// range-only reading {ξ : r(ξ) ∉ H} is not σ-invariant (h·k^∞ in a graph
/// where h enters H from outside).
inline bool in_Y(const Graph& g, const VertexSet& h, const EvPath& xi) {
  for (auto v : visited_vertices(g, xi))
    if (h.contains(v)) return false;
  return true;
}

/// Test points for path-space laws: head·ρ^∞ for every rotation ρ of every
/// simple cycle and every head of length ≤ max_head, canonicalized and
/// deduplicated.
inline std::vector<EvPath> sample_points(const Graph& g, std::size_t max_head) {
  std::set<EvPath> pts;
  std::vector<std::vector<Path>> heads_by_length;
  for (std::size_t len = 1; len <= max_head; ++len) heads_by_length.push_back(enumerate_paths(g, len));
  for (const auto& c : simple_cycles(g)) {
    auto rot = c.edges;
    for (std::size_t k = 0; k < rot.size(); ++k) {
      const Vertex start = g.range(rot.front());
      pts.insert(canonicalize({{}, rot}));
      for (const auto& level : heads_by_length)
        for (const auto& h : level)
          if (h.source(g) == start) pts.insert(canonicalize({h.edges, rot}));
      std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    }
  }
  return {pts.begin(), pts.end()};
}

struct RoundtripReport {
  bool holds = false;
  bool exact_inverse = false;     // H_{Y_H} = H by graph computation
  bool sampled_inverse = false;   // H_{Y_H} = H read off the sample points
  bool forward_closed = false;    // ξ ∈ Y_H ⇒ σ(ξ) ∈ Y_H on samples
  bool backward_closed = false;   // ξ ∈ Y_H ⇒ σ⁻¹(ξ) ⊂ Y_H on samples
  std::size_t points = 0;
  std::string detail;
};

/// H ↦ Y_H followed by Y ↦ H_Y = {v : Z(v) ∩ Y = ∅} returns H for saturated
/// hereditary H. Checked exactly (a vertex is outside H_{Y_H} iff an
/// infinite path from it avoids H) and on sample points, together with σ-
/// and σ⁻¹-closure of Y_H on those points.
inline RoundtripReport invariant_roundtrip(const Graph& g, const VertexSet& h, std::optional<std::size_t> max_head = {}) {
  RoundtripReport rep;

  // Vertices admitting an infinite path that avoids H: greatest fixed point.
  VertexSet avoid = h.complement();
  for (bool changed = true; changed;) {
    changed = false;
    for (auto v : avoid.members()) {
      const auto& in = g.edges_into(v);
      if (std::none_of(in.begin(), in.end(), [&](Edge e) { return avoid.contains(g.source(e)); })) {
        avoid.erase(v);
        changed = true;
      }
    }
  }
  rep.exact_inverse = avoid.complement() == h;
  if (!rep.exact_inverse) rep.detail = "exact H_{Y_H} differs from H";

  const auto pts = sample_points(g, max_head.value_or(g.num_vertices()));
  rep.points = pts.size();
  VertexSet sampled = VertexSet::full(g.num_vertices());
  rep.forward_closed = rep.backward_closed = true;
  for (const auto& xi : pts) {
    if (!in_Y(g, h, xi)) continue;
    sampled.erase(range(g, xi));
    if (!in_Y(g, h, shift(xi, 1)) && rep.forward_closed) {
      rep.forward_closed = false;
      rep.detail = "shift of " + to_string(g, xi) + " leaves Y_H";
    }
    for (const auto& eta : preimages(g, xi))
      if (!in_Y(g, h, eta) && rep.backward_closed) {
        rep.backward_closed = false;
        rep.detail = "preimage " + to_string(g, eta) + " leaves Y_H";
      }
  }
  rep.sampled_inverse = sampled == h;
  if (!rep.sampled_inverse && rep.detail.empty()) rep.detail = "sampled H_{Y_H} differs from H";
  rep.holds = rep.exact_inverse && rep.sampled_inverse && rep.forward_closed && rep.backward_closed;
  return rep;
}

}  // namespace exelgraph
