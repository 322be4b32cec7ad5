#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exelgraph/combinatorics.hpp"
#include "exelgraph/errors.hpp"
#include "exelgraph/graph.hpp"
#include "exelgraph/vertex_set.hpp"

namespace exelgraph {

/// Upper bound on |E⁰| for the exponential subset enumerations.
struct EnumerationLimit {
  std::size_t max_vertices = 20;

  /// Reads EXELGRAPH_MAX_SUBSETS when set; the value is a vertex count.
  static EnumerationLimit from_env() {
    EnumerationLimit lim;
    if (const char* s = std::getenv("EXELGRAPH_MAX_SUBSETS")) {
      try {
        lim.max_vertices = static_cast<std::size_t>(std::stoul(s));
      } catch (const std::logic_error&) {
        throw std::invalid_argument(std::string("EXELGRAPH_MAX_SUBSETS is not a number: ") + s);
      }
    }
    return lim;
  }

  void check(const Graph& g) const {
    if (g.num_vertices() > max_vertices || g.num_vertices() > 62)
      throw BoundExceeded("subset enumeration over " + std::to_string(g.num_vertices()) +
                          " vertices exceeds the bound of " + std::to_string(std::min<std::size_t>(max_vertices, 62)));
  }
};

// Hereditary and saturated use the convention in which, for a closed
// invariant Y ⊂ E^∞, the set H_Y = {v : Z(v) ∩ Y = ∅} qualifies. Invariance
// of Y under σ⁻¹ means a path entering H can never leave it, which is the
// hereditary rule below. Closedness of the complement under σ means a vertex
// all of whose one-step continuations land in H is itself in H, which is
// saturation.

/// v ∈ H and r(e) = v imply s(e) ∈ H.
inline bool is_hereditary(const Graph& g, const VertexSet& h) {
  for (auto e : g.edges())
    if (h.contains(g.range(e)) && !h.contains(g.source(e))) return false;
  return true;
}

/// If every e ∈ r⁻¹(v) has s(e) ∈ H (and r⁻¹(v) ≠ ∅) then v ∈ H.
inline bool is_saturated(const Graph& g, const VertexSet& h) {
  for (auto v : g.vertices()) {
    if (h.contains(v) || g.edges_into(v).empty()) continue;
    const auto& in = g.edges_into(v);
    if (std::all_of(in.begin(), in.end(), [&](Edge e) { return h.contains(g.source(e)); })) return false;
  }
  return true;
}

/// Smallest saturated hereditary superset of H.
inline VertexSet sat_hered_closure(const Graph& g, VertexSet h) {
  for (bool changed = true; changed;) {
    changed = false;
    for (auto e : g.edges()) {
      if (h.contains(g.range(e)) && !h.contains(g.source(e))) {
        h.insert(g.source(e));
        changed = true;
      }
    }
    for (auto v : g.vertices()) {
      if (h.contains(v) || g.edges_into(v).empty()) continue;
      const auto& in = g.edges_into(v);
      if (std::all_of(in.begin(), in.end(), [&](Edge e) { return h.contains(g.source(e)); })) {
        h.insert(v);
        changed = true;
      }
    }
  }
  return h;
}

namespace detail {

/// Per-vertex bitmasks used by the subset enumerations.
struct Masks {
  std::vector<std::uint64_t> succ;  // {s(e) : r(e) = v}
  std::vector<std::uint64_t> down;  // {u : u ≤ v}
  std::vector<std::uint64_t> up;    // {y : v ≤ y}

  explicit Masks(const Graph& g) : succ(g.num_vertices(), 0), down(g.num_vertices(), 0), up(g.num_vertices(), 0) {
    const Reachability le(g);
    for (auto e : g.edges()) succ[g.range(e).idx()] |= std::uint64_t{1} << g.source(e).idx();
    for (auto v : g.vertices())
      for (auto w : g.vertices())
        if (le(v, w)) {
          up[v.idx()] |= std::uint64_t{1} << w.idx();
          down[w.idx()] |= std::uint64_t{1} << v.idx();
        }
  }
};

inline bool bit(std::uint64_t m, std::size_t i) { return (m >> i) & 1U; }

}  // namespace detail

/// Saturated hereditary sets ordered by inclusion. `covers` holds index pairs
/// (i, j) with sets[i] ⊊ sets[j] and nothing strictly between.
struct IdealLattice {
  std::vector<VertexSet> sets;
  std::vector<std::pair<std::size_t, std::size_t>> covers;
};

/// All saturated hereditary subsets of E⁰; each one indexes a gauge-invariant
/// ideal. Brute force over subsets, bounded by `limit`.
inline IdealLattice enumerate_sat_hered(const Graph& g, const EnumerationLimit& limit = {}) {
  limit.check(g);
  const std::size_t n = g.num_vertices();
  const detail::Masks masks(g);
  const std::uint64_t count = std::uint64_t{1} << n;

  IdealLattice lat;
  std::vector<std::uint64_t> found;
  for (std::uint64_t h = 0; h < count; ++h) {
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      const bool in = detail::bit(h, v);
      const std::uint64_t s = masks.succ[v];
      if (in) ok = (s & ~h) == 0;
      else ok = s == 0 || (s & ~h) != 0;
    }
    if (ok) found.push_back(h);
  }
  for (auto h : found) lat.sets.push_back(VertexSet::from_mask(n, h));
  std::vector<std::size_t> order(found.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](auto a, auto b) { return lat.sets[a] < lat.sets[b]; });
  std::vector<VertexSet> sorted;
  std::vector<std::uint64_t> sorted_masks;
  for (auto i : order) {
    sorted.push_back(lat.sets[i]);
    sorted_masks.push_back(found[i]);
  }
  lat.sets = std::move(sorted);

  auto proper_subset = [](std::uint64_t a, std::uint64_t b) { return a != b && (a & ~b) == 0; };
  for (std::size_t i = 0; i < sorted_masks.size(); ++i)
    for (std::size_t j = 0; j < sorted_masks.size(); ++j) {
      if (!proper_subset(sorted_masks[i], sorted_masks[j])) continue;
      bool between = false;
      for (std::size_t k = 0; k < sorted_masks.size() && !between; ++k)
        between = proper_subset(sorted_masks[i], sorted_masks[k]) && proper_subset(sorted_masks[k], sorted_masks[j]);
      if (!between) lat.covers.emplace_back(i, j);
    }
  return lat;
}

/// Non-empty M ⊂ E⁰ with
///   (MH1) v ≤ w, w ∈ M ⇒ v ∈ M;
///   (MH2) every v ∈ M has e with r(e) = v and s(e) ∈ M;
///   (MH3) any v, w ∈ M have y ∈ M with v ≤ y and w ≤ y.
/// `entryless_cycle` is set when M carries a cycle with no entry in M, which
/// is membership in ℳ_l(E).
struct MaximalHead {
  VertexSet vertices;
  std::optional<Path> entryless_cycle;

  bool in_Ml() const { return entryless_cycle.has_value(); }
};

/// Checks (MH1)–(MH3) directly.
inline bool is_maximal_head(const Graph& g, const VertexSet& m) {
  if (m.empty()) return false;
  const Reachability le(g);
  for (auto w : m.members())
    for (auto v : g.vertices())
      if (le(v, w) && !m.contains(v)) return false;
  for (auto v : m.members()) {
    const auto& in = g.edges_into(v);
    if (std::none_of(in.begin(), in.end(), [&](Edge e) { return m.contains(g.source(e)); })) return false;
  }
  const auto mem = m.members();
  for (auto v : mem)
    for (auto w : mem) {
      bool joined = false;
      for (auto y : mem)
        if (le(v, y) && le(w, y)) {
          joined = true;
          break;
        }
      if (!joined) return false;
    }
  return true;
}

/// First simple cycle lying in M with no entry whose source is in M.
inline std::optional<Path> entryless_cycle_in(const Graph& g, const VertexSet& m, const std::vector<Path>& cycles) {
  for (const auto& c : cycles) {
    const bool inside = std::all_of(c.edges.begin(), c.edges.end(), [&](Edge e) { return m.contains(g.range(e)); });
    if (inside && cycle_entries(g, c, m).empty()) return c;
  }
  return std::nullopt;
}

inline std::vector<MaximalHead> maximal_heads(const Graph& g, const EnumerationLimit& limit = {}) {
  limit.check(g);
  const std::size_t n = g.num_vertices();
  const detail::Masks masks(g);
  const auto cycles = simple_cycles(g);
  const std::uint64_t count = std::uint64_t{1} << n;

  std::vector<MaximalHead> out;
  for (std::uint64_t m = 1; m < count; ++m) {
    bool ok = true;
    for (std::size_t v = 0; v < n && ok; ++v) {
      if (!detail::bit(m, v)) continue;
      ok = (masks.down[v] & ~m) == 0 && (masks.succ[v] & m) != 0;
    }
    for (std::size_t v = 0; v < n && ok; ++v) {
      if (!detail::bit(m, v)) continue;
      for (std::size_t w = v + 1; w < n && ok; ++w)
        if (detail::bit(m, w)) ok = (masks.up[v] & masks.up[w] & m) != 0;
    }
    if (!ok) continue;
    auto set = VertexSet::from_mask(n, m);
    auto cyc = entryless_cycle_in(g, set, cycles);
    out.push_back({std::move(set), std::move(cyc)});
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.vertices < b.vertices; });
  return out;
}

/// Primitive ideals keyed by maximal heads. A head with no entry-less cycle
/// gives the single gauge-invariant primitive ideal I_{E⁰∖M}; a head in
/// ℳ_l(E) gives the circle of primitive ideals I_{M,w}, w ∈ 𝕋, which is kept
/// symbolic.
struct PrimIdealCatalog {
  std::vector<MaximalHead> gauge_invariant_primitives;
  std::vector<MaximalHead> circle_families;
};

inline PrimIdealCatalog primitive_catalog(const Graph& g, const EnumerationLimit& limit = {}) {
  PrimIdealCatalog cat;
  for (auto& h : maximal_heads(g, limit)) {
    if (h.in_Ml()) cat.circle_families.push_back(std::move(h));
    else cat.gauge_invariant_primitives.push_back(std::move(h));
  }
  return cat;
}

struct SimplicityVerdict {
  bool simple = false;
  bool topologically_free = false;
  bool irreducible = false;
  std::optional<Path> entryless_cycle;
  std::optional<std::pair<Vertex, Path>> unreachable;
};

/// Simple iff topologically free (Condition (L)) and irreducible (cofinal).
inline SimplicityVerdict simplicity(const Graph& g) {
  const auto l = condition_L(g);
  const auto cof = cofinal(g);
  SimplicityVerdict v;
  v.topologically_free = l.holds;
  v.irreducible = cof.holds;
  v.simple = l.holds && cof.holds;
  v.entryless_cycle = l.entryless_cycle;
  v.unreachable = cof.witness;
  return v;
}

/// Every ideal is gauge-invariant iff Condition (K) holds.
inline bool all_ideals_gauge_invariant(const Graph& g) { return condition_K(g).holds; }

}  // namespace exelgraph
