#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "exelgraph/combinatorics.hpp"
#include "exelgraph/dynamics.hpp"
#include "exelgraph/errors.hpp"
#include "exelgraph/graph.hpp"
#include "exelgraph/identities.hpp"
#include "exelgraph/ideals.hpp"

namespace exelgraph {

/// Graph on vertices v0…v{n−1} from (range, source) index pairs; edges are
/// named e0, e1, … in the given order.
inline Graph graph_from_pairs(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::vector<std::string> vs;
  for (std::size_t i = 0; i < n; ++i) vs.push_back("v" + std::to_string(i));
  std::vector<Graph::EdgeSpec> es;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    es.push_back({"e" + std::to_string(i), vs[pairs[i].first], vs[pairs[i].second]});
  return Graph(std::move(vs), std::move(es));
}

namespace detail {

using Pairs = std::vector<std::pair<std::size_t, std::size_t>>;

inline bool pairs_valid(std::size_t n, const Pairs& pairs) {
  std::vector<bool> has_in(n, false), has_out(n, false);
  for (auto [r, s] : pairs) has_in[r] = has_out[s] = true;
  return std::all_of(has_in.begin(), has_in.end(), [](bool b) { return b; }) &&
         std::all_of(has_out.begin(), has_out.end(), [](bool b) { return b; });
}

/// Smallest sorted edge list over all relabellings of the vertices.
inline Pairs canonical_pairs(std::size_t n, const Pairs& pairs) {
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Pairs best;
  bool first = true;
  do {
    Pairs p;
    p.reserve(pairs.size());
    for (auto [r, s] : pairs) p.emplace_back(perm[r], perm[s]);
    std::sort(p.begin(), p.end());
    if (first || p < best) best = std::move(p);
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace detail

/// Every graph with at most `max_vertices` vertices and at most `max_edges`
/// edges that has no sources and is shift-total, one per isomorphism class.
/// Order: by vertex count, then edge count, then canonical edge list.
inline std::vector<Graph> exhaustive_corpus(std::size_t max_vertices, std::size_t max_edges) {
  std::vector<Graph> out;
  for (std::size_t n = 1; n <= max_vertices; ++n) {
    detail::Pairs slots;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t s = 0; s < n; ++s) slots.emplace_back(r, s);
    for (std::size_t m = n; m <= max_edges; ++m) {
      std::set<detail::Pairs> seen;
      // Multisets of size m over the n² slots, as non-decreasing index sequences.
      std::vector<std::size_t> idx(m, 0);
      while (true) {
        detail::Pairs pairs;
        for (auto i : idx) pairs.push_back(slots[i]);
        if (detail::pairs_valid(n, pairs)) seen.insert(detail::canonical_pairs(n, pairs));
        std::size_t k = m;
        while (k > 0 && idx[k - 1] == slots.size() - 1) --k;
        if (k == 0) break;
        const std::size_t next = idx[k - 1] + 1;
        std::fill(idx.begin() + static_cast<std::ptrdiff_t>(k - 1), idx.end(), next);
      }
      for (const auto& p : seen) out.push_back(graph_from_pairs(n, p));
    }
  }
  return out;
}

/// Seeded random graphs with no sources that are shift-total. The vertex
/// count is uniform in [1, max_vertices + 2]; the edge count is uniform in
/// [n, n + max_extra_edges], and edge sets are resampled until valid.
inline std::vector<Graph> random_corpus(std::size_t count, std::uint64_t seed, std::size_t max_vertices,
                                        std::size_t max_extra_edges = 3) {
  std::mt19937_64 rng(seed);
  std::vector<Graph> out;
  std::uniform_int_distribution<std::size_t> pick_n(1, max_vertices + 2);
  while (out.size() < count) {
    const std::size_t n = pick_n(rng);
    std::uniform_int_distribution<std::size_t> pick_m(n, n + max_extra_edges);
    std::uniform_int_distribution<std::size_t> pick_v(0, n - 1);
    detail::Pairs pairs;
    do {
      pairs.assign(pick_m(rng), {});
      for (auto& p : pairs) p = {pick_v(rng), pick_v(rng)};
    } while (!detail::pairs_valid(n, pairs));
    out.push_back(graph_from_pairs(n, pairs));
  }
  return out;
}

struct CorpusOptions {
  std::size_t identity_depth = 3;
  IdentityOptions identities{.seed = 1, .faithfulness_samples = 50, .adjoint_samples = 1};
  ClusterSearchOptions search;
  EnumerationLimit limit;
};

/// Names of the per-graph equivalence checks, in report order.
inline const std::vector<std::string>& corpus_check_names() {
  static const std::vector<std::string> names = {
      "topological_freeness", "cofinality", "condition_K", "heads_correspondence", "invariant_roundtrip", "identities",
  };
  return names;
}

struct CorpusViolation {
  std::string check;
  std::string graph;  // DSL text
  std::string detail;
};

struct CorpusReport {
  std::size_t graphs = 0;
  std::size_t exhaustive = 0;
  std::size_t random = 0;
  std::map<std::string, std::size_t> failures;  // per check name
  std::vector<CorpusViolation> violations;

  bool passed() const { return violations.empty(); }
};

/// Runs every corpus check on one graph and returns the failures.
inline std::vector<CorpusViolation> check_graph(const Graph& g, const CorpusOptions& opt = {}) {
  std::vector<CorpusViolation> out;
  auto fail = [&](const std::string& check, std::string detail) {
    out.push_back({check, to_dsl(g), std::move(detail)});
  };
  auto guarded = [&](const std::string& check, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& ex) {
      fail(check, std::string("exception: ") + ex.what());
    }
  };

  std::optional<IdealLattice> lattice;
  guarded("cofinality", [&] { lattice = enumerate_sat_hered(g, opt.limit); });

  guarded("topological_freeness", [&] {
    const bool a = condition_L(g).holds;
    const bool b = topologically_free_dynamical(g);
    if (a != b)
      fail("topological_freeness", std::string("condition (L) ") + (a ? "holds" : "fails") + ", dynamical test says " +
                                       (b ? "free" : "not free"));
  });
  if (lattice) {
    const bool a = cofinal(g).holds;
    const bool b = lattice->sets.size() == 2;
    if (a != b)
      fail("cofinality", std::string("cofinal ") + (a ? "holds" : "fails") + " but there are " +
                             std::to_string(lattice->sets.size()) + " saturated hereditary sets");
  }
  guarded("condition_K", [&] {
    const bool k = condition_K(g).holds;
    bool all_cluster = true;
    std::string witness;
    for (const auto& xi : cycle_orbit_points(g)) {
      const auto s = cluster_point_search(g, xi, opt.search);
      if (s == SearchOutcome::Indeterminate) {
        fail("condition_K", "search for " + to_string(g, xi) + " is indeterminate");
        return;
      }
      if (s == SearchOutcome::Refuted && all_cluster) {
        all_cluster = false;
        witness = to_string(g, xi);
      }
    }
    if (k != all_cluster)
      fail("condition_K", std::string("condition (K) ") + (k ? "holds" : "fails") +
                              (all_cluster ? " but every cycle orbit is a cluster point"
                                           : " but " + witness + " is not a cluster point"));
  });
  guarded("heads_correspondence", [&] {
    const auto hc = heads_correspondence(g, opt.limit, opt.search);
    if (!hc.holds) fail("heads_correspondence", hc.detail);
  });
  if (lattice)
    guarded("invariant_roundtrip", [&] {
      for (const auto& h : lattice->sets) {
        const auto r = invariant_roundtrip(g, h);
        if (!r.holds) {
          std::string set;
          for (const auto& n : names(g, h)) set += (set.empty() ? "" : ",") + n;
          fail("invariant_roundtrip", "H = {" + set + "}: " + r.detail);
          return;
        }
      }
    });
  guarded("identities", [&] {
    const auto rep = verify_identities(g, opt.identity_depth, opt.identities);
    for (const auto& c : rep.checks)
      if (!c.passed) fail("identities", c.name + " at " + c.counterexample + ": " + c.lhs + " vs " + c.rhs);
  });
  return out;
}

inline CorpusReport run_corpus(const std::vector<Graph>& exhaustive, const std::vector<Graph>& random,
                               const CorpusOptions& opt = {}) {
  CorpusReport rep;
  rep.exhaustive = exhaustive.size();
  rep.random = random.size();
  for (const auto& name : corpus_check_names()) rep.failures[name] = 0;
  for (const auto* set : {&exhaustive, &random})
    for (const auto& g : *set) {
      ++rep.graphs;
      for (auto& v : check_graph(g, opt)) {
        ++rep.failures[v.check];
        rep.violations.push_back(std::move(v));
      }
    }
  return rep;
}

}  // namespace exelgraph
