#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "exelgraph/combinatorics.hpp"
#include "exelgraph/cylinder.hpp"
#include "exelgraph/dynamics.hpp"
#include "exelgraph/graph.hpp"
#include "exelgraph/identities.hpp"
#include "exelgraph/ideals.hpp"

namespace exelgraph {

enum class SuiteStatus { Pass, Fail, Indeterminate };

inline const char* to_string(SuiteStatus s) {
  switch (s) {
    case SuiteStatus::Pass: return "pass";
    case SuiteStatus::Fail: return "fail";
    case SuiteStatus::Indeterminate: return "indeterminate";
  }
  return "?";
}

struct SuiteResult {
  std::string name;
  SuiteStatus status = SuiteStatus::Pass;
  std::vector<std::string> details;

  void fail(std::string why) {
    status = SuiteStatus::Fail;
    details.push_back(std::move(why));
  }
};

struct SuiteOptions {
  std::size_t depth = 3;
  ClusterSearchOptions search;
  IdentityOptions identities;
  EnumerationLimit limit;
};

struct VerificationResult {
  std::size_t depth = 0;
  std::vector<SuiteResult> suites;
  std::optional<IdentityReport> identities;

  bool any(SuiteStatus s) const {
    for (const auto& r : suites)
      if (r.status == s) return true;
    return false;
  }
};

inline std::string set_string(const Graph& g, const VertexSet& s) {
  std::string out = "{";
  for (const auto& n : names(g, s)) out += (out.size() > 1 ? "," : "") + n;
  return out + "}";
}

/// Cross-checks every graph-side criterion against its dynamical or
/// operator-side counterpart. The graph must be valid and shift-total.
inline VerificationResult run_suites(const Graph& g, const SuiteOptions& opt = {}) {
  VerificationResult out;
  out.depth = opt.depth;

  {
    SuiteResult r{"identities", SuiteStatus::Pass, {}};
    out.identities = verify_identities(g, opt.depth, opt.identities);
    for (const auto& c : out.identities->checks)
      if (!c.passed) r.fail(c.name + " (" + c.statement + ") fails at " + c.counterexample + "; lhs " + c.lhs + ", rhs " + c.rhs);
    out.suites.push_back(std::move(r));
  }
  {
    SuiteResult r{"topological_freeness", SuiteStatus::Pass, {}};
    const bool a = condition_L(g).holds;
    const bool b = topologically_free_dynamical(g);
    r.details.push_back(std::string("condition (L): ") + (a ? "holds" : "fails") + "; interior of every H_{m,n} empty: " +
                        (b ? "yes" : "no"));
    if (a != b) r.fail("the two computations disagree");
    out.suites.push_back(std::move(r));
  }
  {
    SuiteResult r{"cluster_points", SuiteStatus::Pass, {}};
    for (const auto& xi : cycle_orbit_points(g)) {
      const bool by_paths = count_return_paths(g, range(g, xi)) == ReturnPaths::Many;
      const auto search = cluster_point_search(g, xi, opt.search);
      r.details.push_back(to_string(g, xi) + ": return paths say " + (by_paths ? "cluster" : "isolated") + ", search " +
                          to_string(search));
      if (search == SearchOutcome::Indeterminate) {
        if (r.status == SuiteStatus::Pass) r.status = SuiteStatus::Indeterminate;
      } else if (by_paths != (search == SearchOutcome::Confirmed)) {
        r.fail("disagreement at " + to_string(g, xi));
      }
    }
    out.suites.push_back(std::move(r));
  }
  {
    SuiteResult r{"heads_correspondence", SuiteStatus::Pass, {}};
    const auto hc = heads_correspondence(g, opt.limit, opt.search);
    for (const auto& [beta, m] : hc.pairs) r.details.push_back(to_string(g, beta.point) + " -> " + set_string(g, m));
    if (!hc.holds) r.fail(hc.detail);
    out.suites.push_back(std::move(r));
  }
  {
    SuiteResult r{"invariant_roundtrip", SuiteStatus::Pass, {}};
    for (const auto& h : enumerate_sat_hered(g, opt.limit).sets) {
      const auto rt = invariant_roundtrip(g, h);
      r.details.push_back("H = " + set_string(g, h) + ": " + (rt.holds ? "ok" : "broken") + " over " +
                          std::to_string(rt.points) + " sample points");
      if (!rt.holds) r.fail("H = " + set_string(g, h) + ": " + rt.detail);
    }
    out.suites.push_back(std::move(r));
  }
  return out;
}

struct ReturnPathEntry {
  Vertex vertex;
  ReturnPaths count;
};

struct StructureReport {
  explicit StructureReport(Graph g) : graph(std::move(g)) {}

  Graph graph;
  ValidityReport validity;
  ConditionL condition_L;
  ConditionK condition_K;
  Cofinality cofinal;
  bool topologically_free = false;
  bool irreducible = false;
  bool simple = false;
  bool all_ideals_gauge_invariant = false;
  std::vector<ReturnPathEntry> return_paths;
  IdealLattice lattice;
  std::vector<MaximalHead> heads;
  PrimIdealCatalog catalog;
  std::optional<VerificationResult> verification;
};

/// Runs every analysis on a graph without sources. Verification suites are
/// included when `suites` is set and the graph is shift-total; otherwise only
/// the graph-side predicates are computed.
inline StructureReport analyze(const Graph& g, const std::optional<SuiteOptions>& suites, const EnumerationLimit& limit) {
  StructureReport rep(g);
  rep.validity = validate(g);
  if (!rep.validity.no_sources) throw std::invalid_argument("graph has sources; analysis needs r^-1(v) non-empty");
  rep.condition_L = condition_L(g);
  rep.condition_K = condition_K(g);
  rep.cofinal = cofinal(g);
  rep.topologically_free = rep.validity.shift_total ? topologically_free(g) : rep.condition_L.holds;
  rep.irreducible = rep.cofinal.holds;
  rep.simple = rep.condition_L.holds && rep.cofinal.holds;
  rep.all_ideals_gauge_invariant = rep.condition_K.holds;
  for (auto v : g.vertices()) rep.return_paths.push_back({v, count_return_paths(g, v)});
  rep.lattice = enumerate_sat_hered(g, limit);
  rep.heads = maximal_heads(g, limit);
  rep.catalog = primitive_catalog(g, limit);
  if (suites && rep.validity.shift_total) rep.verification = run_suites(g, *suites);
  return rep;
}

// JSON ---------------------------------------------------------------------

inline nlohmann::json to_json(const Graph& g, const VertexSet& s) { return names(g, s); }

inline nlohmann::json to_json(const CylinderSpace& space, const CylFun& f) {
  nlohmann::json entries = nlohmann::json::array();
  for (std::size_t i = 0; i < f.values.size(); ++i) {
    if (f.values[i].is_zero()) continue;
    entries.push_back({{"path", path_string(space.graph(), space.paths(f.depth)[i])},
                       {"re", f.values[i].re.str()},
                       {"im", f.values[i].im.str()}});
  }
  return {{"depth", f.depth}, {"entries", std::move(entries)}};
}

inline nlohmann::json to_json(const VerificationResult& v) {
  nlohmann::json suites = nlohmann::json::object();
  for (const auto& s : v.suites) suites[s.name] = {{"status", to_string(s.status)}, {"details", s.details}};
  nlohmann::json checks = nlohmann::json::object();
  if (v.identities)
    for (const auto& c : v.identities->checks) {
      nlohmann::json j = {{"passed", c.passed}, {"statement", c.statement}, {"instances", c.instances}};
      if (!c.passed) j["counterexample"] = {{"at", c.counterexample}, {"lhs", c.lhs}, {"rhs", c.rhs}};
      checks[c.name] = std::move(j);
    }
  return {{"depth", v.depth}, {"suites", std::move(suites)}, {"identity_checks", std::move(checks)}};
}

inline nlohmann::json to_json(const StructureReport& r) {
  const Graph& g = r.graph;
  auto vnames = [&](const std::vector<Vertex>& vs) {
    std::vector<std::string> out;
    for (auto v : vs) out.push_back(g.name(v));
    return out;
  };
  auto path_or_null = [&](const std::optional<Path>& p) -> nlohmann::json {
    if (!p) return nullptr;
    return path_string(g, *p);
  };

  nlohmann::json graph;
  graph["vertex_count"] = g.num_vertices();
  graph["edge_count"] = g.num_edges();
  graph["vertices"] = nlohmann::json::array();
  nlohmann::json c = nlohmann::json::object();
  for (auto v : g.vertices()) {
    graph["vertices"].push_back(g.name(v));
    c[g.name(v)] = g.c(v);
  }
  graph["c"] = std::move(c);
  graph["edges"] = nlohmann::json::array();
  for (auto e : g.edges())
    graph["edges"].push_back({{"id", g.name(e)}, {"r", g.name(g.range(e))}, {"s", g.name(g.source(e))}});

  const nlohmann::json validity = {
      {"no_sources", r.validity.no_sources},
      {"shift_total", r.validity.shift_total},
      {"row_finite", r.validity.row_finite},
      {"column_finite", r.validity.column_finite},
      {"source_witnesses", vnames(r.validity.source_witnesses)},
      {"sink_witnesses", vnames(r.validity.sink_witnesses)},
  };

  nlohmann::json returns = nlohmann::json::object();
  for (const auto& [v, n] : r.return_paths) returns[g.name(v)] = to_string(n);
  nlohmann::json unreachable = nullptr;
  if (r.cofinal.witness)
    unreachable = {{"vertex", g.name(r.cofinal.witness->first)}, {"cycle", path_string(g, r.cofinal.witness->second)}};
  nlohmann::json predicates = {
      {"condition_L", r.condition_L.holds},
      {"condition_K", r.condition_K.holds},
      {"cofinal", r.cofinal.holds},
      {"topologically_free", r.topologically_free},
      {"irreducible", r.irreducible},
      {"simple", r.simple},
      {"all_ideals_gauge_invariant", r.all_ideals_gauge_invariant},
      {"return_paths", std::move(returns)},
      {"witnesses",
       {{"entryless_cycle", path_or_null(r.condition_L.entryless_cycle)},
        {"single_return_vertex",
         r.condition_K.single_return_vertex ? nlohmann::json(g.name(*r.condition_K.single_return_vertex))
                                            : nlohmann::json(nullptr)},
        {"not_cofinal", std::move(unreachable)}}},
  };

  nlohmann::json lattice = nlohmann::json::array();
  for (const auto& s : r.lattice.sets) lattice.push_back(to_json(g, s));
  nlohmann::json covers = nlohmann::json::array();
  for (auto [i, j] : r.lattice.covers) covers.push_back({i, j});
  nlohmann::json heads = nlohmann::json::array();
  for (const auto& h : r.heads)
    heads.push_back({{"vertices", to_json(g, h.vertices)},
                     {"in_Ml", h.in_Ml()},
                     {"entryless_cycle", path_or_null(h.entryless_cycle)}});
  const nlohmann::json ideals = {
      {"gauge_invariant_count", r.lattice.sets.size()},
      {"lattice", std::move(lattice)},
      {"covers", std::move(covers)},
      {"maximal_heads", std::move(heads)},
  };

  nlohmann::json gi = nlohmann::json::array();
  for (const auto& h : r.catalog.gauge_invariant_primitives)
    gi.push_back({{"head", to_json(g, h.vertices)}, {"ideal", to_json(g, h.vertices.complement())}});
  nlohmann::json circles = nlohmann::json::array();
  for (const auto& h : r.catalog.circle_families)
    circles.push_back({{"head", to_json(g, h.vertices)}, {"parameter", "T"}});
  const nlohmann::json primitive = {{"gauge_invariant", std::move(gi)}, {"circle_families", std::move(circles)}};

  return {
      {"graph", std::move(graph)},
      {"validity", validity},
      {"predicates", std::move(predicates)},
      {"ideals", ideals},
      {"primitive_ideals", primitive},
      {"verification", r.verification ? to_json(*r.verification) : nlohmann::json(nullptr)},
  };
}

// Text ---------------------------------------------------------------------

inline std::string to_text(const VerificationResult& v) {
  std::ostringstream os;
  os << "verification (depth " << v.depth << ")\n";
  for (const auto& s : v.suites) {
    os << "  " << (s.status == SuiteStatus::Pass ? "PASS" : s.status == SuiteStatus::Fail ? "FAIL" : "INDETERMINATE")
       << "  " << s.name << "\n";
    for (const auto& d : s.details) os << "        " << d << "\n";
  }
  if (v.identities)
    for (const auto& c : v.identities->checks)
      os << "  " << (c.passed ? "ok  " : "FAIL") << "  identity " << c.name << " [" << c.instances << " instances]\n";
  return os.str();
}

inline std::string to_text(const StructureReport& r) {
  const Graph& g = r.graph;
  std::ostringstream os;
  auto yes = [](bool b) { return b ? "yes" : "no"; };
  os << "graph: " << g.num_vertices() << " vertices, " << g.num_edges() << " edges\n";
  os << "c:";
  for (auto v : g.vertices()) os << " " << g.name(v) << "=" << g.c(v);
  os << "\n\n";
  os << "condition (L)         " << yes(r.condition_L.holds);
  if (r.condition_L.entryless_cycle) os << "  (cycle " << path_string(g, *r.condition_L.entryless_cycle) << " has no entry)";
  os << "\ncondition (K)         " << yes(r.condition_K.holds);
  if (r.condition_K.single_return_vertex)
    os << "  (" << g.name(*r.condition_K.single_return_vertex) << " has exactly one return path)";
  os << "\ncofinal               " << yes(r.cofinal.holds);
  if (r.cofinal.witness)
    os << "  (" << g.name(r.cofinal.witness->first) << " is not reachable from cycle "
       << path_string(g, r.cofinal.witness->second) << ")";
  os << "\ntopologically free    " << yes(r.topologically_free) << "\nirreducible           " << yes(r.irreducible)
     << "\nsimple                " << yes(r.simple) << "\nall ideals gauge-inv. " << yes(r.all_ideals_gauge_invariant)
     << "\n\n";

  os << "saturated hereditary sets (" << r.lattice.sets.size() << "):\n";
  for (std::size_t i = 0; i < r.lattice.sets.size(); ++i) os << "  [" << i << "] " << set_string(g, r.lattice.sets[i]) << "\n";
  os << "covers:";
  for (auto [i, j] : r.lattice.covers) os << " " << i << "<" << j;
  os << "\n\nmaximal heads (" << r.heads.size() << "):\n";
  for (const auto& h : r.heads) {
    os << "  " << set_string(g, h.vertices);
    if (h.entryless_cycle) os << "  entry-less cycle " << path_string(g, *h.entryless_cycle);
    os << "\n";
  }
  os << "\nprimitive ideals: " << r.catalog.gauge_invariant_primitives.size() << " gauge-invariant, "
     << r.catalog.circle_families.size() << " circle families\n";
  for (const auto& h : r.catalog.gauge_invariant_primitives)
    os << "  I_H with H = " << set_string(g, h.vertices.complement()) << "\n";
  for (const auto& h : r.catalog.circle_families) os << "  I_{M,w}, w in T, M = " << set_string(g, h.vertices) << "\n";
  if (r.verification) os << "\n" << to_text(*r.verification);
  return os.str();
}

}  // namespace exelgraph
