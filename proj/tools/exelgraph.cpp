// exelgraph: structural analysis of finite directed graphs through their
// path-space dynamics and graph algebras.
//
//   exelgraph analyze  FILE [--format json|text] [--depth D]
//   exelgraph verify   FILE [--depth D] [--orbit-bound N] [--seed S]
//   exelgraph corpus   [--max-vertices V] [--max-edges E] [--random R] [--seed S] [--depth D]
//   exelgraph validate FILE
//
// Exit codes: 0 success, 1 invalid input, 2 property violation, 3 resource bound.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "exelgraph/corpus.hpp"
#include "exelgraph/errors.hpp"
#include "exelgraph/graph.hpp"
#include "exelgraph/report.hpp"

namespace {

using namespace exelgraph;

constexpr int kOk = 0;
constexpr int kInvalidInput = 1;
constexpr int kViolation = 2;
constexpr int kBound = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Graph load(const std::string& file) {
  std::ostringstream text;
  if (file == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(file);
    if (!in) throw InputError("cannot read '" + file + "'");
    text << in.rdbuf();
  }
  try {
    return parse_graph(text.str());
  } catch (const ParseError& e) {
    throw InputError(file + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(file + ": " + e.what());
  }
}

std::string describe_invalid(const Graph& g, const ValidityReport& v) {
  std::string msg;
  auto list = [&](const std::vector<Vertex>& vs) {
    std::string s;
    for (auto x : vs) s += (s.empty() ? "" : ", ") + g.name(x);
    return s;
  };
  if (!v.no_sources) msg += "vertices receiving no edge (sources): " + list(v.source_witnesses) + "\n";
  if (!v.shift_total) msg += "vertices emitting no edge: " + list(v.sink_witnesses) + "\n";
  return msg;
}

/// Loads the graph and refuses anything the analyses are not defined on.
Graph load_valid(const std::string& file) {
  Graph g = load(file);
  const auto v = validate(g);
  if (!v.ok()) throw InputError(file + ": graph is not valid for analysis\n" + describe_invalid(g, v));
  return g;
}

int cmd_validate(const std::string& file) {
  const Graph g = load(file);
  const auto v = validate(g);
  std::cout << "no_sources     " << (v.no_sources ? "yes" : "no") << "\n"
            << "shift_total    " << (v.shift_total ? "yes" : "no") << "\n"
            << "row_finite     " << (v.row_finite ? "yes" : "no") << "\n"
            << "column_finite  " << (v.column_finite ? "yes" : "no") << "\n";
  if (v.ok()) return kOk;
  std::cerr << describe_invalid(g, v);
  return kInvalidInput;
}

/// A graph that is not shift-total still gets the graph-side report, but
/// the run counts as a validation failure.
int cmd_analyze(const std::string& file, const std::string& format, const SuiteOptions& suites) {
  const Graph g = load(file);
  const auto v = validate(g);
  if (!v.no_sources) throw InputError(file + ": graph is not valid for analysis\n" + describe_invalid(g, v));
  if (!v.shift_total)
    std::cerr << "warning: " << file << ": " << describe_invalid(g, v)
              << "warning: transfer-operator and dynamical checks skipped\n";
  const auto rep = analyze(g, suites, suites.limit);
  if (format == "json") std::cout << to_json(rep).dump(2) << "\n";
  else std::cout << to_text(rep);
  return v.ok() ? kOk : kInvalidInput;
}

int cmd_verify(const std::string& file, const std::string& format, const SuiteOptions& suites) {
  const Graph g = load_valid(file);
  const auto res = run_suites(g, suites);
  if (format == "json") std::cout << to_json(res).dump(2) << "\n";
  else std::cout << to_text(res);
  if (res.any(SuiteStatus::Fail)) return kViolation;
  if (res.any(SuiteStatus::Indeterminate)) return kBound;
  return kOk;
}

int cmd_corpus(std::size_t max_vertices, std::size_t max_edges, std::size_t random, std::uint64_t seed,
               const CorpusOptions& opt) {
  const auto exhaustive = exhaustive_corpus(max_vertices, max_edges);
  const auto sampled = random_corpus(random, seed, max_vertices);
  const auto rep = run_corpus(exhaustive, sampled, opt);
  std::cout << "exhaustive graphs (<= " << max_vertices << " vertices, <= " << max_edges << " edges): " << rep.exhaustive
            << "\nrandom graphs (seed " << seed << "): " << rep.random << "\n";
  for (const auto& name : corpus_check_names()) std::cout << "  " << name << ": " << rep.failures.at(name) << " violations\n";
  for (const auto& v : rep.violations) std::cout << "\nviolation of " << v.check << ": " << v.detail << "\n" << v.graph;
  std::cout << rep.graphs << " graphs checked, " << rep.violations.size() << " violations\n";
  return rep.passed() ? kOk : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural analysis of graph algebras via path-space dynamics"};
  app.require_subcommand(1);

  std::string file;
  std::string format = "text";
  std::size_t depth = 3;
  std::optional<std::size_t> orbit_bound;
  std::uint64_t seed = 1;

  auto* analyze_cmd = app.add_subcommand("analyze", "Full structural report");
  analyze_cmd->add_option("file", file, "Graph file ('-' for stdin)")->required();
  analyze_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  auto* analyze_depth = analyze_cmd->add_option("--depth", depth, "Cylinder depth for the identity checks (default 2)");
  analyze_cmd->add_option("--orbit-bound", orbit_bound, "Length bound for the cluster-point search");
  analyze_cmd->add_option("--seed", seed, "Seed for sampled identity checks");

  auto* verify_cmd = app.add_subcommand("verify", "Run every cross-check suite");
  verify_cmd->add_option("file", file, "Graph file ('-' for stdin)")->required();
  verify_cmd->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "text"}));
  verify_cmd->add_option("--depth", depth, "Cylinder depth for the identity checks")->capture_default_str();
  verify_cmd->add_option("--orbit-bound", orbit_bound, "Length bound for the cluster-point search");
  verify_cmd->add_option("--seed", seed, "Seed for sampled identity checks")->capture_default_str();

  std::size_t max_vertices = 4, max_edges = 6, random = 200;
  auto* corpus_cmd = app.add_subcommand("corpus", "Check the equivalences over a graph corpus");
  corpus_cmd->add_option("--max-vertices", max_vertices, "Vertex bound of the exhaustive sweep")->capture_default_str();
  corpus_cmd->add_option("--max-edges", max_edges, "Edge bound of the exhaustive sweep")->capture_default_str();
  corpus_cmd->add_option("--random", random, "Number of random graphs")->capture_default_str();
  corpus_cmd->add_option("--seed", seed, "Seed for the random graphs")->capture_default_str();
  corpus_cmd->add_option("--depth", depth, "Cylinder depth for the identity checks")->capture_default_str();

  auto* validate_cmd = app.add_subcommand("validate", "Check the standing hypotheses");
  validate_cmd->add_option("file", file, "Graph file ('-' for stdin)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    SuiteOptions suites;
    suites.limit = EnumerationLimit::from_env();
    suites.depth = depth;
    suites.identities.seed = seed;
    suites.search.length_bound = orbit_bound;

    if (*validate_cmd) return cmd_validate(file);
    if (*analyze_cmd) {
      if (analyze_depth->count() == 0) suites.depth = 2;
      return cmd_analyze(file, format, suites);
    }
    if (*verify_cmd) return cmd_verify(file, format, suites);
    CorpusOptions opt;
    opt.limit = suites.limit;
    opt.identity_depth = depth;
    opt.identities.seed = seed;
    return cmd_corpus(max_vertices, max_edges, random, seed, opt);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const BoundExceeded& e) {
    std::cerr << "bound exceeded: " << e.what() << "\n";
    return kBound;
  } catch (const std::overflow_error& e) {
    std::cerr << "arithmetic bound exceeded: " << e.what() << "\n";
    return kBound;
  } catch (const PropertyViolation& e) {
    std::cerr << "property violation: " << e.what() << "\n";
    return kViolation;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalidInput;
  }
}
