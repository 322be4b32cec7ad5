#pragma once

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "exelgraph/combinatorics.hpp"
#include "exelgraph/graph.hpp"
#include "exelgraph/rational.hpp"

namespace exelgraph {

/// Locally constant function on E^∞ that only looks at the first `depth`
/// edges: one Gaussian-rational value per path of length `depth` (per vertex
/// when depth is 0), in the order of CylinderSpace::paths(depth).
struct CylFun {
  std::size_t depth = 0;
  std::vector<Gaussian> values;

  bool is_zero() const {
    return std::all_of(values.begin(), values.end(), [](const Gaussian& z) { return z.is_zero(); });
  }
};

class DepthError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// Finite formal sum of φ(a) (pointwise multiplication) and rank-one
/// Θ_{x,y}(z) = x · ⟨y, z⟩ terms with Gaussian-rational coefficients.
struct CylOperator {
  enum class Kind { Mult, Theta };
  struct Term {
    Gaussian coeff;
    Kind kind;
    CylFun a;  // multiplier, or x for Θ_{x,y}
    CylFun b;  // y for Θ_{x,y}
  };
  std::vector<Term> terms;

  static CylOperator mult(CylFun a) { return {{{Gaussian(1), Kind::Mult, std::move(a), {}}}}; }
  static CylOperator theta(CylFun x, CylFun y) { return {{{Gaussian(1), Kind::Theta, std::move(x), std::move(y)}}}; }

  /// Smallest depth at which the operator maps depth-d functions to depth-d
  /// functions.
  std::size_t min_depth() const {
    std::size_t d = 0;
    for (const auto& t : terms)
      d = std::max(d, t.kind == Kind::Mult ? t.a.depth : std::max({t.a.depth, t.b.depth, std::size_t{1}}));
    return d;
  }

  friend CylOperator operator+(CylOperator a, const CylOperator& b) {
    a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
    return a;
  }
  friend CylOperator operator*(const Gaussian& s, CylOperator op) {
    for (auto& t : op.terms) t.coeff = s * t.coeff;
    return op;
  }
};

/// Square matrix over Gaussian rationals; column j is the image of the j-th
/// depth-d cylinder indicator.
struct GaussMatrix {
  std::size_t n = 0;
  std::vector<Gaussian> entries;  // row-major

  const Gaussian& at(std::size_t row, std::size_t col) const { return entries[row * n + col]; }
  Gaussian& at(std::size_t row, std::size_t col) { return entries[row * n + col]; }
  friend bool operator==(const GaussMatrix&, const GaussMatrix&) = default;
};

/// The cylinder basis of a graph up to a fixed depth, and exact arithmetic on
/// the functions it spans: the shift endomorphism α(f) = f∘σ, the averaging
/// transfer operator L, the right Hilbert-module structure f·a = f α(a) with
/// ⟨f, h⟩ = L(f̄ h), and operators built from φ and Θ.
///
/// All operations require a shift-total graph (s⁻¹(v) ≠ ∅ everywhere), since
/// L divides by c(v) = |s⁻¹(v)|.
class CylinderSpace {
 public:
  CylinderSpace(const Graph& g, std::size_t max_depth) : g_(g), max_depth_(max_depth) {
    for (auto v : g.vertices())
      if (g.c(v) == 0) throw std::invalid_argument("vertex '" + g.name(v) + "' emits no edges; L is undefined");
    levels_.push_back(enumerate_paths(g, 0));
    for (std::size_t d = 1; d <= max_depth; ++d) {
      std::vector<Path> next;
      for (const auto& p : levels_.back()) {
        for (auto e : g.edges_into(p.source(g))) {
          Path q = p;
          q.edges.push_back(e);
          next.push_back(std::move(q));
        }
      }
      // Level 1 must be in edge order, which extension of vertices is not.
      std::sort(next.begin(), next.end());
      levels_.push_back(std::move(next));
    }
    index_.resize(max_depth + 1);
    for (std::size_t d = 1; d <= max_depth; ++d)
      for (std::size_t i = 0; i < levels_[d].size(); ++i) index_[d].emplace(levels_[d][i].edges, i);

    tail_.resize(max_depth + 1);
    siblings_by_tail_.resize(max_depth + 1);
    children_.resize(max_depth + 1);
    for (std::size_t d = 1; d <= max_depth; ++d) {
      siblings_by_tail_[d - 1].resize(levels_[d - 1].size());
      children_[d - 1].resize(levels_[d - 1].size());
      for (std::size_t i = 0; i < levels_[d].size(); ++i) {
        const auto& p = levels_[d][i];
        const std::size_t t = d == 1 ? g.source(p.edges[0]).idx()
                                     : index_[d - 1].at(std::vector<Edge>(p.edges.begin() + 1, p.edges.end()));
        tail_[d].push_back(t);
        siblings_by_tail_[d - 1][t].push_back(i);
        const std::size_t parent =
            d == 1 ? p.base.idx() : index_[d - 1].at(std::vector<Edge>(p.edges.begin(), p.edges.end() - 1));
        children_[d - 1][parent].push_back(i);
      }
    }
  }

  const Graph& graph() const { return g_; }
  std::size_t max_depth() const { return max_depth_; }
  const std::vector<Path>& paths(std::size_t d) const { return levels_.at(check(d)); }
  std::size_t dim(std::size_t d) const { return paths(d).size(); }

  std::size_t index_of(const Path& p) const {
    check(p.length());
    if (p.empty()) return p.base.idx();
    return index_[p.length()].at(p.edges);
  }

  CylFun zero(std::size_t d) const { return {d, std::vector<Gaussian>(dim(d))}; }
  CylFun constant(std::size_t d, const Gaussian& z) const { return {d, std::vector<Gaussian>(dim(d), z)}; }

  /// Indicator of Z(μ), at depth |μ|.
  CylFun chi(const Path& mu) const {
    CylFun f = zero(mu.length());
    f.values[index_of(mu)] = 1;
    return f;
  }
  CylFun chi(Vertex v) const { return chi(Path::trivial(v)); }
  CylFun chi(Edge e) const { return chi(Path{g_.range(e), {e}}); }

  /// Same function, tabulated at a deeper level.
  CylFun refine(CylFun f, std::size_t depth) const {
    if (depth < f.depth) throw DepthError("cannot refine to a shallower depth");
    check(depth);
    while (f.depth < depth) {
      CylFun next = zero(f.depth + 1);
      for (std::size_t i = 0; i < f.values.size(); ++i)
        if (!f.values[i].is_zero())
          for (auto c : children_[f.depth][i]) next.values[c] = f.values[i];
      f = std::move(next);
    }
    return f;
  }

  /// Equality as functions on E^∞.
  bool equal(const CylFun& f, const CylFun& h) const {
    const auto d = std::max(f.depth, h.depth);
    return refine(f, d).values == refine(h, d).values;
  }

  CylFun add(const CylFun& f, const CylFun& h) const {
    return zip(f, h, [](const Gaussian& a, const Gaussian& b) { return a + b; });
  }
  CylFun sub(const CylFun& f, const CylFun& h) const {
    return zip(f, h, [](const Gaussian& a, const Gaussian& b) { return a - b; });
  }
  CylFun mul(const CylFun& f, const CylFun& h) const {
    if (f.depth != h.depth) {
      const auto d = std::max(f.depth, h.depth);
      return mul(refine(f, d), refine(h, d));
    }
    CylFun out = zero(f.depth);
    for (std::size_t i = 0; i < out.values.size(); ++i)
      if (!f.values[i].is_zero() && !h.values[i].is_zero()) out.values[i] = f.values[i] * h.values[i];
    return out;
  }
  CylFun scale(const Gaussian& s, CylFun f) const {
    for (auto& z : f.values) z = s * z;
    return f;
  }
  CylFun conj(CylFun f) const {
    for (auto& z : f.values) z = z.conj();
    return f;
  }

  /// α(f) = f∘σ: value at eμ is f(μ); a vertex function f becomes x ↦ f(s(x)).
  CylFun alpha(const CylFun& f) const {
    CylFun out = zero(f.depth + 1);
    const auto& tails = tail_[out.depth];
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = f.values[tails[i]];
    return out;
  }

  /// L(f)(ξ) = c(r(ξ))⁻¹ Σ_{s(e)=r(ξ)} f(eξ), tabulated at depth max(d−1, 0).
  CylFun transfer(const CylFun& f) const {
    if (f.depth == 0) return transfer(refine(f, 1));
    CylFun out = zero(f.depth - 1);
    for (std::size_t t = 0; t < out.values.size(); ++t) {
      Gaussian sum;
      for (auto i : siblings_by_tail_[out.depth][t])
        if (!f.values[i].is_zero()) sum += f.values[i];
      if (sum.is_zero()) continue;
      out.values[t] = sum * Rational(1, static_cast<std::int64_t>(g_.c(range_of(out.depth, t))));
    }
    return out;
  }

  /// ⟨f, h⟩ = L(f̄ h); conjugate-linear in f.
  CylFun inner(const CylFun& f, const CylFun& h) const { return transfer(mul(conj(f), h)); }

  /// f · a = f α(a).
  CylFun right_act(const CylFun& f, const CylFun& a) const { return mul(f, alpha(a)); }

  /// T(z) tabulated at `depth`, which must be at least T.min_depth() and the
  /// depth of z.
  CylFun apply(const CylOperator& op, const CylFun& z, std::size_t depth) const {
    if (depth < op.min_depth() || depth < z.depth)
      throw DepthError("operator applied at depth " + std::to_string(depth) + " needs depth " +
                       std::to_string(std::max(op.min_depth(), z.depth)));
    CylFun out = zero(depth);
    for (const auto& t : op.terms) {
      CylFun part = t.kind == CylOperator::Kind::Mult ? mul(t.a, z) : right_act(t.a, inner(t.b, z));
      part = refine(std::move(part), depth);
      for (std::size_t i = 0; i < out.values.size(); ++i)
        if (!part.values[i].is_zero()) out.values[i] += t.coeff * part.values[i];
    }
    return out;
  }

  GaussMatrix op_matrix(const CylOperator& op, std::size_t depth) const {
    GaussMatrix m{dim(depth), {}};
    m.entries.resize(m.n * m.n);
    for (std::size_t j = 0; j < m.n; ++j) {
      const CylFun col = apply(op, chi(paths(depth)[j]), depth);
      for (std::size_t i = 0; i < m.n; ++i) m.at(i, j) = col.values[i];
    }
    return m;
  }

  /// `{path: value, …}` listing of non-zero entries.
  std::string describe(const CylFun& f) const {
    std::string s = "depth " + std::to_string(f.depth) + " {";
    bool first = true;
    for (std::size_t i = 0; i < f.values.size(); ++i) {
      if (f.values[i].is_zero()) continue;
      s += (first ? "" : ", ") + path_string(g_, paths(f.depth)[i]) + ": " + f.values[i].str();
      first = false;
    }
    return s + "}";
  }

  Vertex range_of(std::size_t depth, std::size_t i) const { return paths(depth)[i].base; }

 private:
  std::size_t check(std::size_t d) const {
    if (d > max_depth_)
      throw DepthError("depth " + std::to_string(d) + " exceeds the space's maximum " + std::to_string(max_depth_));
    return d;
  }

  template <typename Op>
  CylFun zip(const CylFun& f, const CylFun& h, Op op) const {
    if (f.depth != h.depth) {
      const auto d = std::max(f.depth, h.depth);
      return zip(refine(f, d), refine(h, d), op);
    }
    CylFun out = zero(f.depth);
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] = op(f.values[i], h.values[i]);
    return out;
  }

  Graph g_;
  std::size_t max_depth_;
  std::vector<std::vector<Path>> levels_;
  std::vector<std::map<std::vector<Edge>, std::size_t>> index_;
  std::vector<std::vector<std::size_t>> tail_;                           // level d: index at d−1 of μ₂…μ_d
  std::vector<std::vector<std::vector<std::size_t>>> siblings_by_tail_;  // level d: {eν} per ν at d
  std::vector<std::vector<std::vector<std::size_t>>> children_;          // level d: {μe} per μ at d
};

}  // namespace exelgraph
