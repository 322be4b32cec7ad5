#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "exelgraph/cylinder.hpp"
#include "exelgraph/graph.hpp"
#include "exelgraph/rational.hpp"

namespace exelgraph {

struct IdentityCheck {
  std::string name;
  std::string statement;
  bool passed = true;
  std::size_t instances = 0;
  // Populated on the first failure only.
  std::string counterexample;
  std::string lhs;
  std::string rhs;
};

struct IdentityReport {
  std::size_t depth = 0;
  std::vector<IdentityCheck> checks;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
  const IdentityCheck* find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

struct IdentityOptions {
  std::uint64_t seed = 1;
  std::size_t faithfulness_samples = 50;
  std::size_t adjoint_samples = 3;  // (z, w) pairs per depth
};

/// Cylinder function of the given depth with random Gaussian-rational
/// entries, about half of them zero.
inline CylFun random_cylfun(const CylinderSpace& space, std::size_t depth, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<std::int64_t> num(-6, 6);
  std::uniform_int_distribution<std::int64_t> den(1, 5);
  CylFun f = space.zero(depth);
  for (auto& z : f.values)
    if (coin(rng)) z = Gaussian(Rational(num(rng), den(rng)), Rational(num(rng), den(rng)));
  return f;
}

namespace detail {

/// Accumulates one named identity check.
class CheckRecorder {
 public:
  CheckRecorder(const CylinderSpace& space, std::string name, std::string statement) : space_(space) {
    check_.name = std::move(name);
    check_.statement = std::move(statement);
  }

  void expect_equal(const CylFun& lhs, const CylFun& rhs, const std::function<std::string()>& where) {
    ++check_.instances;
    if (!check_.passed || space_.equal(lhs, rhs)) return;
    check_.passed = false;
    check_.counterexample = where();
    check_.lhs = space_.describe(lhs);
    check_.rhs = space_.describe(rhs);
  }

  void expect(bool ok, const std::function<std::string()>& where, const std::string& lhs = {},
              const std::string& rhs = {}) {
    ++check_.instances;
    if (!check_.passed || ok) return;
    check_.passed = false;
    check_.counterexample = where();
    check_.lhs = lhs;
    check_.rhs = rhs;
  }

  /// Operator equality at `depth`, column by column on cylinder indicators.
  void expect_same_operator(const CylOperator& a, const CylOperator& b, std::size_t depth,
                            const std::function<std::string()>& where) {
    ++check_.instances;
    if (!check_.passed) return;
    for (const auto& p : space_.paths(depth)) {
      const CylFun z = space_.chi(p);
      const CylFun lhs = space_.apply(a, z, depth);
      const CylFun rhs = space_.apply(b, z, depth);
      if (lhs.values != rhs.values) {
        check_.passed = false;
        check_.counterexample = where() + " on the indicator of " + path_string(space_.graph(), p);
        check_.lhs = space_.describe(lhs);
        check_.rhs = space_.describe(rhs);
        return;
      }
    }
  }

  IdentityCheck take() { return std::move(check_); }

 private:
  const CylinderSpace& space_;
  IdentityCheck check_;
};

}  // namespace detail

/// Runs the transfer-operator and bimodule identities over every cylinder
/// basis function up to depth `depth`, in exact arithmetic. The space must
/// be built to at least depth + 1.
///
/// The square roots √c(s(e)) attached to the Cuntz-Krieger partial
/// isometries always occur in pairs, so each relation is checked in the
/// radical-free form listed in the `statement` fields.
inline IdentityReport verify_identities(const CylinderSpace& space, std::size_t depth, const IdentityOptions& opt = {}) {
  if (space.max_depth() < depth + 1) throw DepthError("identity checks need a space of depth ≥ depth + 1");
  const Graph& g = space.graph();
  IdentityReport rep;
  rep.depth = depth;
  std::mt19937_64 rng(opt.seed);

  auto name_of = [&](const Path& p) { return path_string(g, p); };
  auto basis_upto = [&](std::size_t d) {
    std::vector<Path> out;
    for (std::size_t k = 0; k <= d; ++k)
      for (const auto& p : space.paths(k)) out.push_back(p);
    return out;
  };
  const auto basis = basis_upto(depth);
  const auto basis_below = depth == 0 ? std::vector<Path>{} : basis_upto(depth - 1);
  auto c_of = [&](Vertex v) { return Gaussian(static_cast<std::int64_t>(g.c(v))); };
  auto inv_c = [&](Vertex v) { return Gaussian(Rational(1, static_cast<std::int64_t>(g.c(v)))); };

  {
    detail::CheckRecorder rec(space, "transfer_law", "L(alpha(f) h) = f L(h)");
    for (const auto& fp : basis_below) {
      const CylFun f = space.chi(fp);
      const CylFun af = space.alpha(f);
      for (const auto& hp : basis) {
        const CylFun h = space.chi(hp);
        rec.expect_equal(space.transfer(space.mul(af, h)), space.mul(f, space.transfer(h)),
                         [&] { return "f = chi(" + name_of(fp) + "), h = chi(" + name_of(hp) + ")"; });
      }
    }
    rep.checks.push_back(rec.take());
  }
  {
    detail::CheckRecorder rec(space, "left_inverse", "L(alpha(f)) = f");
    for (const auto& fp : basis) {
      const CylFun f = space.chi(fp);
      rec.expect_equal(space.transfer(space.alpha(f)), f, [&] { return "f = chi(" + name_of(fp) + ")"; });
    }
    rep.checks.push_back(rec.take());
  }
  {
    detail::CheckRecorder rec(space, "cylinder_average", "L(chi(mu)) = c(s(mu_1))^-1 chi(mu_2...mu_n)");
    for (const auto& mp : basis) {
      if (mp.empty()) continue;
      const Vertex s1 = g.source(mp.edges.front());
      const Path rest = mp.length() == 1 ? Path::trivial(s1) : Path{g.range(mp.edges[1]), {mp.edges.begin() + 1, mp.edges.end()}};
      rec.expect_equal(space.transfer(space.chi(mp)), space.scale(inv_c(s1), space.chi(rest)),
                       [&] { return "mu = " + name_of(mp); });
    }
    rep.checks.push_back(rec.take());
  }
  {
    detail::CheckRecorder rec(space, "rank_one_multiplication",
                              "phi(chi(mu)) = c(s(mu_1)) Theta(chi(mu), chi(mu_1)) = c(s(mu_1)) Theta(chi(mu_1), chi(mu))");
    for (const auto& mp : basis) {
      if (mp.empty()) continue;
      const Edge first = mp.edges.front();
      const CylFun cm = space.chi(mp);
      const CylFun c1 = space.chi(first);
      const Gaussian c = c_of(g.source(first));
      const auto lhs = CylOperator::mult(cm);
      rec.expect_same_operator(lhs, c * CylOperator::theta(cm, c1), mp.length(),
                               [&] { return "mu = " + name_of(mp) + " (first form)"; });
      rec.expect_same_operator(lhs, c * CylOperator::theta(c1, cm), mp.length(),
                               [&] { return "mu = " + name_of(mp) + " (swapped form)"; });
    }
    rep.checks.push_back(rec.take());
  }
  {
    detail::CheckRecorder rec(space, "resolution_of_identity",
                              "phi(f) = sum_e c(s(e)) Theta(f chi(e), chi(e))");
    for (const auto& fp : basis) {
      const CylFun f = space.chi(fp);
      CylOperator rhs;
      for (auto e : g.edges()) {
        const CylFun ce = space.chi(e);
        rhs = rhs + c_of(g.source(e)) * CylOperator::theta(space.mul(f, ce), ce);
      }
      rec.expect_same_operator(CylOperator::mult(f), rhs, std::max<std::size_t>(fp.length(), 1),
                               [&] { return "f = chi(" + name_of(fp) + ")"; });
    }
    rep.checks.push_back(rec.take());
  }
  {
    detail::CheckRecorder rec(space, "cuntz_krieger_sum", "sum_{r(e)=v} c(s(e)) Theta(chi(e), chi(e)) = phi(chi(v))");
    for (auto v : g.vertices()) {
      CylOperator sum;
      for (auto e : g.edges_into(v)) sum = sum + c_of(g.source(e)) * CylOperator::theta(space.chi(e), space.chi(e));
      rec.expect_same_operator(sum, CylOperator::mult(space.chi(v)), 1, [&] { return "v = " + g.name(v); });
    }
    rep.checks.push_back(rec.take());
  }
  {
    detail::CheckRecorder rec(space, "isometry_relations",
                              "<chi(e), chi(f)> = delta(e,f) c(s(e))^-1 chi(s(e))");
    for (auto e : g.edges())
      for (auto f : g.edges()) {
        const CylFun expected = e == f ? space.scale(inv_c(g.source(e)), space.chi(g.source(e))) : space.zero(0);
        rec.expect_equal(space.inner(space.chi(e), space.chi(f)), expected,
                         [&] { return "e = " + g.name(e) + ", f = " + g.name(f); });
      }
    rep.checks.push_back(rec.take());
  }
  {
    detail::CheckRecorder rec(space, "adjoint_law", "<Theta(x,y) z, w> = <z, Theta(y,x) w>");
    // One seeded pool of (z, w) pairs per depth, shared by every (x, y).
    std::vector<std::vector<std::pair<CylFun, CylFun>>> pool(std::max<std::size_t>(depth, 1) + 1);
    for (std::size_t d = 1; d < pool.size(); ++d)
      for (std::size_t k = 0; k < opt.adjoint_samples; ++k) {
        CylFun z = random_cylfun(space, d, rng);
        pool[d].emplace_back(std::move(z), random_cylfun(space, d, rng));
      }
    for (const auto& xp : basis)
      for (const auto& yp : basis) {
        const CylFun x = space.chi(xp), y = space.chi(yp);
        const auto txy = CylOperator::theta(x, y);
        const auto tyx = CylOperator::theta(y, x);
        const std::size_t d = txy.min_depth();
        for (const auto& [z, w] : pool[d]) {
          rec.expect_equal(space.inner(space.apply(txy, z, d), w), space.inner(z, space.apply(tyx, w, d)), [&] {
            return "x = chi(" + name_of(xp) + "), y = chi(" + name_of(yp) + "), z = " + space.describe(z) +
                   ", w = " + space.describe(w);
          });
        }
      }
    rep.checks.push_back(rec.take());
  }
  {
    detail::CheckRecorder rec(space, "faithfulness", "<f, f> >= 0, and <f, f> = 0 only for f = 0");
    std::uniform_int_distribution<std::size_t> pick_depth(0, depth);
    auto one = [&](const CylFun& f) {
      const CylFun ff = space.inner(f, f);
      bool positive = true;
      for (const auto& z : ff.values) positive = positive && z.im.is_zero() && z.re.sign() >= 0;
      const bool faithful = ff.is_zero() == f.is_zero();
      rec.expect(positive && faithful, [&] { return "f = " + space.describe(f); }, space.describe(ff),
                 f.is_zero() ? "0" : "non-zero, positive");
    };
    one(space.zero(0));
    for (const auto& p : basis) one(space.chi(p));
    for (std::size_t k = 0; k < opt.faithfulness_samples; ++k) one(random_cylfun(space, pick_depth(rng), rng));
    rep.checks.push_back(rec.take());
  }
  return rep;
}

/// Convenience overload that builds the space itself.
inline IdentityReport verify_identities(const Graph& g, std::size_t depth, const IdentityOptions& opt = {}) {
  const CylinderSpace space(g, depth + 1);
  return verify_identities(space, depth, opt);
}

}  // namespace exelgraph
