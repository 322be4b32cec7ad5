#include <gtest/gtest.h>

#include "exelgraph/cylinder.hpp"
#include "exelgraph/identities.hpp"
#include "support.hpp"

using namespace exelgraph;
using namespace testing_support;

namespace {

Gaussian q(std::int64_t n, std::int64_t d = 1) { return Gaussian(Rational(n, d)); }

/// Table of `f` keyed by path string, zeros included.
std::map<std::string, Gaussian> table(const CylinderSpace& s, const CylFun& f) {
  std::map<std::string, Gaussian> out;
  for (std::size_t i = 0; i < f.values.size(); ++i) out[path_string(s.graph(), s.paths(f.depth)[i])] = f.values[i];
  return out;
}

/// f evaluated on any path at least as long as its depth, read off the
/// prefix of that length.
Gaussian value_at(const CylinderSpace& s, const CylFun& f, const Path& p) {
  if (f.depth == 0) return f.values[p.base.idx()];
  return f.values[s.index_of(Path{p.base, {p.edges.begin(), p.edges.begin() + static_cast<std::ptrdiff_t>(f.depth)}})];
}

/// Path e·ν.
Path prepend(const Graph& g, Edge e, const Path& nu) {
  Path p{g.range(e), {e}};
  p.edges.insert(p.edges.end(), nu.edges.begin(), nu.edges.end());
  return p;
}

/// Path ν with its first edge removed.
Path drop_first(const Graph& g, const Path& nu) {
  if (nu.length() == 1) return Path::trivial(g.source(nu.edges[0]));
  return Path{g.range(nu.edges[1]), {nu.edges.begin() + 1, nu.edges.end()}};
}

}  // namespace

TEST(Chi, Examples) {
  const CylinderSpace s2(G2(), 3);
  EXPECT_EQ(table(s2, s2.chi(E(G2(), "e"))), (std::map<std::string, Gaussian>{{"e", q(1)}, {"f", q(0)}}));
  const Graph g4 = G4();
  const CylinderSpace s4(g4, 3);
  EXPECT_EQ(table(s4, s4.chi(V(g4, "v"))), (std::map<std::string, Gaussian>{{"v", q(1)}, {"w", q(0)}}));
  const Graph g3 = G3();
  const CylinderSpace s3(g3, 3);
  EXPECT_EQ(table(s3, s3.chi(P(g3, "a,b"))), (std::map<std::string, Gaussian>{{"a,b", q(1)}, {"b,a", q(0)}}));
}

TEST(Chi, RejectsGraphsWithSinks) {
  EXPECT_THROW(CylinderSpace(parse_graph(read_file(data_path("sink.graph"))), 2), std::invalid_argument);
}

TEST(Refine, Examples) {
  const Graph g2 = G2();
  const CylinderSpace s2(g2, 3);
  EXPECT_EQ(table(s2, s2.refine(s2.chi(E(g2, "e")), 2)),
            (std::map<std::string, Gaussian>{{"e,e", q(1)}, {"e,f", q(1)}, {"f,e", q(0)}, {"f,f", q(0)}}));
  const Graph g4 = G4();
  const CylinderSpace s4(g4, 3);
  EXPECT_EQ(table(s4, s4.refine(s4.chi(V(g4, "v")), 1)),
            (std::map<std::string, Gaussian>{{"e", q(1)}, {"h", q(1)}, {"k", q(0)}}));
  const CylFun f = s4.chi(P(g4, "h,k"));
  EXPECT_EQ(s4.refine(f, 2).values, f.values);
  EXPECT_THROW(s4.refine(f, 1), DepthError);
  EXPECT_THROW(s4.refine(f, 4), DepthError);
}

TEST(Alpha, Examples) {
  const Graph g4 = G4();
  const CylinderSpace s4(g4, 3);
  EXPECT_EQ(table(s4, s4.alpha(s4.chi(V(g4, "w")))),
            (std::map<std::string, Gaussian>{{"e", q(0)}, {"h", q(1)}, {"k", q(1)}}));
  const Graph g2 = G2();
  const CylinderSpace s2(g2, 3);
  EXPECT_TRUE(s2.equal(s2.alpha(s2.chi(V(g2, "v"))), s2.constant(1, q(1))));
  const Graph g3 = G3();
  const CylinderSpace s3(g3, 3);
  EXPECT_EQ(table(s3, s3.alpha(s3.chi(E(g3, "a")))), (std::map<std::string, Gaussian>{{"a,b", q(0)}, {"b,a", q(1)}}));
}

TEST(Transfer, Examples) {
  const Graph g2 = G2();
  const CylinderSpace s2(g2, 3);
  EXPECT_TRUE(s2.equal(s2.transfer(s2.chi(E(g2, "e"))), s2.scale(q(1, 2), s2.chi(V(g2, "v")))));
  const Graph g4 = G4();
  const CylinderSpace s4(g4, 3);
  EXPECT_TRUE(s4.equal(s4.transfer(s4.chi(P(g4, "h,k"))), s4.scale(q(1, 2), s4.chi(E(g4, "k")))));
  const Graph g1 = G1();
  const CylinderSpace s1(g1, 3);
  EXPECT_TRUE(s1.equal(s1.transfer(s1.chi(E(g1, "e"))), s1.chi(V(g1, "v"))));
}

TEST(Transfer, DepthZeroAveragesOverIncomingEdges) {
  // L(f)(v) = c(v)⁻¹ Σ_{s(e)=v} f(r(e)).
  const Graph g4 = G4();
  const CylinderSpace s4(g4, 2);
  const CylFun l = s4.transfer(s4.chi(V(g4, "v")));
  EXPECT_EQ(l.depth, 0U);
  EXPECT_EQ(l.values[V(g4, "v").idx()], q(1));
  EXPECT_EQ(l.values[V(g4, "w").idx()], q(1, 2));
}

TEST(Inner, Examples) {
  const Graph g2 = G2();
  const CylinderSpace s2(g2, 3);
  EXPECT_TRUE(s2.inner(s2.chi(E(g2, "e")), s2.chi(E(g2, "f"))).is_zero());
  EXPECT_TRUE(s2.equal(s2.inner(s2.chi(E(g2, "e")), s2.chi(E(g2, "e"))), s2.scale(q(1, 2), s2.chi(V(g2, "v")))));
  const Graph g1 = G1();
  const CylinderSpace s1(g1, 3);
  const CylFun ce = s1.chi(E(g1, "e"));
  EXPECT_TRUE(s1.equal(s1.inner(ce, s1.scale(Gaussian::i(), ce)), s1.scale(Gaussian::i(), s1.chi(V(g1, "v")))));
  EXPECT_TRUE(s1.equal(s1.inner(s1.scale(Gaussian::i(), ce), ce), s1.scale(-Gaussian::i(), s1.chi(V(g1, "v")))));
}

TEST(RightAct, Examples) {
  const Graph g4 = G4();
  const CylinderSpace s4(g4, 3);
  const CylFun cw = s4.chi(V(g4, "w"));
  EXPECT_TRUE(s4.equal(s4.right_act(s4.chi(E(g4, "h")), cw), s4.chi(E(g4, "h"))));
  EXPECT_TRUE(s4.right_act(s4.chi(E(g4, "e")), cw).is_zero());
  std::mt19937_64 rng(1);
  for (std::size_t d = 0; d <= 2; ++d) {
    const CylFun f = random_cylfun(s4, d, rng);
    EXPECT_TRUE(s4.equal(s4.right_act(f, s4.constant(0, q(1))), f));
  }
}

TEST(ApplyOp, Examples) {
  const Graph g2 = G2();
  const CylinderSpace s2(g2, 3);
  const CylFun ce = s2.chi(E(g2, "e")), cf = s2.chi(E(g2, "f"));
  const auto t = CylOperator::theta(ce, ce);
  EXPECT_TRUE(s2.equal(s2.apply(t, ce, 1), s2.scale(q(1, 2), ce)));
  EXPECT_TRUE(s2.apply(t, cf, 1).is_zero());
  EXPECT_THROW(s2.apply(t, ce, 0), DepthError);
  for (const auto& [name, g] : fixtures()) {
    const CylinderSpace s(g, 3);
    for (auto v : g.vertices())
      for (std::size_t d = 0; d <= 2; ++d)
        for (const auto& mu : s.paths(d)) {
          const CylFun out = s.apply(CylOperator::mult(s.chi(v)), s.chi(mu), d);
          EXPECT_TRUE(s.equal(out, mu.base == v ? s.chi(mu) : s.zero(d))) << name;
        }
  }
}

TEST(OpMatrix, Examples) {
  const Graph g1 = G1();
  const CylinderSpace s1(g1, 2);
  const auto id = s1.op_matrix(CylOperator::mult(s1.chi(V(g1, "v"))), 1);
  EXPECT_EQ(id, (GaussMatrix{1, {q(1)}}));
  const Graph g2 = G2();
  const CylinderSpace s2(g2, 2);
  const CylFun ce = s2.chi(E(g2, "e"));
  const GaussMatrix diag{2, {q(1), q(0), q(0), q(0)}};
  EXPECT_EQ(s2.op_matrix(q(2) * CylOperator::theta(ce, ce), 1), diag);
  EXPECT_EQ(s2.op_matrix(CylOperator::mult(ce), 1), diag);
}

TEST(Transfer, MatchesPointwiseAverageOverPreimages) {
  std::mt19937_64 rng(21);
  for (const auto& g : small_graphs(60)) {
    const CylinderSpace s(g, 5);
    for (std::size_t d = 0; d <= 3; ++d) {
      const CylFun f = random_cylfun(s, d, rng);
      const CylFun lf = s.transfer(f);
      const CylFun af = s.alpha(f);
      for (const auto& nu : s.paths(4)) {
        Gaussian sum;
        for (auto e : g.edges())
          if (g.source(e) == nu.base) sum += value_at(s, f, prepend(g, e, nu));
        ASSERT_EQ(value_at(s, lf, nu), sum / q(static_cast<std::int64_t>(g.c(nu.base))));
        ASSERT_EQ(value_at(s, af, nu), value_at(s, f, drop_first(g, nu)));
      }
    }
  }
}

TEST(Refine, CommutesWithTheOperations) {
  std::mt19937_64 rng(23);
  for (const auto& g : small_graphs(40)) {
    const CylinderSpace s(g, 5);
    for (std::size_t d = 0; d <= 3; ++d) {
      const CylFun f = random_cylfun(s, d, rng);
      const CylFun h = random_cylfun(s, std::min<std::size_t>(d + 1, 3), rng);
      const CylFun fine = s.refine(f, 4);
      EXPECT_TRUE(s.equal(s.alpha(f), s.alpha(fine)));
      EXPECT_TRUE(s.equal(s.transfer(f), s.transfer(fine)));
      EXPECT_TRUE(s.equal(s.inner(f, h), s.inner(fine, s.refine(h, 4))));
      const auto op = CylOperator::theta(f, h) + CylOperator::mult(h);
      const std::size_t at = std::max(op.min_depth(), d);
      EXPECT_TRUE(s.equal(s.apply(op, f, at), s.apply(op, fine, 4)));
    }
  }
}

TEST(HilbertModule, AxiomsOnBasisTriples) {
  for (const auto& [name, g] : fixtures()) {
    const CylinderSpace s(g, 4);
    std::vector<CylFun> basis;
    for (std::size_t d = 0; d <= 3; ++d)
      for (const auto& p : s.paths(d)) basis.push_back(s.scale(Gaussian(Rational(1), Rational(2)), s.chi(p)));
    for (const auto& f : basis)
      for (const auto& h : basis) {
        const CylFun fh = s.inner(f, h);
        EXPECT_TRUE(s.equal(s.conj(fh), s.inner(h, f))) << name;
        for (const auto& a : basis)
          if (a.depth <= 2) {
            EXPECT_TRUE(s.equal(s.inner(f, s.right_act(h, a)), s.mul(fh, a))) << name;
          }
      }
  }
}

TEST(HilbertModule, AxiomsOnRandomFunctions) {
  std::mt19937_64 rng(29);
  for (const auto& g : small_graphs(60)) {
    const CylinderSpace s(g, 4);
    for (int i = 0; i < 5; ++i) {
      const CylFun f = random_cylfun(s, rng() % 4, rng);
      const CylFun h = random_cylfun(s, rng() % 4, rng);
      const CylFun a = random_cylfun(s, rng() % 3, rng);
      const Gaussian z(Rational(static_cast<std::int64_t>(rng() % 7) - 3, 2), Rational(1, 3));
      EXPECT_TRUE(s.equal(s.inner(f, s.right_act(h, a)), s.mul(s.inner(f, h), a)));
      EXPECT_TRUE(s.equal(s.conj(s.inner(f, h)), s.inner(h, f)));
      EXPECT_TRUE(s.equal(s.inner(f, s.scale(z, h)), s.scale(z, s.inner(f, h))));
      EXPECT_TRUE(s.equal(s.inner(s.scale(z, f), h), s.scale(z.conj(), s.inner(f, h))));
    }
  }
}

TEST(Positivity, InnerSquareIsNonNegativeAndFaithful) {
  std::mt19937_64 rng(31);
  for (const auto& g : small_graphs(100)) {
    const CylinderSpace s(g, 4);
    for (int i = 0; i < 10; ++i) {
      const CylFun f = random_cylfun(s, rng() % 4, rng);
      const CylFun ff = s.inner(f, f);
      for (const auto& z : ff.values) {
        EXPECT_TRUE(z.im.is_zero());
        EXPECT_GE(z.re.sign(), 0);
      }
      EXPECT_EQ(ff.is_zero(), f.is_zero());
    }
  }
}
