#include <gtest/gtest.h>

#include "exelgraph/identities.hpp"
#include "support.hpp"

using namespace exelgraph;
using namespace testing_support;

TEST(Identities, AllNinePassOnFixtures) {
  for (const auto& [name, g] : fixtures()) {
    for (std::size_t d = 0; d <= 3; ++d) {
      const auto rep = verify_identities(g, d);
      ASSERT_EQ(rep.checks.size(), 9U);
      for (const auto& c : rep.checks) EXPECT_TRUE(c.passed) << name << " depth " << d << " " << c.name << ": " << c.counterexample;
    }
  }
}

TEST(Identities, CheckNamesAndInstanceCounts) {
  const auto rep = verify_identities(G4(), 1);
  const std::vector<std::string> names = {"transfer_law",         "left_inverse",       "cylinder_average",
                                          "rank_one_multiplication", "resolution_of_identity", "cuntz_krieger_sum",
                                          "isometry_relations",   "adjoint_law",        "faithfulness"};
  ASSERT_EQ(rep.checks.size(), names.size());
  for (std::size_t i = 0; i < names.size(); ++i) EXPECT_EQ(rep.checks[i].name, names[i]);
  // Basis up to depth 1 in G4: 2 vertices + 3 edges.
  EXPECT_EQ(rep.find("left_inverse")->instances, 5U);
  EXPECT_EQ(rep.find("cylinder_average")->instances, 3U);
  EXPECT_EQ(rep.find("cuntz_krieger_sum")->instances, 2U);
  EXPECT_EQ(rep.find("isometry_relations")->instances, 9U);
  EXPECT_EQ(rep.find("nonexistent"), nullptr);
}

TEST(Identities, PassOnRandomGraphs) {
  for (const auto& g : small_graphs(40)) {
    const auto rep = verify_identities(g, 2);
    EXPECT_TRUE(rep.passed()) << to_dsl(g);
  }
}

TEST(Identities, NeedsSpaceOneDeeper) {
  const CylinderSpace s(G2(), 2);
  EXPECT_THROW(verify_identities(s, 2), DepthError);
  EXPECT_NO_THROW(verify_identities(s, 1));
}

TEST(Identities, RecorderReportsFirstCounterexample) {
  // Dropping the weight c(s(h)) = 2 breaks φ(χ(h)) = c(s(h)) Θ(χ(h), χ(h)).
  const Graph g4 = G4();
  const CylinderSpace s(g4, 2);
  const CylFun ch = s.chi(E(g4, "h"));
  detail::CheckRecorder rec(s, "broken", "phi(chi(h)) = Theta(chi(h), chi(h))");
  rec.expect_same_operator(CylOperator::mult(ch), CylOperator::theta(ch, ch), 1, [] { return "mu = h"; });
  const auto c = rec.take();
  EXPECT_FALSE(c.passed);
  EXPECT_EQ(c.counterexample, "mu = h on the indicator of h");
  EXPECT_EQ(c.lhs, "depth 1 {h: 1/1}");
  EXPECT_EQ(c.rhs, "depth 1 {h: 1/2}");
}

TEST(Identities, RecorderCatchesCorruptedTransfer) {
  // A transfer operator that forgets the 1/c normalization fails L∘α = id.
  const Graph g2 = G2();
  const CylinderSpace s(g2, 2);
  detail::CheckRecorder rec(s, "left_inverse", "L(alpha(f)) = f");
  for (std::size_t d = 0; d <= 1; ++d)
    for (const auto& p : s.paths(d)) {
      const CylFun f = s.chi(p);
      const CylFun unnormalized = s.scale(Gaussian(2), s.transfer(s.alpha(f)));
      rec.expect_equal(unnormalized, f, [&] { return path_string(g2, p); });
    }
  const auto c = rec.take();
  EXPECT_FALSE(c.passed);
  EXPECT_EQ(c.counterexample, "v");
}
