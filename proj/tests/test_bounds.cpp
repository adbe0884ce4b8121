#include <gtest/gtest.h>

#include "gencon/bounds.hpp"
#include "oracles.hpp"

using namespace gencon;

TEST(Theorem14, Examples) {
  const Theorem14Bound k3k3 = lower_bound_theorem14(generate::complete(3), generate::complete(3));
  EXPECT_EQ(k3k3.value, 3);
  EXPECT_EQ(k3k3.via_g, 3);
  EXPECT_EQ(k3k3.via_h, 3);
  EXPECT_EQ(k3k3.via_kappa, 3);
  const Theorem14Bound k2k2 = lower_bound_theorem14(generate::complete(2), generate::complete(2));
  EXPECT_EQ(k2k2.value, 1);
  EXPECT_EQ(k2k2.via_g, 2);
  EXPECT_EQ(k2k2.via_kappa, 1);
  EXPECT_EQ(lower_bound_theorem14(generate::cycle(3), generate::cycle(3)).value, 3);
}

TEST(Theorem14, MixedFactors) {
  // kappa3(K4) + delta(C5) = 4, kappa3(C5) + delta(K4) = 4, 3 + 2 - 1 = 4.
  const Theorem14Bound b = lower_bound_theorem14(generate::complete(4), generate::cycle(5));
  EXPECT_EQ(b.via_g, 4);
  EXPECT_EQ(b.via_h, 4);
  EXPECT_EQ(b.via_kappa, 4);
  // kappa3(P3) + delta(K5) = 5, kappa3(K5) + delta(P3) = 4, 1 + 4 - 1 = 4.
  const Theorem14Bound p = lower_bound_theorem14(generate::path(3), generate::complete(5));
  EXPECT_EQ(p.via_g, 5);
  EXPECT_EQ(p.via_h, 4);
  EXPECT_EQ(p.value, 4);
}

TEST(FactorInvariants, SourcesAreRecorded) {
  const FactorInvariants k2 = factor_invariants(generate::complete(2));
  EXPECT_TRUE(k2.kappa3_is_convention);
  EXPECT_EQ(k2.kappa3, 1);
  const FactorInvariants k33 = factor_invariants(generate::complete_bipartite(3, 3));
  EXPECT_TRUE(k33.kappa3_from_formula);
  EXPECT_EQ(k33.kappa3, 2);
  const FactorInvariants pete = factor_invariants(oracle::petersen());
  EXPECT_FALSE(pete.kappa3_from_formula);
  EXPECT_EQ(pete.kappa, 3);
  EXPECT_EQ(pete.delta, 3);
  EXPECT_EQ(pete.kappa3, kappa_k(oracle::petersen(), 3).value);
  EXPECT_THROW(factor_invariants(Graph(3, {Edge(0, 1)})), std::invalid_argument);
  EXPECT_THROW(factor_invariants(generate::complete(1)), std::invalid_argument);
}

TEST(Theorem15, Examples) {
  EXPECT_EQ(lower_bound_theorem15(2, 2, 7), 8);
  EXPECT_EQ(lower_bound_theorem15(3, 2, 9), 11);
  EXPECT_EQ(lower_bound_theorem15(2, 2, 8), std::nullopt);
  EXPECT_EQ(lower_bound_theorem15(3, 2, 10), std::nullopt);
  EXPECT_EQ(lower_bound_theorem15(1, 1, 1), 1);
  EXPECT_THROW(lower_bound_theorem15(2, 2, 0), std::invalid_argument);
}

TEST(Corollary36, RangeAndValues) {
  EXPECT_EQ(corollary36_bound(2, 2, 5), 6);
  EXPECT_EQ(corollary36_bound(3, 2, 5), 7);
  EXPECT_EQ(corollary36_bound(2, 2, 6), std::nullopt);
  for (int kg = 1; kg <= 6; ++kg)
    for (int k3 = 1; k3 <= kg; ++k3)
      for (int l = 1; l <= 5; ++l) EXPECT_EQ(corollary36_bound(kg, k3, l), lower_bound_theorem15(kg, k3, l));
}

TEST(SameFiberBound, Branches) {
  EXPECT_EQ(same_fiber_bound(4, 2, 0), 6);
  EXPECT_EQ(same_fiber_bound(4, 1, 1), 4);
  EXPECT_EQ(same_fiber_bound(4, 1, 2), 4);
  EXPECT_EQ(same_fiber_bound(8, 1, 4), 7);
  EXPECT_EQ(same_fiber_bound(10, 0, 5), 10 - 3);
  EXPECT_THROW(same_fiber_bound(4, 1, 3), std::invalid_argument);
}

TEST(Prop42, Examples) {
  EXPECT_EQ(prop42_bound(7, 1), 7);
  EXPECT_EQ(prop42_bound(8, 1), 7);
  EXPECT_EQ(prop42_bound(2, 5), 6);
  EXPECT_THROW(prop42_bound(0, 1), std::invalid_argument);
  EXPECT_THROW(prop42_bound(3, 0), std::invalid_argument);
}

TEST(Prop42, IsTheWorstCaseOfTheSameFiberBound) {
  for (int l = 1; l <= 14; ++l)
    for (int d = 1; d <= 6; ++d) {
      int worst = 1 << 30;
      for (int t = 0; t <= l / 2; ++t) worst = std::min(worst, same_fiber_bound(l, d, t));
      // For l = 1 only t = 0 is possible and the same-fiber bound is one higher.
      if (l >= 2) EXPECT_EQ(prop42_bound(l, d), worst) << l << " " << d;
      EXPECT_LE(prop42_bound(l, d), worst) << l << " " << d;
    }
}

TEST(CeilHalf, Signs) {
  EXPECT_EQ(ceil_half(3), 2);
  EXPECT_EQ(ceil_half(4), 2);
  EXPECT_EQ(ceil_half(0), 0);
  EXPECT_EQ(ceil_half(-3), -1);
}
