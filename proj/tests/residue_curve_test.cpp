#include "eloop/residue_curve.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"

namespace {

using eloop::ResidueCurve;
using eloop::ResiduePoint;

TEST(ResidueCurveTest, OrdersMatchBruteForce) {
  for (std::uint32_t p : {5u, 7u, 11u, 13u})
    for (std::uint32_t a = 0; a < p; ++a)
      for (std::uint32_t b = 0; b < p; ++b) {
        const ResidueCurve E(p, a, b);
        ASSERT_EQ(E.order(), oracle::curve_order_brute(p, a, b)) << p << ' ' << a << ' ' << b;
      }
}

TEST(ResidueCurveTest, KnownCurves) {
  EXPECT_EQ(ResidueCurve(5, 4, 2).order(), 3u);
  EXPECT_EQ(ResidueCurve(5, 2, 1).order(), 7u);
  EXPECT_EQ(ResidueCurve(7, 0, 2).order(), 9u);
  EXPECT_TRUE(ResidueCurve(5, 0, 0).is_singular());
  EXPECT_FALSE(ResidueCurve(5, 2, 1).is_singular());
}

TEST(ResidueCurveTest, GroupLaw) {
  const ResidueCurve E(7, 3, 4);
  const auto& pts = E.points();
  for (const auto& P : pts) {
    EXPECT_TRUE(E.contains(P));
    EXPECT_EQ(E.add(P, E.neg(P)), ResiduePoint::identity());
    EXPECT_EQ(E.mul(static_cast<std::int64_t>(E.order()), P), ResiduePoint::identity());
    for (const auto& Q : pts) {
      ASSERT_EQ(E.add(P, Q), E.add(Q, P));
      for (const auto& R : pts) ASSERT_EQ(E.add(E.add(P, Q), R), E.add(P, E.add(Q, R)));
    }
  }
}

TEST(ResidueCurveTest, InvariantFactors) {
  EXPECT_EQ(ResidueCurve(5, 2, 1).invariant_factors(), (std::vector<std::uint64_t>{7}));
  EXPECT_EQ(ResidueCurve(7, 0, 2).invariant_factors(), (std::vector<std::uint64_t>{3, 3}));
  EXPECT_TRUE(ResidueCurve(7, 0, 2).is_three_torsion());
  EXPECT_TRUE(ResidueCurve(5, 4, 2).is_three_torsion());
  EXPECT_FALSE(ResidueCurve(5, 2, 1).is_three_torsion());
}

}  // namespace
