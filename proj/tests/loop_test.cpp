#include "eloop/loop.hpp"

#include <gtest/gtest.h>

#include <random>
#include <set>
#include <unordered_map>

#include "oracles.hpp"
#include "test_support.hpp"

namespace {

using eloop::ErrorKind;
using eloop::Loop;
using eloop::RingConfig;
using eloop::TruncPolyElem;
using eloop::ZpeElem;

const RingConfig Z25 = RingConfig::integer_quotient(5, 2);

TEST(LoopCreateTest, ValidatesParameters) {
  const auto L42 = Loop<ZpeElem>::create(Z25, 4, 2);
  EXPECT_EQ(L42.base_order(), 3u);
  EXPECT_TRUE(L42.three_divides_base_order());
  const auto L21 = Loop<ZpeElem>::create(Z25, 2, 1);
  EXPECT_EQ(L21.base_order(), 7u);
  EXPECT_FALSE(L21.three_divides_base_order());
  EXPECT_ERROR_KIND(Loop<ZpeElem>::create(Z25, 0, 0), ErrorKind::SingularCurve);
  // y^2 = x^3 + x has the 2-torsion point (0, 0).
  EXPECT_ERROR_KIND(Loop<ZpeElem>::create(Z25, 1, 0), ErrorKind::EvenOrder);
}

TEST(LoopCreateTest, DiscriminantIsMinus4A3Plus27B2) {
  const auto L = Loop<ZpeElem>::create(Z25, 2, 1);
  EXPECT_EQ(L.discriminant().value(), static_cast<std::uint64_t>(oracle::mod(-(4 * 8 + 27), 25)));
}

TEST(LoopMembershipTest, Examples) {
  const auto L = Loop<ZpeElem>::create(Z25, 4, 2);
  EXPECT_TRUE(L.contains(L.identity()));
  EXPECT_TRUE(L.contains(L.elem(3), L.elem(1), L.elem(1)));
  EXPECT_EQ(L.eval_F(L.elem(3), L.elem(1), L.elem(1)).value(), 15u);
  EXPECT_FALSE(L.contains(L.elem(0), L.elem(1), L.elem(1)));
  EXPECT_ERROR_KIND(L.point(0, 1, 1), ErrorKind::NotOnLoop);
}

TEST(LoopEvalTest, Examples) {
  const auto L42 = Loop<ZpeElem>::create(Z25, 4, 2);
  EXPECT_TRUE(L42.eval_F(L42.identity()).is_zero());
  EXPECT_TRUE(L42.eval_H(L42.identity()).is_zero());
  EXPECT_FALSE(L42.eval_H(L42.point(3, 1, 1)).is_unit());
  const auto L21 = Loop<ZpeElem>::create(Z25, 2, 1);
  // -8 (0 + 0 + 0 - 4) = 32 = 7.
  EXPECT_EQ(L21.eval_H(L21.elem(0), L21.elem(1), L21.elem(1)).value(), 7u);
}

TEST(LoopNegTest, Examples) {
  const auto L = Loop<ZpeElem>::create(Z25, 4, 2);
  EXPECT_EQ(L.neg(L.identity()), L.identity());
  const auto P = L.point(3, 1, 1);
  // (3:-1:1) = (3:24:1), canonically (-3:1:-1) = (22:1:24).
  EXPECT_TRUE(eloop::proj_equal(L.neg(P), eloop::normalize(L.elem(3), L.elem(24), L.elem(1))));
  EXPECT_EQ(L.neg(P).x().value(), 22u);
  EXPECT_EQ(L.neg(L.neg(P)), P);
}

TEST(LoopMulTest, InfinityGeneratorOrders) {
  const auto L = Loop<ZpeElem>::create(RingConfig::integer_quotient(5, 3), 2, 1);
  const auto g1 = L.point(5, 1, 0), g2 = L.point(0, 1, 5);
  EXPECT_EQ(L.mul(25, g1), L.identity());
  EXPECT_NE(L.mul(5, g1), L.identity());
  EXPECT_EQ(L.order_of(g1), 25u);
  EXPECT_EQ(L.order_of(g2), 25u);
  EXPECT_EQ(L.order_of(L.identity()), 1u);
  EXPECT_EQ(L.mul(0, g1), L.identity());
}

TEST(LoopMulTest, TripleOfThreeTorsionLiftIsAtInfinity) {
  const auto L = Loop<ZpeElem>::create(Z25, 4, 2);
  const auto P = L.point(3, 1, 1);
  const auto Q = L.mul(3, P);
  EXPECT_TRUE(L.project(Q).infinity);
  EXPECT_EQ(Q, L.add(L.add(P, P), P));
}

TEST(LoopLiftTest, Examples) {
  const auto L = Loop<ZpeElem>::create(Z25, 4, 2);
  const auto P = L.point(3, 1, 1);
  EXPECT_EQ(L.lift_affine(P, L.elem(0)).value(), 10u);
  EXPECT_EQ(L.lift_affine(P, L.elem(5)).value(), 20u);
  // The shifted Weierstrass equation holds exactly.
  for (std::int64_t alpha : {0, 5, 10, 15, 20}) {
    const auto a = L.elem(alpha);
    const auto beta = L.lift_affine(P, a);
    EXPECT_FALSE(beta.is_unit());
    const auto x = P.x() * P.z().inverse(), y = P.y() * P.z().inverse();
    EXPECT_TRUE((x * x * x + (L.a() + a) * x + L.b() + beta - y * y).is_zero());
  }
  EXPECT_ERROR_KIND(L.lift_affine(L.identity(), L.elem(0)), ErrorKind::PreconditionUnmet);
  // A point on E_{A,B}(R) itself needs no shift.
  const auto L21 = Loop<ZpeElem>::create(Z25, 2, 1);
  const auto O1 = L21.point(0, 1, 1);
  EXPECT_TRUE(L21.lift_affine(O1, L21.elem(0)).is_zero());
}

TEST(LoopAddTest, AgreesWithChordAndTangentOnTheCurve) {
  // Points of E_{2,1}(Z/125) with 2y a unit: the (0:1:0) law must reproduce
  // the affine group law wherever the slope is defined.
  const RingConfig cfg = RingConfig::integer_quotient(5, 3);
  const auto L = Loop<ZpeElem>::create(cfg, 2, 1);
  std::vector<std::pair<std::int64_t, std::int64_t>> affine;
  for (std::int64_t x = 0; x < 125; ++x)
    for (std::int64_t y = 0; y < 125; ++y)
      if (oracle::mod(y * y - x * x * x - 2 * x - 1, 125) == 0) affine.emplace_back(x, y);
  ASSERT_FALSE(affine.empty());
  int compared = 0;
  for (const auto& [x1, y1] : affine)
    for (const auto& [x2, y2] : affine) {
      const auto s = oracle::affine_sum(125, 2, x1, y1, x2, y2);
      if (!s) continue;
      const auto P = L.point(x1, y1, 1), Q = L.point(x2, y2, 1);
      ASSERT_EQ(L.add(P, Q), L.point(s->first, s->second, 1)) << x1 << ',' << y1 << " + " << x2 << ',' << y2;
      ++compared;
    }
  EXPECT_GT(compared, 100);
}

TEST(LoopAddTest, DoublingExample) {
  const auto L = Loop<ZpeElem>::create(Z25, 2, 1);
  const auto s = oracle::affine_sum(25, 2, 0, 1, 0, 1);
  ASSERT_TRUE(s.has_value());
  const auto P = L.point(0, 1, 1);
  EXPECT_EQ(L.add(P, P), L.point(s->first, s->second, 1));
}

// -----------------------------------------------------------------------------
// Properties over both rings.

template <class R>
struct Instance;
template <>
struct Instance<ZpeElem> {
  static RingConfig cfg() { return Z25; }
};
template <>
struct Instance<TruncPolyElem> {
  static RingConfig cfg() { return RingConfig::truncated_polynomial(5, 2); }
};

template <class R>
class LoopLaws : public ::testing::Test {
 protected:
  Loop<R> L = Loop<R>::create(Instance<R>::cfg(), 2, 1);
  Loop<R> L3 = Loop<R>::create(Instance<R>::cfg(), 4, 2);
};

using RingTypes = ::testing::Types<ZpeElem, TruncPolyElem>;
TYPED_TEST_SUITE(LoopLaws, RingTypes);

TYPED_TEST(LoopLaws, PointsAreDistinctMembersWithUnitY) {
  const auto pts = this->L.points();
  EXPECT_EQ(pts.size(), this->L.size());
  EXPECT_EQ(pts.size(), 175u);
  std::set<std::uint64_t> keys;
  for (const auto& P : pts) {
    EXPECT_TRUE(this->L.contains(P));
    EXPECT_EQ(P.y(), TypeParam::one(this->L.config()));
    keys.insert(P.key());
  }
  EXPECT_EQ(keys.size(), pts.size());
  // Exhaustive scan of P^2(R) finds the same set.
  std::set<std::uint64_t> scanned;
  for (const auto& P : eloop::enumerate_projective_plane<TypeParam>(this->L.config()))
    if (this->L.contains(P)) scanned.insert(P.key());
  EXPECT_EQ(scanned, keys);
}

TYPED_TEST(LoopLaws, AdditionMatchesExpandedPolynomials) {
  const auto& L = this->L;
  const auto pts = L.points();
  for (const auto& P : pts)
    for (const auto& Q : pts) {
      const auto [t1, t2, t3] = oracle::expanded_sum(L.a(), L.b(), P.x(), P.y(), P.z(), Q.x(), Q.y(), Q.z());
      const auto S = L.add(P, Q);
      ASSERT_TRUE(eloop::proj_equal(S.x(), S.y(), S.z(), t1, t2, t3));
      ASSERT_TRUE(t1.is_unit() || t2.is_unit() || t3.is_unit());
    }
}

TYPED_TEST(LoopLaws, ClosedCommutativeAndProjectsToTheCurve) {
  const auto& L = this->L;
  const auto& E = L.residue_curve();
  const auto pts = L.points();
  for (const auto& P : pts)
    for (const auto& Q : pts) {
      const auto S = L.add(P, Q);
      ASSERT_TRUE(L.contains(S));
      ASSERT_EQ(S, L.add(Q, P));
      ASSERT_EQ(L.project(S), E.add(L.project(P), L.project(Q)));
    }
}

TYPED_TEST(LoopLaws, IdentityInverseAndLatinSquare) {
  const auto& L = this->L;
  const auto O = L.identity();
  const auto pts = L.points();
  for (const auto& P : pts) {
    ASSERT_EQ(L.add(P, O), P);
    ASSERT_EQ(L.add(P, L.neg(P)), O);
    std::unordered_map<std::uint64_t, int> row;
    int inverses = 0;
    for (const auto& Q : pts) {
      const auto S = L.add(P, Q);
      row[S.key()] += 1;
      inverses += S == O ? 1 : 0;
      // Weak associativity: the unique solution of P + X = Q is -P + Q.
      ASSERT_EQ(L.add(P, L.add(L.neg(P), Q)), Q);
    }
    ASSERT_EQ(row.size(), pts.size());
    ASSERT_EQ(inverses, 1);
  }
}

TYPED_TEST(LoopLaws, DoubleAndAddMatchesRecursion) {
  const auto& L = this->L;
  for (const auto& P : L.points()) {
    auto up = L.identity(), down = L.identity();
    for (std::int64_t n = 0; n <= 60; ++n) {
      ASSERT_EQ(L.mul(n, P), up);
      ASSERT_EQ(L.mul(-n, P), down);
      up = L.add(up, P);
      down = L.add(down, L.neg(P));
    }
    EXPECT_EQ(L.mul_recursive(37, P), L.mul(37, P));
    EXPECT_EQ(L.mul_recursive(-11, P), L.mul(-11, P));
  }
}

TYPED_TEST(LoopLaws, PowerAssociativity) {
  const auto& L = this->L;
  std::mt19937_64 rng(11);
  const auto pts = L.points();
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  for (int i = 0; i < 5; ++i) {
    const auto P = pts[pick(rng)];
    std::vector<eloop::LoopPoint<TypeParam>> mult{L.identity()};
    for (int k = 1; k <= 160; ++k) mult.push_back(L.add(mult.back(), P));
    for (int n = 0; n <= 80; ++n)
      for (int m = 0; m <= 80; ++m) ASSERT_EQ(mult[n + m], L.add(mult[n], mult[m]));
  }
}

TYPED_TEST(LoopLaws, HessianDetectsThreeTorsion) {
  for (const auto* L : {&this->L, &this->L3}) {
    const auto& E = L->residue_curve();
    for (const auto& P : L->points())
      ASSERT_EQ(E.mul(3, L->project(P)).infinity, !L->eval_H(P).is_unit());
  }
}

TYPED_TEST(LoopLaws, OrderDividesLoopSizeAndKillsThePoint) {
  const auto& L = this->L;
  for (const auto& P : L.points()) {
    const auto n = L.order_of(P);
    ASSERT_EQ(L.mul(static_cast<std::int64_t>(n), P), L.identity());
    ASSERT_EQ(L.size() % n, 0u);
  }
}

}  // namespace
