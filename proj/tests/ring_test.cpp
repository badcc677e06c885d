#include "eloop/ring.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "test_support.hpp"

namespace {

using eloop::ErrorKind;
using eloop::RingConfig;
using eloop::TruncPolyElem;
using eloop::Valuation;
using eloop::ZpeElem;

const RingConfig Z25 = RingConfig::integer_quotient(5, 2);
const RingConfig F5t2 = RingConfig::truncated_polynomial(5, 2);

ZpeElem z25(std::int64_t n) { return ZpeElem::from_int(Z25, n); }

TEST(RingConfigTest, RejectsSmallOrCompositePrimes) {
  EXPECT_ERROR_KIND(RingConfig::integer_quotient(2, 2), ErrorKind::InvalidConfig);
  EXPECT_ERROR_KIND(RingConfig::integer_quotient(3, 2), ErrorKind::InvalidConfig);
  EXPECT_ERROR_KIND(RingConfig::integer_quotient(25, 1), ErrorKind::InvalidConfig);
  EXPECT_ERROR_KIND(RingConfig::integer_quotient(5, 0), ErrorKind::InvalidConfig);
  EXPECT_ERROR_KIND(RingConfig::truncated_polynomial(7, 0), ErrorKind::InvalidConfig);
}

TEST(RingConfigTest, SizesAndNilpotency) {
  EXPECT_EQ(Z25.size(), 25u);
  EXPECT_EQ(Z25.ideal_size(), 5u);
  EXPECT_EQ(Z25.nilpotency(), 2u);
  EXPECT_EQ(RingConfig::integer_quotient(7, 3).size(), 343u);
  EXPECT_EQ(F5t2.size(), 25u);
}

TEST(RingConfigTest, KindNamesRoundTrip) {
  for (auto kind : {eloop::RingKind::IntegerQuotient, eloop::RingKind::TruncatedPolynomial})
    EXPECT_EQ(eloop::ring_kind_from_string(eloop::to_string(kind)), kind);
  EXPECT_EQ(eloop::to_string(eloop::RingKind::IntegerQuotient), "integer-quotient");
  EXPECT_EQ(eloop::to_string(eloop::RingKind::TruncatedPolynomial), "truncated-polynomial");
}

TEST(ZpeElemTest, Arithmetic) {
  EXPECT_EQ((z25(13) + z25(14)).value(), 2u);
  EXPECT_TRUE((z25(5) * z25(5)).is_zero());
  EXPECT_EQ((-z25(3)).value(), 22u);
  EXPECT_EQ(z25(-1).value(), 24u);
  EXPECT_EQ((z25(3) - z25(7)).value(), 21u);
}

TEST(ZpeElemTest, Valuation) {
  EXPECT_EQ(z25(10).valuation(), Valuation(1));
  EXPECT_TRUE(z25(0).valuation().is_infinite());
  EXPECT_EQ(z25(3).valuation(), Valuation(0));
  EXPECT_LT(Valuation(1), Valuation::infinity());
  EXPECT_TRUE((Valuation(1) + Valuation::infinity()).is_infinite());
}

TEST(ZpeElemTest, Inverse) {
  EXPECT_EQ(z25(2).inverse().value(), 13u);
  EXPECT_EQ(z25(7).inverse().value(), 18u);
  EXPECT_ERROR_KIND(z25(5).inverse(), ErrorKind::NonUnit);
}

TEST(ZpeElemTest, InverseMatchesExtendedEuclid) {
  const RingConfig cfg = RingConfig::integer_quotient(7, 3);
  for (std::int64_t a = 0; a < 343; ++a) {
    const auto expected = oracle::inverse_mod(a, 343);
    const ZpeElem x = ZpeElem::from_int(cfg, a);
    ASSERT_EQ(x.is_unit(), expected.has_value()) << a;
    if (expected) EXPECT_EQ(static_cast<std::int64_t>(x.inverse().value()), *expected) << a;
  }
}

TEST(ZpeElemTest, Residue) {
  EXPECT_EQ(z25(17).residue(), 2u);
  EXPECT_EQ(z25(5).residue(), 0u);
}

TEST(ZpeElemTest, MixingRingsThrows) {
  const ZpeElem other = ZpeElem::from_int(RingConfig::integer_quotient(5, 3), 1);
  EXPECT_ERROR_KIND(z25(1) + other, ErrorKind::ConfigMismatch);
}

TEST(TruncPolyTest, Arithmetic) {
  const auto one_plus_t = TruncPolyElem::from_coefficients(F5t2, {1, 1});
  EXPECT_EQ(one_plus_t * one_plus_t, TruncPolyElem::from_coefficients(F5t2, {1, 2}));
  const auto x = TruncPolyElem::from_coefficients(F5t2, {3, 4});
  EXPECT_EQ(x.residue(), 3u);
  const auto t = TruncPolyElem::uniformizer(F5t2);
  EXPECT_TRUE((t * t).is_zero());
  EXPECT_EQ(t.valuation(), Valuation(1));
}

TEST(TruncPolyTest, IndexRoundTrip) {
  const RingConfig cfg = RingConfig::truncated_polynomial(5, 3);
  for (std::uint64_t i = 0; i < cfg.size(); ++i) EXPECT_EQ(TruncPolyElem::from_index(cfg, i).index(), i);
}

template <class R>
class RingLaws : public ::testing::Test {};

using RingTypes = ::testing::Types<ZpeElem, TruncPolyElem>;
TYPED_TEST_SUITE(RingLaws, RingTypes);

RingConfig config_for(const ZpeElem*) { return RingConfig::integer_quotient(5, 3); }
RingConfig config_for(const TruncPolyElem*) { return RingConfig::truncated_polynomial(5, 3); }

TYPED_TEST(RingLaws, ValuationIsMultiplicative) {
  using R = TypeParam;
  const RingConfig cfg = config_for(static_cast<const R*>(nullptr));
  const auto elems = eloop::all_elements<R>(cfg);
  // v(ab) = v(a) + v(b), where anything at or beyond e means ab = 0.
  for (const R& a : elems)
    for (const R& b : elems) {
      const Valuation sum = a.valuation() + b.valuation();
      const Valuation expected = sum.at_least(static_cast<int>(cfg.e)) ? Valuation::infinity() : sum;
      ASSERT_EQ((a * b).valuation(), expected) << a.index() << ' ' << b.index();
    }
}

TYPED_TEST(RingLaws, UnitsAreExactlyValuationZero) {
  using R = TypeParam;
  const RingConfig cfg = config_for(static_cast<const R*>(nullptr));
  for (const R& a : eloop::all_elements<R>(cfg)) {
    EXPECT_EQ(a.is_unit(), a.valuation() == Valuation(0));
    EXPECT_EQ(a.is_zero(), a.valuation().is_infinite());
    if (a.is_unit()) {
      EXPECT_EQ(a * a.inverse(), R::one(cfg));
    } else {
      EXPECT_ERROR_KIND(a.inverse(), ErrorKind::NonUnit);
    }
  }
}

TYPED_TEST(RingLaws, MaximalIdealIsNilpotent) {
  using R = TypeParam;
  const RingConfig cfg = config_for(static_cast<const R*>(nullptr));
  const auto m = eloop::ideal_power_elements<R>(cfg, 1);
  EXPECT_EQ(m.size(), cfg.ideal_size());
  // Products of e elements of m vanish: check the worst case mu^e and a sample.
  const R mu = R::uniformizer(cfg);
  R power = R::one(cfg);
  for (std::uint32_t i = 0; i < cfg.e; ++i) {
    // mu^i lies in m^i but not m^{i+1}: the chain is strictly decreasing.
    EXPECT_EQ(power.valuation(), Valuation(static_cast<int>(i)));
    power = power * mu;
  }
  EXPECT_TRUE(power.is_zero());
  for (const R& a : m)
    for (const R& b : m)
      for (const R& c : {m[1], m.back()}) EXPECT_TRUE((a * b * c).is_zero());
}

TYPED_TEST(RingLaws, ResidueIsARingMap) {
  using R = TypeParam;
  const RingConfig cfg = config_for(static_cast<const R*>(nullptr));
  const auto elems = eloop::all_elements<R>(cfg);
  for (const R& a : elems)
    for (const R& b : elems) {
      ASSERT_EQ((a + b).residue(), (a.residue() + b.residue()) % cfg.p);
      ASSERT_EQ((a * b).residue(), (a.residue() * b.residue()) % cfg.p);
    }
}

TYPED_TEST(RingLaws, CongruenceModPowers) {
  using R = TypeParam;
  const RingConfig cfg = config_for(static_cast<const R*>(nullptr));
  const R mu = R::uniformizer(cfg);
  const R a = R::from_int(cfg, 3);
  EXPECT_TRUE(eloop::congruent_mod_power(a + mu * mu, a, 2));
  EXPECT_FALSE(eloop::congruent_mod_power(a + mu * mu, a, 3));
  EXPECT_TRUE(eloop::congruent_mod_power(a, a, 10));
}

}  // namespace
