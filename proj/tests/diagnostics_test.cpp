#include "eloop/diagnostics.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "oracles.hpp"
#include "test_support.hpp"

namespace {

using eloop::ErrorKind;
using eloop::Law;
using eloop::Loop;
using eloop::RingConfig;
using eloop::ZpeElem;

const RingConfig Z25 = RingConfig::integer_quotient(5, 2);
const RingConfig Z125 = RingConfig::integer_quotient(5, 3);

TEST(LawNamesTest, RoundTrip) {
  for (Law law : eloop::all_laws()) EXPECT_EQ(eloop::law_from_string(eloop::to_string(law)), law);
  EXPECT_EQ(eloop::all_laws().size(), 7u);
  EXPECT_ERROR_KIND(eloop::law_from_string("commutative-ish"), ErrorKind::PreconditionUnmet);
}

TEST(LawSuiteTest, LatinSquareHoldsExhaustively) {
  const auto L = Loop<ZpeElem>::create(Z25, 2, 1);
  const auto rep = eloop::law_suite(L, Law::LatinSquare, 1'000'000, 1);
  EXPECT_TRUE(rep.verdict);
  EXPECT_TRUE(rep.exhaustive);
  EXPECT_TRUE(rep.counterexample.empty());
}

TEST(LawSuiteTest, AlternativeAndJordanFailWithReplayableCounterexamples) {
  const auto L = Loop<ZpeElem>::create(Z25, 2, 1);
  for (Law law : {Law::Alternative, Law::Jordan}) {
    const auto rep = eloop::law_suite(L, law, 1'000'000, 1);
    EXPECT_FALSE(rep.verdict) << rep.law;
    ASSERT_EQ(rep.counterexample.size(), 2u);
    EXPECT_TRUE(eloop::replay_counterexample(L, rep));
    const auto &P = rep.counterexample[0], &Q = rep.counterexample[1];
    const auto PP = L.add(P, P);
    if (law == Law::Alternative)
      EXPECT_NE(L.add(P, L.add(P, Q)), L.add(PP, Q));
    else
      EXPECT_NE(L.add(PP, L.add(P, Q)), L.add(P, L.add(Q, PP)));
  }
  // In a group loop both hold.
  const auto G = Loop<ZpeElem>::create(Z25, 4, 2);
  EXPECT_TRUE(eloop::law_suite(G, Law::Alternative, 1'000'000, 1).verdict);
  EXPECT_TRUE(eloop::law_suite(G, Law::Jordan, 1'000'000, 1).verdict);
}

TEST(LawSuiteTest, PowerAssociativeOnSampledPoints) {
  const auto L = Loop<ZpeElem>::create(Z125, 2, 1);
  const auto rep = eloop::law_suite(L, Law::PowerAssociative, 4, 3);
  EXPECT_TRUE(rep.verdict);
  EXPECT_GE(rep.checked, 4u);
}

TEST(LawSuiteTest, AssociativityFailsAndReplays) {
  const auto L = Loop<ZpeElem>::create(Z25, 2, 1);
  const auto rep = eloop::law_suite(L, Law::FullAssociative, 1'000'000, 1);
  EXPECT_FALSE(rep.verdict);
  ASSERT_EQ(rep.counterexample.size(), 3u);
  EXPECT_TRUE(eloop::replay_counterexample(L, rep));
  const auto& c = rep.counterexample;
  EXPECT_NE(L.add(L.add(c[0], c[1]), c[2]), L.add(c[0], L.add(c[1], c[2])));
}

TEST(LawSuiteTest, GroupLoopIsAssociativeExhaustively) {
  const auto L = Loop<ZpeElem>::create(Z25, 4, 2);
  const auto rep = eloop::law_suite(L, Law::FullAssociative, 1'000'000, 1);
  EXPECT_TRUE(rep.verdict);
  EXPECT_TRUE(rep.exhaustive);
  EXPECT_EQ(rep.checked, 75u * 75u * 75u);
}

TEST(LawSuiteTest, SameSeedSameReport) {
  const auto L = Loop<ZpeElem>::create(Z125, 2, 1);
  const auto a = eloop::law_suite(L, Law::Moufang, 3000, 42);
  const auto b = eloop::law_suite(L, Law::Moufang, 3000, 42);
  EXPECT_FALSE(a.exhaustive);
  EXPECT_EQ(a, b);
}

TEST(IdentityTest, UnknownNameAndArity) {
  const auto L = Loop<ZpeElem>::create(Z25, 2, 1);
  EXPECT_ERROR_KIND(eloop::identity_holds(L, "no-such-law", {L.identity()}, {}), ErrorKind::PreconditionUnmet);
  EXPECT_TRUE(eloop::identity_holds(L, "full-associative", {L.identity(), L.identity(), L.identity()}, {}));
}

TEST(WitnessTest, PreconditionsAndVerdicts) {
  const auto L2 = Loop<ZpeElem>::create(Z25, 2, 1);
  EXPECT_ERROR_KIND(eloop::witness_A(L2), ErrorKind::PreconditionUnmet);
  EXPECT_ERROR_KIND(eloop::witness_inf(L2), ErrorKind::PreconditionUnmet);
  EXPECT_FALSE(eloop::witness_B(L2).associates);

  const auto L42 = Loop<ZpeElem>::create(Z25, 4, 2);
  EXPECT_ERROR_KIND(eloop::witness_B(L42), ErrorKind::PreconditionUnmet);
  EXPECT_FALSE(eloop::first_point_without_three_torsion(L42).has_value());

  const auto L3 = Loop<ZpeElem>::create(Z125, 2, 1);
  const auto w = eloop::witness_A(L3);
  EXPECT_FALSE(w.associates);
  EXPECT_EQ(w.left, L3.add(L3.add(w.triple[0], w.triple[1]), w.triple[2]));
  EXPECT_EQ(w.right, L3.add(w.triple[0], L3.add(w.triple[1], w.triple[2])));

  const auto L6 = Loop<ZpeElem>::create(RingConfig::integer_quotient(5, 6), 2, 1);
  EXPECT_FALSE(eloop::witness_inf(L6).associates);
}

TEST(LowNilpotencyTest, AllIdentitiesHoldAtE2) {
  const auto L = Loop<ZpeElem>::create(Z25, 2, 1);
  EXPECT_EQ(eloop::low_nilpotency_identities().size(), 5u);
  for (const auto& name : eloop::low_nilpotency_identities()) {
    if (name == "heavy") continue;  // exhaustive run lives in the acceptance binary
    const auto rep = eloop::low_nilpotency_report(L, name, 200'000, 7);
    EXPECT_TRUE(rep.verdict) << name;
    EXPECT_GT(rep.checked, 0u) << name;
  }
  const auto heavy = eloop::low_nilpotency_report(L, "heavy", 20'000, 7);
  EXPECT_TRUE(heavy.verdict);
}

TEST(LowNilpotencyTest, RejectsHigherNilpotency) {
  const auto L = Loop<ZpeElem>::create(Z125, 2, 1);
  EXPECT_ERROR_KIND(eloop::low_nilpotency_report(L, "ass-with-inf", 100, 1), ErrorKind::NilpotencyTooHigh);
  EXPECT_ERROR_KIND(eloop::low_nilpotency_suite(L, 100, 1), ErrorKind::NilpotencyTooHigh);
}

TEST(LowNilpotencyTest, AssWithInfFailsAtHigherNilpotency) {
  // The same identity, checked directly, is not a law once m^2 != 0.
  const auto L = Loop<ZpeElem>::create(Z125, 2, 1);
  const auto w = eloop::witness_A(L);
  EXPECT_FALSE(eloop::identity_holds(L, "full-associative", {w.triple[0], w.triple[1], w.triple[2]}, {}));
}

TEST(TechTest, CongruencesHoldOnSamples) {
  for (std::uint32_t e : {4u, 6u}) {
    const auto L = Loop<ZpeElem>::create(RingConfig::integer_quotient(5, e), 2, 1);
    for (const char* part : {"tech-i", "tech-ii", "tech-iv"}) {
      const auto rep = eloop::tech_congruence_report(L, part, 300, 9);
      EXPECT_TRUE(rep.verdict) << part << " e=" << e;
      EXPECT_EQ(rep.checked, 300u);
    }
  }
}

TEST(CardinalityTest, MatchesFormula) {
  struct Case {
    std::uint64_t p;
    std::uint32_t e;
    std::int64_t a, b;
  };
  for (const Case c : {Case{5, 2, 2, 1}, Case{5, 2, 4, 2}, Case{7, 2, 0, 2}, Case{5, 3, 2, 1}, Case{5, 1, 2, 1}}) {
    const auto L = Loop<ZpeElem>::create(RingConfig::integer_quotient(c.p, c.e), c.a, c.b);
    const std::uint64_t q = oracle::curve_order_brute(c.p, c.a, c.b);
    const std::uint64_t inf = eloop::ipow(c.p, 2 * (c.e - 1));
    const auto rep = eloop::cardinality_report(L);
    EXPECT_EQ(rep.infinity, inf);
    EXPECT_EQ(rep.affine, (q - 1) * inf);
    EXPECT_TRUE(rep.matches());
  }
  const auto L = Loop<ZpeElem>::create(Z25, 2, 1);
  EXPECT_EQ(eloop::cardinality_report(L).affine, 150u);
  const auto M = Loop<ZpeElem>::create(RingConfig::integer_quotient(7, 2), 0, 2);
  EXPECT_EQ(eloop::cardinality_report(M).infinity, 49u);
  EXPECT_EQ(eloop::cardinality_report(M).affine, 392u);
}

TEST(ClassificationTest, CertificatesAgreeWithAssociativity) {
  const auto G = Loop<ZpeElem>::create(Z25, 4, 2);
  const auto cert = eloop::certify_loop_group(G);
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(cert->factors, (std::vector<std::uint64_t>{5, 15}));
  EXPECT_FALSE(eloop::certify_loop_group(Loop<ZpeElem>::create(Z25, 2, 1)).has_value());
}

TEST(ClassificationTest, SmallSearchSpace) {
  eloop::ClassificationOptions opts;
  opts.max_p = 5;
  opts.max_ring_size = 25;
  const auto res = eloop::classify_group_loops(opts);
  ASSERT_EQ(res.groups.size(), 2u);
  EXPECT_TRUE(res.undecided.empty());
  for (const auto& g : res.groups) {
    EXPECT_EQ(g.p, 5u);
    EXPECT_EQ(g.e, 2u);
    EXPECT_EQ(g.a, 4);
    EXPECT_EQ(g.invariant_factors, (std::vector<std::uint64_t>{5, 15}));
  }
  const auto csv = eloop::classification_csv(res);
  EXPECT_EQ(csv.rfind("p,e,A,B,size,invariant_factors,method\n", 0), 0u);
  EXPECT_NE(csv.find("5,2,4,2,75,5x15,"), std::string::npos);
  EXPECT_NE(csv.find("5,2,4,3,75,5x15,"), std::string::npos);
}

}  // namespace
