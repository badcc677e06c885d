#include "eloop/abelian.hpp"

#include <gtest/gtest.h>

#include <cstdint>
#include <vector>

namespace {

/// Element (a, b) of Z/m x Z/n, with the key the certificate needs.
struct Pair {
  std::uint64_t a = 0, b = 0;
  std::uint64_t key() const { return a * 1000 + b; }
  friend bool operator==(const Pair&, const Pair&) = default;
};

struct Product {
  std::uint64_t m, n;
  std::vector<Pair> elements() const {
    std::vector<Pair> out;
    for (std::uint64_t a = 0; a < m; ++a)
      for (std::uint64_t b = 0; b < n; ++b) out.push_back({a, b});
    return out;
  }
  Pair add(const Pair& x, const Pair& y) const { return {(x.a + y.a) % m, (x.b + y.b) % n}; }
  std::uint64_t order(const Pair& x) const {
    std::uint64_t k = 1;
    for (Pair y = x; !(y == Pair{}); y = add(y, x)) ++k;
    return k;
  }
};

TEST(AbelianTest, Factorize) {
  using F = std::vector<std::pair<std::uint64_t, std::uint32_t>>;
  EXPECT_EQ(eloop::factorize(1521), (F{{3, 2}, {13, 2}}));
  EXPECT_EQ(eloop::factorize(97), (F{{97, 1}}));
  EXPECT_EQ(eloop::factorize(1), F{});
}

TEST(AbelianTest, InvariantFactorsFromOrders) {
  for (auto [m, n, expected] : {std::tuple{5u, 15u, std::vector<std::uint64_t>{5, 15}},
                                std::tuple{3u, 5u, std::vector<std::uint64_t>{15}},
                                std::tuple{21u, 21u, std::vector<std::uint64_t>{21, 21}},
                                std::tuple{6u, 4u, std::vector<std::uint64_t>{2, 12}}}) {
    const Product G{m, n};
    std::vector<std::uint64_t> orders;
    for (const auto& x : G.elements()) orders.push_back(G.order(x));
    EXPECT_EQ(eloop::invariant_factors_from_orders(orders), expected);
  }
}

TEST(AbelianTest, RejectsImpossibleOrderStatistics) {
  // Nine elements, all of order 9 except the identity: no abelian group.
  std::vector<std::uint64_t> orders(9, 9);
  orders[0] = 1;
  EXPECT_FALSE(eloop::invariant_factors_from_orders(orders).has_value());
}

TEST(AbelianTest, NormalizeInvariantFactors) {
  EXPECT_EQ(eloop::normalize_invariant_factors({25, 7}), (std::vector<std::uint64_t>{175}));
  EXPECT_EQ(eloop::normalize_invariant_factors({3, 3, 5}), (std::vector<std::uint64_t>{3, 15}));
}

TEST(AbelianTest, CertificateForProductGroup) {
  const Product G{5, 15};
  const auto elems = G.elements();
  std::vector<std::uint64_t> orders;
  for (const auto& x : elems) orders.push_back(G.order(x));
  auto add = [&](const Pair& x, const Pair& y) { return G.add(x, y); };
  const auto cert = eloop::certify_abelian_group(elems, orders, {5, 15}, Pair{}, add);
  ASSERT_TRUE(cert.has_value());
  EXPECT_EQ(G.order(cert->generators[0]), 5u);
  EXPECT_EQ(G.order(cert->generators[1]), 15u);
  EXPECT_FALSE(eloop::certify_abelian_group(elems, orders, {75}, Pair{}, add).has_value());
}

TEST(AbelianTest, CertificateRejectsNonAssociativeMagma) {
  // Z/9 with 4 + 7 redefined as 3; element orders are unchanged.
  const Product G{1, 9};
  auto elems = G.elements();
  std::vector<std::uint64_t> orders;
  for (const auto& x : elems) orders.push_back(G.order(x));
  auto broken = [&](const Pair& x, const Pair& y) {
    if (x.b == 4 && y.b == 7) return Pair{0, 3};
    if (x.b == 7 && y.b == 4) return Pair{0, 3};
    return G.add(x, y);
  };
  EXPECT_FALSE(eloop::certify_abelian_group(elems, orders, {9}, Pair{}, broken).has_value());
}

}  // namespace
