#pragma once

// Finite abelian group bookkeeping: invariant factors from element orders and
// an explicit isomorphism certificate for a magma that claims to be
// Z/d_1 x ... x Z/d_k.

#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace eloop {

/// Prime factorisation as (prime, exponent) pairs, ascending.
std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n);

/// Invariant factors d_1 | d_2 | ... (all > 1) of an abelian group whose
/// element orders are given. Returns nullopt if the order statistics are not
/// those of any abelian group of that size.
std::optional<std::vector<std::uint64_t>> invariant_factors_from_orders(const std::vector<std::uint64_t>& orders);

/// Invariant factors of Z/c_1 x ... x Z/c_m.
std::vector<std::uint64_t> normalize_invariant_factors(const std::vector<std::uint64_t>& cyclic_orders);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);

/// Witness that a set with an addition is isomorphic to the product of
/// cyclic groups of the given orders: generators[i] has order factors[i] and
/// (c_i) -> c_k g_k + ... + c_1 g_1 (left fold, largest factor first) is a
/// bijective homomorphism.
template <class Point>
struct GroupCertificate {
  std::vector<std::uint64_t> factors;
  std::vector<Point> generators;
};

/// Searches generators for the claimed factors and checks the homomorphism
/// law on all |G|^2 pairs. `add` is the magma operation, `identity` its
/// neutral element, and `orders[i]` the order of `elements[i]` under repeated
/// addition. Multiples are computed by the recursion (n+1)g = ng + g.
template <class Point, class Add>
std::optional<GroupCertificate<Point>> certify_abelian_group(const std::vector<Point>& elements,
                                                             const std::vector<std::uint64_t>& orders,
                                                             std::vector<std::uint64_t> factors,
                                                             const Point& identity, Add add) {
  std::uint64_t product = 1;
  for (auto d : factors) product *= d;
  if (product != elements.size()) return std::nullopt;

  // Largest factor first.
  std::vector<std::size_t> sel(factors.size());
  for (std::size_t i = 0; i < sel.size(); ++i) sel[i] = factors.size() - 1 - i;

  std::vector<Point> chosen(factors.size(), identity);
  std::function<bool(std::size_t, const std::vector<Point>&)> extend;
  std::vector<Point> full_span;

  extend = [&](std::size_t level, const std::vector<Point>& span) -> bool {
    if (level == sel.size()) {
      full_span = span;
      return true;
    }
    const std::uint64_t d = factors[sel[level]];
    for (std::size_t i = 0; i < elements.size(); ++i) {
      if (orders[i] != d) continue;
      std::vector<Point> multiples{identity};
      for (std::uint64_t j = 1; j < d; ++j) multiples.push_back(add(multiples.back(), elements[i]));
      std::vector<Point> next;
      next.reserve(span.size() * d);
      std::unordered_set<std::uint64_t> seen;
      bool distinct = true;
      // New digit is the least significant one: index = c_new + d * c_old.
      for (const Point& s : span) {
        for (const Point& m : multiples) {
          Point v = add(s, m);
          if (!seen.insert(v.key()).second) {
            distinct = false;
            break;
          }
          next.push_back(v);
        }
        if (!distinct) break;
      }
      if (!distinct) continue;
      chosen[sel[level]] = elements[i];
      if (extend(level + 1, next)) return true;
    }
    return false;
  };

  if (!extend(0, {identity})) return std::nullopt;

  // Mixed-radix coordinates: digit for sel[level] has weight prod of the
  // factors chosen after it.
  const std::size_t k = sel.size();
  std::vector<std::uint64_t> weight(k, 1);
  for (std::size_t level = k; level-- > 0;) {
    if (level + 1 < k) weight[level] = weight[level + 1] * factors[sel[level + 1]];
  }
  auto digits = [&](std::uint64_t idx) {
    std::vector<std::uint64_t> c(k);
    for (std::size_t level = 0; level < k; ++level) c[level] = (idx / weight[level]) % factors[sel[level]];
    return c;
  };
  auto index_of = [&](const std::vector<std::uint64_t>& c) {
    std::uint64_t idx = 0;
    for (std::size_t level = 0; level < k; ++level) idx += c[level] * weight[level];
    return idx;
  };

  const std::size_t n = full_span.size();
  std::vector<std::vector<std::uint64_t>> coords(n);
  for (std::size_t i = 0; i < n; ++i) coords[i] = digits(i);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::uint64_t> c(k);
      for (std::size_t level = 0; level < k; ++level) c[level] = (coords[i][level] + coords[j][level]) % factors[sel[level]];
      if (!(add(full_span[i], full_span[j]) == full_span[index_of(c)])) return std::nullopt;
    }
  }
  return GroupCertificate<Point>{std::move(factors), std::move(chosen)};
}

}  // namespace eloop
