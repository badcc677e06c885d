#include "eloop/abelian.hpp"

#include <algorithm>
#include <map>

namespace eloop {

std::vector<std::pair<std::uint64_t, std::uint32_t>> factorize(std::uint64_t n) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    std::uint32_t k = 0;
    while (n % d == 0) {
      n /= d;
      ++k;
    }
    if (k > 0) out.emplace_back(d, k);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return a / gcd_u64(a, b) * b; }

namespace {

std::uint32_t valuation_at(std::uint64_t n, std::uint64_t ell) {
  std::uint32_t k = 0;
  while (n % ell == 0) {
    n /= ell;
    ++k;
  }
  return k;
}

// Partitions (descending exponents) per prime -> invariant factors ascending.
std::vector<std::uint64_t> assemble(const std::map<std::uint64_t, std::vector<std::uint32_t>>& parts) {
  std::size_t rank = 0;
  for (const auto& [ell, lambda] : parts) rank = std::max(rank, lambda.size());
  std::vector<std::uint64_t> factors(rank, 1);
  // factors[rank-1] gets the largest part of every prime.
  for (const auto& [ell, lambda] : parts)
    for (std::size_t i = 0; i < lambda.size(); ++i)
      for (std::uint32_t k = 0; k < lambda[i]; ++k) factors[rank - 1 - i] *= ell;
  return factors;
}

}  // namespace

std::optional<std::vector<std::uint64_t>> invariant_factors_from_orders(const std::vector<std::uint64_t>& orders) {
  const std::uint64_t n = orders.size();
  if (n == 0) return std::nullopt;
  std::map<std::uint64_t, std::vector<std::uint32_t>> parts;
  for (const auto& [ell, a] : factorize(n)) {
    const std::uint64_t cofactor = n / [&] {
      std::uint64_t q = 1;
      for (std::uint32_t i = 0; i < a; ++i) q *= ell;
      return q;
    }();
    // r[j] = log_ell |G_ell[ell^j]|.
    std::vector<std::uint32_t> r(a + 1, 0);
    for (std::uint32_t j = 0; j <= a; ++j) {
      std::uint64_t count = 0;
      for (auto o : orders)
        if (valuation_at(o, ell) <= j) ++count;
      if (count % cofactor != 0) return std::nullopt;
      std::uint64_t c = count / cofactor;
      std::uint32_t log = 0;
      while (c % ell == 0) {
        c /= ell;
        ++log;
      }
      if (c != 1) return std::nullopt;
      r[j] = log;
    }
    if (r[0] != 0 || r[a] != a) return std::nullopt;
    // conj[j] = number of cyclic ell-parts of exponent >= j.
    std::vector<std::uint32_t> conj(a + 1, 0);
    for (std::uint32_t j = 1; j <= a; ++j) {
      if (r[j] < r[j - 1]) return std::nullopt;
      conj[j] = r[j] - r[j - 1];
      if (j > 1 && conj[j] > conj[j - 1]) return std::nullopt;
    }
    std::vector<std::uint32_t> lambda;
    for (std::uint32_t i = 1; i <= conj[1]; ++i) {
      std::uint32_t len = 0;
      for (std::uint32_t j = 1; j <= a; ++j)
        if (conj[j] >= i) ++len;
      lambda.push_back(len);
    }
    parts[ell] = lambda;
  }
  return assemble(parts);
}

std::vector<std::uint64_t> normalize_invariant_factors(const std::vector<std::uint64_t>& cyclic_orders) {
  std::map<std::uint64_t, std::vector<std::uint32_t>> parts;
  for (auto c : cyclic_orders)
    for (const auto& [ell, k] : factorize(c)) parts[ell].push_back(k);
  for (auto& [ell, lambda] : parts) std::sort(lambda.rbegin(), lambda.rend());
  return assemble(parts);
}

}  // namespace eloop
