#include "eloop/residue_curve.hpp"

#include "eloop/abelian.hpp"

namespace eloop {

ResidueCurve::ResidueCurve(std::uint32_t p, std::uint32_t a, std::uint32_t b) : p_(p), a_(a % p), b_(b % p) {
  // Square-root table: roots[v] lists y with y^2 = v.
  std::vector<std::vector<std::uint32_t>> roots(p_);
  for (std::uint32_t y = 0; y < p_; ++y) roots[std::uint64_t{y} * y % p_].push_back(y);
  points_.push_back(ResiduePoint::identity());
  for (std::uint32_t x = 0; x < p_; ++x) {
    const std::uint64_t rhs = (std::uint64_t{x} * x % p_ * x + std::uint64_t{a_} * x + b_) % p_;
    for (std::uint32_t y : roots[rhs]) points_.push_back(ResiduePoint::affine(x, y));
  }
}

bool ResidueCurve::is_singular() const {
  const std::uint64_t d = (4 * (std::uint64_t{a_} * a_ % p_ * a_) + 27 * (std::uint64_t{b_} * b_ % p_)) % p_;
  return d == 0;
}

bool ResidueCurve::contains(const ResiduePoint& pt) const {
  if (pt.infinity) return true;
  const std::uint64_t x = pt.x, y = pt.y;
  return (x * x % p_ * x + a_ * x + b_) % p_ == y * y % p_;
}

std::uint32_t ResidueCurve::inv(std::uint32_t v) const {
  std::uint64_t r = 1, b = v % p_;
  for (std::uint32_t k = p_ - 2; k > 0; k >>= 1) {
    if (k & 1u) r = r * b % p_;
    b = b * b % p_;
  }
  return static_cast<std::uint32_t>(r);
}

ResiduePoint ResidueCurve::neg(const ResiduePoint& P) const {
  if (P.infinity) return P;
  return ResiduePoint::affine(P.x, (p_ - P.y) % p_);
}

ResiduePoint ResidueCurve::add(const ResiduePoint& P, const ResiduePoint& Q) const {
  if (P.infinity) return Q;
  if (Q.infinity) return P;
  const std::uint64_t p = p_;
  std::uint64_t lambda;
  if (P.x == Q.x) {
    if ((P.y + Q.y) % p_ == 0) return ResiduePoint::identity();
    lambda = (3 * (std::uint64_t{P.x} * P.x % p) + a_) % p * inv(static_cast<std::uint32_t>(2 * P.y % p)) % p;
  } else {
    lambda = (Q.y + p - P.y) % p * inv(static_cast<std::uint32_t>((Q.x + p - P.x) % p)) % p;
  }
  const std::uint64_t x3 = (lambda * lambda % p + 2 * p - P.x - Q.x) % p;
  const std::uint64_t y3 = (lambda * ((P.x + p - x3) % p) % p + p - P.y) % p;
  return ResiduePoint::affine(static_cast<std::uint32_t>(x3), static_cast<std::uint32_t>(y3));
}

ResiduePoint ResidueCurve::mul(std::int64_t n, const ResiduePoint& P) const {
  ResiduePoint base = n < 0 ? neg(P) : P;
  std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
  ResiduePoint acc = ResiduePoint::identity();
  while (k > 0) {
    if (k & 1u) acc = add(acc, base);
    base = add(base, base);
    k >>= 1;
  }
  return acc;
}

std::uint64_t ResidueCurve::order_of(const ResiduePoint& P) const {
  std::uint64_t n = 1;
  for (ResiduePoint Q = P; !Q.infinity; Q = add(Q, P)) ++n;
  return n;
}

std::vector<std::uint64_t> ResidueCurve::invariant_factors() const {
  std::vector<std::uint64_t> orders;
  orders.reserve(points_.size());
  for (const auto& P : points_) orders.push_back(order_of(P));
  return invariant_factors_from_orders(orders).value_or(std::vector<std::uint64_t>{});
}

bool ResidueCurve::is_three_torsion() const {
  for (const auto& P : points_)
    if (!mul(3, P).infinity) return false;
  return true;
}

}  // namespace eloop
