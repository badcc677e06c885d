#pragma once

// Points of P^2(R) over a finite local ring.

#include <array>
#include <cstdint>
#include <ostream>
#include <vector>

#include "eloop/ring.hpp"

namespace eloop {

/// A primitive triple (X : Y : Z) kept in canonical form: the first unit
/// among Y, Z, X (in that order) is scaled to 1. Structural equality is
/// therefore projective equality.
template <LocalRingElement R>
class ProjPoint {
 public:
  ProjPoint() = default;

  const R& x() const { return x_; }
  const R& y() const { return y_; }
  const R& z() const { return z_; }
  RingConfig config() const { return x_.config(); }

  /// Affine means Z is a unit; otherwise the point is at infinity.
  bool is_affine() const { return z_.is_unit(); }

  /// Injective 64-bit key; relies on |R| <= 2^21.
  std::uint64_t key() const {
    const std::uint64_t n = config().size();
    return (x_.index() * n + y_.index()) * n + z_.index();
  }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

  template <LocalRingElement S>
  friend ProjPoint<S> normalize(const S& x, const S& y, const S& z);

 private:
  ProjPoint(R x, R y, R z) : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {}
  R x_, y_, z_;
};

/// Canonical representative of (x : y : z). Throws NotPrimitive when every
/// coordinate lies in m.
template <LocalRingElement S>
ProjPoint<S> normalize(const S& x, const S& y, const S& z) {
  const S* pivot = nullptr;
  if (y.is_unit())
    pivot = &y;
  else if (z.is_unit())
    pivot = &z;
  else if (x.is_unit())
    pivot = &x;
  if (pivot == nullptr) throw Error(ErrorKind::NotPrimitive, "all coordinates lie in the maximal ideal");
  const S u = pivot->inverse();
  return ProjPoint<S>(x * u, y * u, z * u);
}

/// Rank test: the 2x3 matrix of coordinates has all 2-minors zero. For
/// primitive triples this is equivalent to equality in P^2(R), independently
/// of the representatives chosen.
template <LocalRingElement R>
bool proj_equal(const R& x1, const R& y1, const R& z1, const R& x2, const R& y2, const R& z2) {
  return (x1 * y2 - x2 * y1).is_zero() && (x1 * z2 - x2 * z1).is_zero() && (y1 * z2 - y2 * z1).is_zero();
}

template <LocalRingElement R>
bool proj_equal(const ProjPoint<R>& a, const ProjPoint<R>& b) {
  return proj_equal(a.x(), a.y(), a.z(), b.x(), b.y(), b.z());
}

/// |P^n(R)| = sum_{i=0}^{n} |R|^(n-i) |m|^i.
std::uint64_t count_projective(std::uint32_t n, const RingConfig& cfg);

/// Every canonical point of P^2(R): (X:1:Z), then (X:Y:1) with Y in m, then
/// (1:Y:Z) with Y, Z in m.
template <LocalRingElement R>
std::vector<ProjPoint<R>> enumerate_projective_plane(const RingConfig& cfg) {
  const auto elems = all_elements<R>(cfg);
  const R one = R::one(cfg);
  std::vector<ProjPoint<R>> out;
  out.reserve(count_projective(2, cfg));
  for (const R& x : elems)
    for (const R& z : elems) out.push_back(normalize(x, one, z));
  for (const R& x : elems)
    for (const R& y : elems)
      if (!y.is_unit()) out.push_back(normalize(x, y, one));
  for (const R& y : elems)
    for (const R& z : elems)
      if (!y.is_unit() && !z.is_unit()) out.push_back(normalize(one, y, z));
  return out;
}

/// Brute-force variant: normalizes all |R|^3 triples and keeps the fixed
/// points. Slow; used to cross-check the structured enumeration.
template <LocalRingElement R>
std::vector<ProjPoint<R>> enumerate_projective_plane_brute(const RingConfig& cfg) {
  const auto elems = all_elements<R>(cfg);
  std::vector<ProjPoint<R>> out;
  for (const R& x : elems)
    for (const R& y : elems)
      for (const R& z : elems) {
        if (!(x.is_unit() || y.is_unit() || z.is_unit())) continue;
        ProjPoint<R> p = normalize(x, y, z);
        if (p.x() == x && p.y() == y && p.z() == z) out.push_back(p);
      }
  return out;
}

template <LocalRingElement R>
std::ostream& operator<<(std::ostream& os, const ProjPoint<R>& p) {
  return os << '(' << p.x().index() << ':' << p.y().index() << ':' << p.z().index() << ')';
}

}  // namespace eloop
