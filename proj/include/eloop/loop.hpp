#pragma once

// Elliptic loops L_{A,B}(R): every point of P^2(R) whose Weierstrass value
// F = x^3 + Axz^2 + Bz^3 - y^2 z lies in m, with the (0:1:0) addition law.

#include <bit>
#include <cstdint>
#include <vector>

#include "eloop/projective.hpp"
#include "eloop/residue_curve.hpp"
#include "eloop/ring.hpp"

namespace eloop {

/// Points of a loop are canonical projective points with Y = 1.
template <LocalRingElement R>
using LoopPoint = ProjPoint<R>;

/// The parameters (A, B) over R together with the cached residue curve.
/// Construction validates that the discriminant is a unit and that the
/// residue curve has odd order. Immutable afterwards.
template <LocalRingElement R>
class Loop {
 public:
  using Point = LoopPoint<R>;

  /// Throws SingularCurve when -(4A^3 + 27B^2) is not a unit and EvenOrder
  /// when the reduction has a point of order 2.
  static Loop create(const RingConfig& cfg, const R& a, const R& b) { return Loop(cfg, a, b); }
  static Loop create(const RingConfig& cfg, std::int64_t a, std::int64_t b) {
    return Loop(cfg, R::from_int(cfg, a), R::from_int(cfg, b));
  }

  const RingConfig& config() const { return cfg_; }
  const R& a() const { return a_; }
  const R& b() const { return b_; }
  /// Delta = -(4A^3 + 27B^2).
  const R& discriminant() const { return delta_; }
  const ResidueCurve& residue_curve() const { return curve_; }
  /// q = |E(F_p)|.
  std::uint64_t base_order() const { return curve_.order(); }
  bool three_divides_base_order() const { return curve_.order() % 3 == 0; }

  R elem(std::int64_t n) const { return R::from_int(cfg_, n); }
  Point identity() const { return normalize(zero_, one_, zero_); }

  R eval_F(const Point& P) const { return eval_F(P.x(), P.y(), P.z()); }
  R eval_F(const R& x, const R& y, const R& z) const {
    const R z2 = z * z;
    return x * x * x + a_ * x * z2 + b_ * z2 * z - y * y * z;
  }

  /// The Hessian determinant -8(3Ax^2 z + 3xy^2 + 9Bxz^2 - A^2 z^3), factor
  /// -8 included.
  R eval_H(const Point& P) const { return eval_H(P.x(), P.y(), P.z()); }
  R eval_H(const R& x, const R& y, const R& z) const {
    const R inner = three_a_ * x * x * z + three_ * x * y * y + nine_b_ * x * z * z - a2_ * z * z * z;
    return minus_eight_ * inner;
  }

  /// F(P) in m; independent of the representative.
  bool contains(const Point& P) const { return !eval_F(P).is_unit(); }
  bool contains(const R& x, const R& y, const R& z) const { return !eval_F(x, y, z).is_unit(); }

  /// Normalizes and checks membership; throws NotPrimitive or NotOnLoop.
  Point point(const R& x, const R& y, const R& z) const {
    Point P = normalize(x, y, z);
    if (!contains(P)) throw Error(ErrorKind::NotOnLoop, "F(P) is a unit");
    return P;
  }
  Point point(std::int64_t x, std::int64_t y, std::int64_t z) const { return point(elem(x), elem(y), elem(z)); }

  /// The addition law in its bilinear Q1..Q4 factorisation.
  Point add(const Point& P, const Point& Q) const {
    const R &x1 = P.x(), &y1 = P.y(), &z1 = P.z();
    const R &x2 = Q.x(), &y2 = Q.y(), &z2 = Q.z();
    const R x1z2 = x1 * z2, x2z1 = x2 * z1, z1z2 = z1 * z2, x1x2 = x1 * x2, y1y2 = y1 * y2;
    const R cross = a_ * (x1z2 + x2z1) + three_b_ * z1z2;
    const R q1 = y1y2 - cross;
    const R q2 = a2_ * z1z2 - a_ * x1x2 - three_b_ * (x1z2 + x2z1);
    const R q3 = a_ * z1z2 + three_ * x1x2;
    const R q4 = cross + y1y2;
    const R sxy = x1 * y2 + x2 * y1;
    const R szy = z1 * y2 + z2 * y1;
    const R t1 = sxy * q1 + szy * q2;
    const R t2 = q1 * q4 - q2 * q3;
    const R t3 = sxy * q3 + szy * q4;
    if (!(t1.is_unit() || t2.is_unit() || t3.is_unit()))
      throw Error(ErrorKind::DegenerateSum, "addition law produced a non-primitive triple");
    return normalize(t1, t2, t3);
  }

  /// -(X:Y:Z) = (X:-Y:Z).
  Point neg(const Point& P) const { return normalize(P.x(), -P.y(), P.z()); }
  Point sub(const Point& P, const Point& Q) const { return add(P, neg(Q)); }

  /// nP by double-and-add; agrees with mul_recursive because <P> is a group.
  Point mul(std::int64_t n, const Point& P) const {
    Point base = n < 0 ? neg(P) : P;
    std::uint64_t k = n < 0 ? static_cast<std::uint64_t>(-n) : static_cast<std::uint64_t>(n);
    if (k == 0) return identity();
    Point acc = base;
    for (int bit = 62 - std::countl_zero(k); bit >= 0; --bit) {
      acc = add(acc, acc);
      if ((k >> bit) & 1u) acc = add(acc, base);
    }
    return acc;
  }

  /// 0P = O, (-n)P = n(-P), (n+1)P = nP + P, taken literally.
  Point mul_recursive(std::int64_t n, const Point& P) const {
    if (n < 0) return mul_recursive(-n, neg(P));
    Point acc = identity();
    for (std::int64_t i = 0; i < n; ++i) acc = add(acc, P);
    return acc;
  }

  /// Bound on point orders: q p^{2(e-1)} = |L|.
  std::uint64_t size() const { return curve_.order() * ipow(cfg_.ideal_size(), 2); }

  std::uint64_t order_of(const Point& P) const {
    const Point O = identity();
    std::uint64_t n = 1;
    const std::uint64_t bound = size();
    for (Point Q = P; !(Q == O); Q = add(Q, P)) {
      if (++n > bound) throw Error(ErrorKind::DegenerateSum, "point order exceeds |L|");
    }
    return n;
  }

  /// beta in m with P on E_{A+alpha, B+beta}(R); P must be affine.
  R lift_affine(const Point& P, const R& alpha) const {
    if (!P.is_affine()) throw Error(ErrorKind::PreconditionUnmet, "lift_affine needs an affine point");
    const R zi = P.z().inverse();
    const R x = P.x() * zi, y = P.y() * zi;
    return y * y - x * x * x - (a_ + alpha) * x - b_;
  }

  ResiduePoint project(const Point& P) const {
    const std::uint32_t p = cfg_.p;
    const std::uint32_t z = P.z().residue();
    if (z == 0) return ResiduePoint::identity();
    const std::uint64_t zi = curve_.inv(z);
    return ResiduePoint::affine(static_cast<std::uint32_t>(P.x().residue() * zi % p),
                                static_cast<std::uint32_t>(P.y().residue() * zi % p));
  }

  /// pi^{-1}(r): all p^{2(e-1)} loop points over a residue point.
  std::vector<Point> fiber(const ResiduePoint& r) const {
    const auto ideal = ideal_power_elements<R>(cfg_, 1);
    R x0 = zero_, z0 = zero_;
    if (!r.infinity) {
      const std::uint64_t yi = curve_.inv(r.y);
      x0 = elem(static_cast<std::int64_t>(r.x * yi % cfg_.p));
      z0 = elem(static_cast<std::int64_t>(yi));
    }
    std::vector<Point> out;
    out.reserve(ideal.size() * ideal.size());
    for (const R& dx : ideal)
      for (const R& dz : ideal) out.push_back(normalize(x0 + dx, one_, z0 + dz));
    return out;
  }

  /// All points, fiber by fiber in residue-curve order (L^inf first).
  std::vector<Point> points() const {
    std::vector<Point> out;
    for (const auto& r : curve_.points()) {
      auto f = fiber(r);
      out.insert(out.end(), f.begin(), f.end());
    }
    return out;
  }

  std::vector<Point> infinity_points() const { return fiber(ResiduePoint::identity()); }

  std::vector<Point> affine_points() const {
    std::vector<Point> out;
    for (const auto& r : curve_.points()) {
      if (r.infinity) continue;
      auto f = fiber(r);
      out.insert(out.end(), f.begin(), f.end());
    }
    return out;
  }

 private:
  Loop(const RingConfig& cfg, const R& a, const R& b)
      : cfg_(cfg), a_(a), b_(b), curve_(cfg.p, a.residue(), b.residue()) {
    if (a.config() != cfg || b.config() != cfg) throw Error(ErrorKind::ConfigMismatch, "A, B not in the given ring");
    zero_ = R::zero(cfg);
    one_ = R::one(cfg);
    three_ = elem(3);
    three_a_ = three_ * a_;
    three_b_ = three_ * b_;
    nine_b_ = elem(9) * b_;
    a2_ = a_ * a_;
    minus_eight_ = elem(-8);
    delta_ = -(elem(4) * a_ * a_ * a_ + elem(27) * b_ * b_);
    if (!delta_.is_unit()) throw Error(ErrorKind::SingularCurve, "discriminant -(4A^3+27B^2) lies in m");
    if (curve_.order() % 2 == 0)
      throw Error(ErrorKind::EvenOrder, "residue curve has even order " + std::to_string(curve_.order()));
  }

  RingConfig cfg_;
  R a_, b_;
  ResidueCurve curve_;
  R zero_, one_, three_, three_a_, three_b_, nine_b_, a2_, minus_eight_, delta_;
};

}  // namespace eloop
