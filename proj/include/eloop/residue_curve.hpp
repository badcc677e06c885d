#pragma once

// The base curve y^2 = x^3 + ax + b over F_p, with textbook affine
// chord-and-tangent arithmetic. It is the target of the projection of a loop
// and doubles as an independent oracle for loop addition over a field.

#include <cstdint>
#include <vector>

namespace eloop {

struct ResiduePoint {
  bool infinity = true;
  std::uint32_t x = 0;
  std::uint32_t y = 0;

  static ResiduePoint identity() { return {}; }
  static ResiduePoint affine(std::uint32_t x, std::uint32_t y) { return {false, x, y}; }

  friend bool operator==(const ResiduePoint&, const ResiduePoint&) = default;
};

class ResidueCurve {
 public:
  /// a and b are reduced mod p. Discriminant is not checked here.
  ResidueCurve(std::uint32_t p, std::uint32_t a, std::uint32_t b);

  std::uint32_t p() const { return p_; }
  std::uint32_t a() const { return a_; }
  std::uint32_t b() const { return b_; }

  bool is_singular() const;
  bool contains(const ResiduePoint& pt) const;

  /// All points, identity first, then affine points sorted by (x, y).
  const std::vector<ResiduePoint>& points() const { return points_; }
  std::uint64_t order() const { return points_.size(); }

  ResiduePoint add(const ResiduePoint& P, const ResiduePoint& Q) const;
  ResiduePoint neg(const ResiduePoint& P) const;
  ResiduePoint mul(std::int64_t n, const ResiduePoint& P) const;
  std::uint64_t order_of(const ResiduePoint& P) const;

  /// Invariant factors d_1 | d_2 | ... of the point group (trivial factors
  /// dropped).
  std::vector<std::uint64_t> invariant_factors() const;

  /// True iff every point satisfies 3P = O.
  bool is_three_torsion() const;

  std::uint32_t inv(std::uint32_t v) const;

 private:
  std::uint32_t p_, a_, b_;
  std::vector<ResiduePoint> points_;
};

}  // namespace eloop
