#pragma once

// Layers L_t = {P : (F - t H_F)(P) = 0}, t in m: the abelian groups that
// stratify the affine part of a loop without 3-torsion.

#include <array>
#include <cstdint>
#include <vector>

#include "eloop/loop.hpp"

namespace eloop {

template <LocalRingElement R>
class Layer {
 public:
  using Point = LoopPoint<R>;

  /// Throws PreconditionUnmet unless t lies in m.
  Layer(Loop<R> loop, R t) : loop_(std::move(loop)), t_(std::move(t)) {
    if (t_.is_unit()) throw Error(ErrorKind::PreconditionUnmet, "layer parameter t must lie in m");
  }

  const Loop<R>& loop() const { return loop_; }
  const R& t() const { return t_; }

  /// (F - t H_F)(P); zero exactly on the layer.
  R equation(const Point& P) const { return loop_.eval_F(P) - t_ * loop_.eval_H(P); }
  bool contains(const Point& P) const { return equation(P).is_zero(); }

  /// Every point of the layer, enumerated fiber by fiber.
  std::vector<Point> points() const {
    std::vector<Point> out;
    for (const auto& r : loop_.residue_curve().points())
      for (const Point& P : loop_.fiber(r))
        if (contains(P)) out.push_back(P);
    return out;
  }

  std::vector<Point> infinity_points() const {
    std::vector<Point> out;
    for (const Point& P : loop_.infinity_points())
      if (contains(P)) out.push_back(P);
    return out;
  }

 private:
  Loop<R> loop_;
  R t_;
};

/// One layer per t in m, in index order of t.
template <LocalRingElement R>
std::vector<Layer<R>> all_layers(const Loop<R>& loop) {
  std::vector<Layer<R>> out;
  for (const R& t : ideal_power_elements<R>(loop.config(), 1)) out.emplace_back(loop, t);
  return out;
}

/// The unique t with P in L_t, namely F(P) H_F(P)^{-1}. Throws
/// PreconditionUnmet for points at infinity or off the loop and
/// HessianNotUnit when 3 pi(P) = O.
template <LocalRingElement R>
R stratify(const Loop<R>& loop, const LoopPoint<R>& P) {
  if (!P.is_affine()) throw Error(ErrorKind::PreconditionUnmet, "stratification applies to affine points");
  if (!loop.contains(P)) throw Error(ErrorKind::NotOnLoop, "point is not on the loop");
  const R h = loop.eval_H(P);
  if (!h.is_unit()) throw Error(ErrorKind::HessianNotUnit, "H_F(P) lies in m, so 3 pi(P) = O");
  return loop.eval_F(P) * h.inverse();
}

/// (alpha F + beta H_F)(P).
template <LocalRingElement R>
R pencil_value(const Loop<R>& loop, const R& alpha, const R& beta, const LoopPoint<R>& P) {
  return alpha * loop.eval_F(P) + beta * loop.eval_H(P);
}

/// True iff the zero set of alpha F + beta H_F restricted to `sample` is
/// closed under addition on every pair. Points of the sample off the zero
/// set are a precondition failure.
template <LocalRingElement R>
bool hessian_closure_check(const Loop<R>& loop, const R& alpha, const R& beta,
                           const std::vector<LoopPoint<R>>& sample) {
  for (const auto& P : sample)
    if (!pencil_value(loop, alpha, beta, P).is_zero())
      throw Error(ErrorKind::PreconditionUnmet, "sample point off the pencil member");
  for (std::size_t i = 0; i < sample.size(); ++i)
    for (std::size_t j = i; j < sample.size(); ++j)
      if (!pencil_value(loop, alpha, beta, loop.add(sample[i], sample[j])).is_zero()) return false;
  return true;
}

/// Generator (p : 1 : Z_t) of the cyclic group L_t^inf over Z/p^eZ. Z_t is the
/// Hensel lift from z = 0 of the root of g(z) = (F - t H_F)(p, 1, z), whose
/// derivative at 0 is a unit.
LoopPoint<ZpeElem> layer_infinity_generator(const Layer<ZpeElem>& layer);

/// The coefficients of g(z) = c0 + c1 z + c2 z^2 + c3 z^3 above.
std::array<ZpeElem, 4> layer_infinity_polynomial(const Layer<ZpeElem>& layer);

struct LayerSummary {
  std::uint64_t t = 0;
  std::uint64_t z_t = 0;
  std::uint64_t cardinality = 0;
  std::uint64_t infinity_order = 0;
  /// Invariant factors read off the element orders; empty if they are not
  /// those of an abelian group.
  std::vector<std::uint64_t> group_structure;
  friend bool operator==(const LayerSummary&, const LayerSummary&) = default;
};

LayerSummary summarize_layer(const Layer<ZpeElem>& layer);

}  // namespace eloop
