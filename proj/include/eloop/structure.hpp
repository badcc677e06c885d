#pragma once

// Associativity matrix and rank criterion, the infinity part over Z/p^eZ,
// torsion fibers, their difference groups, and the lines that carry them.

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <type_traits>
#include <unordered_set>
#include <utility>
#include <vector>

#include "eloop/layers.hpp"
#include "eloop/loop.hpp"

namespace eloop {

/// Columns (F(P_i), H_F(P_i)) at canonical representatives.
template <LocalRingElement R>
struct AssocMatrix {
  std::vector<std::pair<R, R>> columns;
};

template <LocalRingElement R>
AssocMatrix<R> assoc_matrix(const Loop<R>& loop, const std::vector<LoopPoint<R>>& points) {
  AssocMatrix<R> M;
  M.columns.reserve(points.size());
  for (const auto& P : points) M.columns.emplace_back(loop.eval_F(P), loop.eval_H(P));
  return M;
}

/// Rank over R of a 2 x n matrix: the largest t with a non-zero t-minor.
template <LocalRingElement R>
int matrix_rank(const AssocMatrix<R>& M) {
  bool nonzero_entry = false;
  for (const auto& [f, h] : M.columns) nonzero_entry = nonzero_entry || !f.is_zero() || !h.is_zero();
  if (!nonzero_entry) return 0;
  for (std::size_t i = 0; i < M.columns.size(); ++i)
    for (std::size_t j = i + 1; j < M.columns.size(); ++j) {
      const auto& [f1, h1] = M.columns[i];
      const auto& [f2, h2] = M.columns[j];
      if (!(f1 * h2 - f2 * h1).is_zero()) return 2;
    }
  return 1;
}

/// (P1 + P2) + P3 == P1 + (P2 + P3).
template <LocalRingElement R>
bool triple_associates(const Loop<R>& loop, const LoopPoint<R>& P1, const LoopPoint<R>& P2,
                       const LoopPoint<R>& P3) {
  return proj_equal(loop.add(loop.add(P1, P2), P3), loop.add(P1, loop.add(P2, P3)));
}

/// Rank of A(P1, P2, P3) is at most 1; sufficient (not necessary) for the
/// triple to associate.
template <LocalRingElement R>
bool assoc_sufficient(const Loop<R>& loop, const LoopPoint<R>& P1, const LoopPoint<R>& P2,
                      const LoopPoint<R>& P3) {
  return matrix_rank(assoc_matrix(loop, {P1, P2, P3})) <= 1;
}

// ---------------------------------------------------------------------------
// Infinity part over Z/p^eZ

struct InfDecomposition {
  std::uint64_t alpha = 0;
  std::uint64_t beta = 0;
  friend bool operator==(const InfDecomposition&, const InfDecomposition&) = default;
};

/// (p : 1 : 0) and (0 : 1 : p).
std::pair<LoopPoint<ZpeElem>, LoopPoint<ZpeElem>> infinity_generators(const Loop<ZpeElem>& loop);

/// alpha (p:1:0) + beta (0:1:p).
LoopPoint<ZpeElem> infinity_compose(const Loop<ZpeElem>& loop, const InfDecomposition& d);

/// The unique (alpha, beta) in [0, p^{e-1})^2 with P = alpha (p:1:0) + beta (0:1:p),
/// recovered one p-adic digit at a time from the congruences
/// X = alpha p, Z = beta p modulo p^{v+2}. Verified by recomposition; throws
/// PreconditionUnmet if P is not over the identity.
InfDecomposition infinity_decompose(const Loop<ZpeElem>& loop, const LoopPoint<ZpeElem>& P);

/// Search over all p^{2(e-1)} pairs.
std::optional<InfDecomposition> infinity_decompose_exhaustive(const Loop<ZpeElem>& loop,
                                                              const LoopPoint<ZpeElem>& P);

/// True iff no non-zero multiple of (0:1:p) lies on any layer.
bool forbidden_locus_check(const Loop<ZpeElem>& loop);

// ---------------------------------------------------------------------------
// Torsion fibers

/// L_{q/P}: points over pi(P) killed by q.
template <LocalRingElement R>
std::vector<LoopPoint<R>> torsion_fiber(const Loop<R>& loop, std::int64_t q, const LoopPoint<R>& P) {
  std::vector<LoopPoint<R>> out;
  const auto O = loop.identity();
  for (const auto& Q : loop.fiber(loop.project(P)))
    if (loop.mul(q, Q) == O) out.push_back(Q);
  return out;
}

template <LocalRingElement R>
struct DifferenceGroup {
  /// Distinct differences P1 - P2, sorted by key.
  std::vector<LoopPoint<R>> elements;
  /// Contained in L^inf, contains O and closed under + and negation.
  bool subgroup_of_infinity = false;
  /// {P + D} equals L_{q/P} as sets.
  bool translates_onto_fiber = false;
};

/// D_{q/P} = {P1 - P2 : P1, P2 in L_{q/P}}. Needs m^2 = 0; throws
/// NilpotencyTooHigh otherwise.
template <LocalRingElement R>
DifferenceGroup<R> difference_group(const Loop<R>& loop, std::int64_t q, const LoopPoint<R>& P) {
  if (loop.config().nilpotency() > 2)
    throw Error(ErrorKind::NilpotencyTooHigh, "difference groups need m^2 = 0");
  const auto fiber = torsion_fiber(loop, q, P);
  DifferenceGroup<R> D;
  std::unordered_set<std::uint64_t> keys;
  for (const auto& P1 : fiber)
    for (const auto& P2 : fiber) {
      auto d = loop.sub(P1, P2);
      if (keys.insert(d.key()).second) D.elements.push_back(d);
    }
  std::sort(D.elements.begin(), D.elements.end(),
            [](const auto& a, const auto& b) { return a.key() < b.key(); });

  bool ok = keys.count(loop.identity().key()) == 1;
  for (const auto& a : D.elements) {
    ok = ok && loop.project(a).infinity && keys.count(loop.neg(a).key()) == 1;
    for (const auto& b : D.elements) ok = ok && keys.count(loop.add(a, b).key()) == 1;
  }
  D.subgroup_of_infinity = ok;

  std::unordered_set<std::uint64_t> fiber_keys, translate_keys;
  for (const auto& Q : fiber) fiber_keys.insert(Q.key());
  for (const auto& d : D.elements) translate_keys.insert(loop.add(P, d).key());
  D.translates_onto_fiber = fiber_keys == translate_keys;
  return D;
}

/// An element of maximal order in a difference group (O when trivial).
template <LocalRingElement R>
LoopPoint<R> difference_group_generator(const Loop<R>& loop, const DifferenceGroup<R>& D) {
  LoopPoint<R> best = loop.identity();
  std::uint64_t best_order = 1;
  for (const auto& d : D.elements) {
    const auto o = loop.order_of(d);
    if (o > best_order) {
      best = d;
      best_order = o;
    }
  }
  return best;
}

/// Coefficients (a, b, c) of the line a x + b y + c z = 0.
template <LocalRingElement R>
struct LineCoefficients {
  R a, b, c;
  bool contains(const LoopPoint<R>& P) const { return (a * P.x() + b * P.y() + c * P.z()).is_zero(); }
};

template <LocalRingElement R>
struct TorsionLine {
  /// -beta x + (beta X - alpha Z) y + alpha z = 0, through every point of L_{q/P}.
  LineCoefficients<R> line;
  /// The same line with alpha, beta divided by the uniformizer; cuts out
  /// L_{q/P} inside pi^{-1}(pi(P)). Only for Z/p^eZ.
  std::optional<LineCoefficients<R>> reduced;
  /// Generator was O: the fiber is {P} and the returned line is z = Z y.
  bool degenerate = false;
};

/// Line carrying L_{q/P} = {P + k (m_x : 1 : m_z)}. Needs m^2 = 0 and P with
/// Y = 1 (every canonical loop point qualifies).
template <LocalRingElement R>
TorsionLine<R> torsion_line(const Loop<R>& loop, const LoopPoint<R>& P, const LoopPoint<R>& generator) {
  if (loop.config().nilpotency() > 2) throw Error(ErrorKind::NilpotencyTooHigh, "torsion lines need m^2 = 0");
  const R& X = P.x();
  const R& Z = P.z();
  const R& mx = generator.x();
  const R& mz = generator.z();
  const R &A = loop.a(), &B = loop.b();
  const R two = loop.elem(2), three = loop.elem(3), six = loop.elem(6);
  const R alpha = A * A * Z * Z * mz - A * X * X * mz - two * A * X * Z * mx - six * B * X * Z * mz -
                  three * B * Z * Z * mx + mx;
  const R beta = two * A * X * Z * mz + A * Z * Z * mx + three * B * Z * Z * mz + three * X * X * mx + mz;

  TorsionLine<R> out{LineCoefficients<R>{-beta, beta * X - alpha * Z, alpha}, std::nullopt, false};
  if (mx.is_zero() && mz.is_zero()) {
    out.degenerate = true;
    out.line = LineCoefficients<R>{loop.elem(0), -Z, loop.elem(1)};
    return out;
  }
  if constexpr (std::is_same_v<R, ZpeElem>) {
    const RingConfig& cfg = loop.config();
    auto divide = [&](const R& v) { return loop.elem(static_cast<std::int64_t>(v.value() / cfg.p)); };
    const R a1 = divide(alpha), b1 = divide(beta);
    out.reduced = LineCoefficients<R>{-b1, b1 * X - a1 * Z, a1};
  }
  return out;
}

}  // namespace eloop
