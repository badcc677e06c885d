#pragma once

// Loop-law batteries, explicit non-associative triples, the low-nilpotency
// identities, and the search for loops over Z/p^eZ that are groups.

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "eloop/abelian.hpp"
#include "eloop/loop.hpp"
#include "eloop/structure.hpp"

namespace eloop {

enum class Law { Alternative, Jordan, Moufang, Diassociative, PowerAssociative, FullAssociative, LatinSquare };

std::string_view to_string(Law law);
/// Throws PreconditionUnmet on an unknown name.
Law law_from_string(std::string_view name);
const std::vector<Law>& all_laws();

/// Outcome of checking one identity. A counterexample is present iff the
/// verdict is false, and `replay_counterexample` reproduces it.
template <LocalRingElement R>
struct LawReport {
  std::string law;
  bool verdict = true;
  std::vector<LoopPoint<R>> counterexample;
  std::vector<std::int64_t> parameters;
  std::uint64_t checked = 0;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;

  friend bool operator==(const LawReport&, const LawReport&) = default;
};

inline constexpr std::int64_t kPowerRange = 200;

namespace detail {

template <LocalRingElement R>
std::vector<LoopPoint<R>> generated_subloop(const Loop<R>& loop, const std::vector<LoopPoint<R>>& gens,
                                            std::size_t cap) {
  std::vector<LoopPoint<R>> members;
  std::unordered_set<std::uint64_t> keys;
  std::vector<LoopPoint<R>> work;
  auto push = [&](const LoopPoint<R>& x) {
    if (keys.insert(x.key()).second) {
      members.push_back(x);
      work.push_back(x);
    }
  };
  push(loop.identity());
  for (const auto& g : gens) push(g);
  while (!work.empty() && members.size() <= cap) {
    const auto x = work.back();
    work.pop_back();
    push(loop.neg(x));
    const std::size_t n = members.size();
    for (std::size_t i = 0; i < n && members.size() <= cap; ++i) push(loop.add(x, members[i]));
  }
  return members;
}

}  // namespace detail

/// Whether the named identity holds on one tuple. Names cover the loop laws
/// and the low-nilpotency identities; `pts` and `params` follow the layout
/// documented next to each case.
template <LocalRingElement R>
bool identity_holds(const Loop<R>& L, std::string_view name, const std::vector<LoopPoint<R>>& pts,
                    const std::vector<std::int64_t>& params) {
  auto need = [&](std::size_t n) {
    if (pts.size() != n) throw Error(ErrorKind::PreconditionUnmet, std::string(name) + ": wrong tuple size");
  };
  if (name == "alternative") {  // P + (P + Q) = (P + P) + Q
    need(2);
    const auto &P = pts[0], &Q = pts[1];
    return L.add(P, L.add(P, Q)) == L.add(L.add(P, P), Q);
  }
  if (name == "jordan") {  // (P + P) + (P + Q) = P + (Q + (P + P))
    need(2);
    const auto &P = pts[0], &Q = pts[1];
    const auto PP = L.add(P, P);
    return L.add(PP, L.add(P, Q)) == L.add(P, L.add(Q, PP));
  }
  if (name == "moufang") {  // (P + (Q + R)) + R = ((P + R) + R) + Q
    need(3);
    const auto &P = pts[0], &Q = pts[1], &R3 = pts[2];
    return L.add(L.add(P, L.add(Q, R3)), R3) == L.add(L.add(L.add(P, R3), R3), Q);
  }
  if (name == "full-associative" || name == "inf-associativity") {
    need(3);
    return triple_associates(L, pts[0], pts[1], pts[2]);
  }
  if (name == "power-associative") {  // [P], [n, m]: (n+m)P = nP + mP
    need(1);
    const std::int64_t n = params.at(0), m = params.at(1);
    return L.mul_recursive(n + m, pts[0]) == L.add(L.mul_recursive(n, pts[0]), L.mul_recursive(m, pts[0]));
  }
  if (name == "latin-square") {
    // [P, Q]: P + (-P + Q) = Q.  [P, X1, X2]: P + X1 = P + X2 forces X1 = X2.
    if (pts.size() == 2) return L.add(pts[0], L.add(L.neg(pts[0]), pts[1])) == pts[1];
    need(3);
    return pts[1] == pts[2] || !(L.add(pts[0], pts[1]) == L.add(pts[0], pts[2]));
  }
  if (name == "diassociative") {  // [P, Q, a, b, c]: a, b, c in <P, Q> associate
    need(5);
    const auto sub = detail::generated_subloop(L, {pts[0], pts[1]}, L.size());
    std::unordered_set<std::uint64_t> keys;
    for (const auto& s : sub) keys.insert(s.key());
    for (std::size_t i = 2; i < 5; ++i)
      if (keys.count(pts[i].key()) == 0) return true;
    return triple_associates(L, pts[2], pts[3], pts[4]);
  }
  if (name == "ass-with-inf") {  // [P, Q, R1, R2]: (P+R1) - (Q+R2) = (P-Q) + (R1-R2)
    need(4);
    const auto &P = pts[0], &Q = pts[1], &R1 = pts[2], &R2 = pts[3];
    return L.sub(L.add(P, R1), L.add(Q, R2)) == L.add(L.sub(P, Q), L.sub(R1, R2));
  }
  if (name == "three-points-over-the-same") {  // [P, Q, R]: (P+Q) - R = P + (Q-R)
    need(3);
    const auto &P = pts[0], &Q = pts[1], &R3 = pts[2];
    return L.sub(L.add(P, Q), R3) == L.add(P, L.sub(Q, R3));
  }
  if (name == "heavy") {
    // [P1, P2, P3, Q1, Q2, Q3]:
    // (P1+P2-P3) + (Q1+Q2-Q3) = (P1+Q1) + (P2+Q2) - (P3+Q3)
    need(6);
    const auto lhs = L.add(L.sub(L.add(pts[0], pts[1]), pts[2]), L.sub(L.add(pts[3], pts[4]), pts[5]));
    const auto rhs = L.sub(L.add(L.add(pts[0], pts[3]), L.add(pts[1], pts[4])), L.add(pts[2], pts[5]));
    return lhs == rhs;
  }
  if (name == "ass-multiples") {  // [P1, P2, P3], [m]: m(P1+P2-P3) = mP1 + mP2 - mP3
    need(3);
    const std::int64_t m = params.at(0);
    const auto lhs = L.mul(m, L.sub(L.add(pts[0], pts[1]), pts[2]));
    const auto rhs = L.sub(L.add(L.mul(m, pts[0]), L.mul(m, pts[1])), L.mul(m, pts[2]));
    return lhs == rhs;
  }
  if (name == "tech-i" || name == "tech-ii" || name == "tech-iv") {
    // tech-i  [P1, P2], [k]: X, Z of P1 + P2 agree with the coordinate sums
    //         mod m^{3k} when all coordinates lie in m^k.
    // tech-ii [P1, P2, (dX:1:dZ)], [k, f]: perturbing P1 by dX, dZ in m^f
    //         perturbs the sum by the same amounts mod m^{f+2k}.
    // tech-iv [P1], [k, a]: a P1 agrees with (a X1 : 1 : a Z1) mod
    //         m^{3k + v(a) - 1}.
    // Tuples violating the hypotheses hold vacuously.
    const int k = static_cast<int>(params.at(0));
    auto in_mk = [&](const LoopPoint<R>& P, int level) {
      return P.x().valuation().at_least(level) && P.z().valuation().at_least(level);
    };
    auto agree = [&](const LoopPoint<R>& S, const R& x, const R& z, int level) {
      return congruent_mod_power(S.x(), x, level) && congruent_mod_power(S.z(), z, level);
    };
    if (name == "tech-i") {
      need(2);
      if (!in_mk(pts[0], k) || !in_mk(pts[1], k)) return true;
      return agree(L.add(pts[0], pts[1]), pts[0].x() + pts[1].x(), pts[0].z() + pts[1].z(), 3 * k);
    }
    if (name == "tech-ii") {
      need(3);
      const int f = static_cast<int>(params.at(1));
      if (f < k || !in_mk(pts[0], k) || !in_mk(pts[1], k) || !in_mk(pts[2], f)) return true;
      const auto S = L.add(pts[0], pts[1]);
      const auto moved = L.point(pts[0].x() + pts[2].x(), L.elem(1), pts[0].z() + pts[2].z());
      return agree(L.add(moved, pts[1]), S.x() + pts[2].x(), S.z() + pts[2].z(), f + 2 * k);
    }
    need(1);
    const std::int64_t a = params.at(1);
    const R ar = L.elem(a);
    const Valuation va = ar.valuation();
    if (!in_mk(pts[0], k)) return true;
    if (va.is_infinite()) return L.mul(a, pts[0]) == L.identity();
    return agree(L.mul(a, pts[0]), ar * pts[0].x(), ar * pts[0].z(), 3 * k + va.value() - 1);
  }
  throw Error(ErrorKind::PreconditionUnmet, "unknown identity '" + std::string(name) + "'");
}

/// True iff the report's counterexample still violates its identity.
template <LocalRingElement R>
bool replay_counterexample(const Loop<R>& loop, const LawReport<R>& report) {
  if (report.verdict) return report.counterexample.empty();
  return !identity_holds(loop, report.law, report.counterexample, report.parameters);
}

namespace detail {

/// Runs `holds` over all |pts|^arity tuples when that fits in the budget,
/// otherwise over `budget` uniformly sampled tuples.
template <LocalRingElement R, class Holds>
void drive_tuples(LawReport<R>& rep, const std::vector<LoopPoint<R>>& pts, std::size_t arity, Holds holds) {
  const std::uint64_t n = pts.size();
  std::uint64_t total = 1;
  bool fits = true;
  for (std::size_t i = 0; i < arity; ++i) {
    if (total > rep.budget / std::max<std::uint64_t>(n, 1)) fits = false;
    total *= n;
  }
  fits = fits && total <= rep.budget;
  rep.exhaustive = fits;
  std::vector<LoopPoint<R>> tuple(arity);
  auto test = [&]() {
    ++rep.checked;
    if (!holds(tuple)) {
      rep.verdict = false;
      rep.counterexample = tuple;
      return false;
    }
    return true;
  };
  if (fits) {
    std::vector<std::uint64_t> idx(arity, 0);
    for (std::uint64_t c = 0; c < total; ++c) {
      for (std::size_t i = 0; i < arity; ++i) tuple[i] = pts[idx[i]];
      if (!test()) return;
      for (std::size_t i = arity; i-- > 0;) {
        if (++idx[i] < n) break;
        idx[i] = 0;
      }
    }
  } else {
    std::mt19937_64 rng(rep.seed);
    std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
    for (std::uint64_t c = 0; c < rep.budget; ++c) {
      for (std::size_t i = 0; i < arity; ++i) tuple[i] = pts[pick(rng)];
      if (!test()) return;
    }
  }
}

}  // namespace detail

/// Checks one law on the whole loop: exhaustively when the number of tuples
/// is within `budget`, otherwise on `budget` tuples drawn with `seed`.
template <LocalRingElement R>
LawReport<R> law_suite(const Loop<R>& loop, Law law, std::uint64_t budget, std::uint64_t seed) {
  LawReport<R> rep;
  rep.law = std::string(to_string(law));
  rep.seed = seed;
  rep.budget = budget;
  const auto pts = loop.points();
  const auto name = rep.law;
  auto holds = [&](const std::vector<LoopPoint<R>>& t) { return identity_holds(loop, name, t, {}); };

  switch (law) {
    case Law::Alternative:
    case Law::Jordan:
      detail::drive_tuples(rep, pts, 2, holds);
      break;
    case Law::Moufang:
    case Law::FullAssociative:
      detail::drive_tuples(rep, pts, 3, holds);
      break;
    case Law::LatinSquare: {
      // Each row P costs |L| additions: P + X for all X, checked injective,
      // plus P + (-P + Q) = Q for all Q.
      const std::uint64_t rows_budget = std::max<std::uint64_t>(budget / std::max<std::size_t>(pts.size(), 1), 1);
      rep.exhaustive = rows_budget >= pts.size();
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
      const std::uint64_t rows = rep.exhaustive ? pts.size() : rows_budget;
      for (std::uint64_t r = 0; r < rows && rep.verdict; ++r) {
        const auto& P = rep.exhaustive ? pts[r] : pts[pick(rng)];
        std::unordered_map<std::uint64_t, std::size_t> image;
        const auto negP = loop.neg(P);
        for (std::size_t i = 0; i < pts.size(); ++i) {
          ++rep.checked;
          const auto s = loop.add(P, pts[i]);
          if (auto [it, fresh] = image.emplace(s.key(), i); !fresh) {
            rep.verdict = false;
            rep.counterexample = {P, pts[it->second], pts[i]};
            break;
          }
          if (!(loop.add(P, loop.add(negP, pts[i])) == pts[i])) {
            rep.verdict = false;
            rep.counterexample = {P, pts[i]};
            break;
          }
        }
      }
      break;
    }
    case Law::PowerAssociative: {
      // Per point: multiples 0..2N by the literal recursion, then all
      // (n, m) in [0, N]^2.
      const std::uint64_t per_point = (kPowerRange + 1) * (kPowerRange + 1);
      const std::uint64_t point_budget = std::max<std::uint64_t>(budget / per_point, 1);
      rep.exhaustive = point_budget >= pts.size();
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
      const std::uint64_t count = rep.exhaustive ? pts.size() : point_budget;
      for (std::uint64_t c = 0; c < count && rep.verdict; ++c) {
        const auto& P = rep.exhaustive ? pts[c] : pts[pick(rng)];
        std::vector<LoopPoint<R>> mult{loop.identity()};
        for (std::int64_t k = 1; k <= 2 * kPowerRange; ++k) mult.push_back(loop.add(mult.back(), P));
        for (std::int64_t n = 0; n <= kPowerRange && rep.verdict; ++n)
          for (std::int64_t m = 0; m <= kPowerRange; ++m) {
            ++rep.checked;
            if (!(mult[n + m] == loop.add(mult[n], mult[m]))) {
              rep.verdict = false;
              rep.counterexample = {P};
              rep.parameters = {n, m};
              break;
            }
          }
      }
      break;
    }
    case Law::Diassociative: {
      // Sampled pairs (P, Q); triples inside <P, Q>, all of them when the
      // subloop is small.
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
      rep.exhaustive = false;
      while (rep.checked < budget && rep.verdict) {
        const auto P = pts[pick(rng)], Q = pts[pick(rng)];
        const auto sub = detail::generated_subloop(loop, {P, Q}, loop.size());
        const std::uint64_t s = sub.size();
        const std::uint64_t triples = s * s * s;
        const std::uint64_t local = std::min<std::uint64_t>(triples, std::max<std::uint64_t>(budget / 16, 1));
        std::uniform_int_distribution<std::size_t> inner(0, s - 1);
        for (std::uint64_t c = 0; c < local && rep.verdict; ++c) {
          const auto& a = triples == local ? sub[c / (s * s)] : sub[inner(rng)];
          const auto& b = triples == local ? sub[(c / s) % s] : sub[inner(rng)];
          const auto& d = triples == local ? sub[c % s] : sub[inner(rng)];
          ++rep.checked;
          if (!triple_associates(loop, a, b, d)) {
            rep.verdict = false;
            rep.counterexample = {P, Q, a, b, d};
          }
        }
      }
      break;
    }
  }
  return rep;
}

/// Full associativity restricted to a point set (a layer, L^inf, ...).
template <LocalRingElement R>
LawReport<R> associativity_on(const Loop<R>& loop, const std::vector<LoopPoint<R>>& pts, std::uint64_t budget,
                              std::uint64_t seed) {
  LawReport<R> rep;
  rep.law = "full-associative";
  rep.seed = seed;
  rep.budget = budget;
  detail::drive_tuples(rep, pts, 3, [&](const std::vector<LoopPoint<R>>& t) {
    return triple_associates(loop, t[0], t[1], t[2]);
  });
  return rep;
}

// ---------------------------------------------------------------------------
// Non-associativity witnesses

template <LocalRingElement R>
struct Witness {
  std::vector<LoopPoint<R>> triple;
  /// (P1 + P2) + P3 and P1 + (P2 + P3).
  LoopPoint<R> left, right;
  bool associates = true;
};

template <LocalRingElement R>
Witness<R> make_witness(const Loop<R>& loop, const LoopPoint<R>& a, const LoopPoint<R>& b, const LoopPoint<R>& c) {
  Witness<R> w;
  w.triple = {a, b, c};
  w.left = loop.add(loop.add(a, b), c);
  w.right = loop.add(a, loop.add(b, c));
  w.associates = proj_equal(w.left, w.right);
  return w;
}

/// First affine point, in enumeration order, whose projection is not
/// 3-torsion; nullopt when the whole base curve is 3-torsion.
template <LocalRingElement R>
std::optional<LoopPoint<R>> first_point_without_three_torsion(const Loop<R>& loop) {
  const auto& E = loop.residue_curve();
  for (const auto& r : E.points())
    if (!r.infinity && !E.mul(3, r).infinity) return loop.fiber(r).front();
  return std::nullopt;
}

/// (P, (mu:1:mu), (0:1:mu)) for an affine P; needs mu^2 outside <mu^3>,
/// i.e. e >= 3.
template <LocalRingElement R>
Witness<R> witness_A(const Loop<R>& loop, std::optional<LoopPoint<R>> P = std::nullopt) {
  if (loop.config().nilpotency() < 3) throw Error(ErrorKind::PreconditionUnmet, "witness A needs e >= 3");
  if (!P) P = loop.affine_points().front();
  if (!P->is_affine() || !loop.contains(*P)) throw Error(ErrorKind::PreconditionUnmet, "P must be an affine loop point");
  const R mu = R::uniformizer(loop.config());
  const R one = R::one(loop.config()), zero = R::zero(loop.config());
  return make_witness(loop, *P, loop.point(mu, one, mu), loop.point(zero, one, mu));
}

/// (P, (X : Y+mu : 1), (0:1:mu)) for affine P = (X:Y:1) with 3 pi(P) != O;
/// needs e >= 2.
template <LocalRingElement R>
Witness<R> witness_B(const Loop<R>& loop, std::optional<LoopPoint<R>> P = std::nullopt) {
  if (loop.config().nilpotency() < 2) throw Error(ErrorKind::PreconditionUnmet, "witness B needs e >= 2");
  if (!P) P = first_point_without_three_torsion(loop);
  if (!P) throw Error(ErrorKind::PreconditionUnmet, "every base point is 3-torsion");
  if (!P->is_affine() || !loop.contains(*P)) throw Error(ErrorKind::PreconditionUnmet, "P must be an affine loop point");
  if (loop.residue_curve().mul(3, loop.project(*P)).infinity)
    throw Error(ErrorKind::PreconditionUnmet, "3 pi(P) = O");
  const R mu = R::uniformizer(loop.config());
  const R one = R::one(loop.config()), zero = R::zero(loop.config());
  const R zi = P->z().inverse();
  const R x = P->x() * zi, y = P->y() * zi;
  return make_witness(loop, *P, loop.point(x, y + mu, one), loop.point(zero, one, mu));
}

/// ((mu:1:0), (0:1:mu), (0:1:mu)); needs mu outside <mu^5>, i.e. e >= 6.
template <LocalRingElement R>
Witness<R> witness_inf(const Loop<R>& loop) {
  if (loop.config().nilpotency() < 6) throw Error(ErrorKind::PreconditionUnmet, "witness inf needs e >= 6");
  const R mu = R::uniformizer(loop.config());
  const R one = R::one(loop.config()), zero = R::zero(loop.config());
  const auto g = loop.point(zero, one, mu);
  return make_witness(loop, loop.point(mu, one, zero), g, g);
}

// ---------------------------------------------------------------------------
// Identities that hold when m^2 = 0

/// Reports for ass-with-inf, three-points-over-the-same, heavy,
/// ass-multiples, and inf-associativity (P + (Q + R) = (P + Q) + R with
/// Q, R at infinity). Throws NilpotencyTooHigh when e > 2.
LawReport<ZpeElem> low_nilpotency_report(const Loop<ZpeElem>& loop, std::string_view identity, std::uint64_t budget,
                                         std::uint64_t seed);
std::vector<LawReport<ZpeElem>> low_nilpotency_suite(const Loop<ZpeElem>& loop, std::uint64_t budget,
                                                     std::uint64_t seed);
const std::vector<std::string>& low_nilpotency_identities();

/// Randomized checks of the infinity-part congruences ("tech-i", "tech-ii",
/// "tech-iv"): `samples` random instances with exponents drawn from [1, e-1].
/// Needs e >= 2 and an integer-quotient ring.
LawReport<ZpeElem> tech_congruence_report(const Loop<ZpeElem>& loop, std::string_view part, std::uint64_t samples,
                                          std::uint64_t seed);

// ---------------------------------------------------------------------------
// Cardinalities and classification over Z/p^eZ

struct CardinalityReport {
  std::uint64_t infinity = 0;
  std::uint64_t affine = 0;
  std::uint64_t expected_infinity = 0;  // p^{2(e-1)}
  std::uint64_t expected_affine = 0;    // (q - 1) p^{2(e-1)}
  bool matches() const { return infinity == expected_infinity && affine == expected_affine; }
};

/// Counts loop points by scanning every canonical point of P^2(R).
CardinalityReport cardinality_report(const Loop<ZpeElem>& loop);

struct ClassificationOptions {
  std::uint32_t max_p = 17;
  std::uint64_t max_ring_size = 300;
  std::uint32_t min_e = 2;
  std::uint64_t sample_budget = 20000;
  std::uint64_t seed = 1;
};

struct ClassificationEntry {
  std::uint32_t p = 0;
  std::uint32_t e = 0;
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::uint64_t size = 0;
  std::vector<std::uint64_t> invariant_factors;
  /// How group-ness was decided.
  std::string method;
};

struct ClassificationResult {
  std::vector<ClassificationEntry> groups;
  /// Neither a non-associative triple nor a certificate was found.
  std::vector<ClassificationEntry> undecided;
  std::uint64_t loops_examined = 0;
};

/// Every valid (p, e, A, B) with 5 <= p <= max_p, e >= min_e, p^e <= max_ring_size
/// and A, B in [0, p). A loop is reported as a group only with an explicit
/// isomorphism certificate onto its invariant-factor decomposition.
ClassificationResult classify_group_loops(const ClassificationOptions& opts = {});

/// Group certificate for one loop, or nullopt if the loop is not a group.
std::optional<GroupCertificate<LoopPoint<ZpeElem>>> certify_loop_group(const Loop<ZpeElem>& loop);

std::string classification_csv(const ClassificationResult& result);

}  // namespace eloop
