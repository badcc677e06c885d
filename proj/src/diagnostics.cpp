#include "eloop/diagnostics.hpp"

#include <array>
#include <sstream>

namespace eloop {

namespace {

constexpr std::array<std::pair<Law, std::string_view>, 7> kLawNames{{
    {Law::Alternative, "alternative"},
    {Law::Jordan, "jordan"},
    {Law::Moufang, "moufang"},
    {Law::Diassociative, "diassociative"},
    {Law::PowerAssociative, "power-associative"},
    {Law::FullAssociative, "full-associative"},
    {Law::LatinSquare, "latin-square"},
}};

using Pt = LoopPoint<ZpeElem>;

/// Points of a loop grouped by fiber, with a key -> global index map. Fiber f
/// occupies indices [f s, (f + 1) s).
struct FiberIndex {
  std::vector<Pt> pts;
  std::unordered_map<std::uint64_t, std::size_t> index;
  std::size_t fibers = 0;
  std::size_t fiber_size = 0;

  explicit FiberIndex(const Loop<ZpeElem>& loop) : pts(loop.points()) {
    fiber_size = static_cast<std::size_t>(ipow(loop.config().ideal_size(), 2));
    fibers = pts.size() / fiber_size;
    for (std::size_t i = 0; i < pts.size(); ++i) index.emplace(pts[i].key(), i);
  }
  std::size_t of(const Pt& P) const { return index.at(P.key()); }
  const Pt& at(std::size_t fiber, std::size_t local) const { return pts[fiber * fiber_size + local]; }
};

/// Tuples (slot 0..n-1) whose slots are either in a common fiber ('F') or at
/// infinity ('I'), over every choice of the common fiber.
void drive_fiber_tuples(LawReport<ZpeElem>& rep, const FiberIndex& fx, std::string_view slots,
                        const std::function<bool(const std::vector<Pt>&)>& holds) {
  const std::uint64_t s = fx.fiber_size;
  std::uint64_t total = fx.fibers;
  bool fits = true;
  for (std::size_t i = 0; i < slots.size() && fits; ++i) {
    if (total > rep.budget / s) fits = false;
    total *= s;
  }
  fits = fits && total <= rep.budget;
  rep.exhaustive = fits;

  std::vector<Pt> tuple(slots.size());
  auto fill = [&](std::size_t fiber, const std::vector<std::uint64_t>& idx) {
    for (std::size_t i = 0; i < slots.size(); ++i) tuple[i] = fx.at(slots[i] == 'I' ? 0 : fiber, idx[i]);
  };
  auto test = [&]() {
    ++rep.checked;
    if (holds(tuple)) return true;
    rep.verdict = false;
    rep.counterexample = tuple;
    return false;
  };
  std::vector<std::uint64_t> idx(slots.size(), 0);
  if (fits) {
    for (std::size_t f = 0; f < fx.fibers; ++f) {
      const std::uint64_t per_fiber = total / fx.fibers;
      std::fill(idx.begin(), idx.end(), 0);
      for (std::uint64_t c = 0; c < per_fiber; ++c) {
        fill(f, idx);
        if (!test()) return;
        for (std::size_t i = slots.size(); i-- > 0;) {
          if (++idx[i] < s) break;
          idx[i] = 0;
        }
      }
    }
    return;
  }
  std::mt19937_64 rng(rep.seed);
  std::uniform_int_distribution<std::size_t> pick_fiber(0, fx.fibers - 1);
  std::uniform_int_distribution<std::uint64_t> pick(0, s - 1);
  for (std::uint64_t c = 0; c < rep.budget; ++c) {
    const std::size_t f = pick_fiber(rng);
    for (auto& i : idx) i = pick(rng);
    fill(f, idx);
    if (!test()) return;
  }
}

/// The six-point identity over a pair of fibers, evaluated through lookup
/// tables of loop sums. sum3[f][i][j][k] is the local index of
/// (P_i + P_j) - P_k in fiber f; cross[a][b][i][l] that of P_i + Q_l in the
/// fiber over pi(P) + pi(Q).
void heavy_exhaustive(LawReport<ZpeElem>& rep, const Loop<ZpeElem>& loop, const FiberIndex& fx) {
  const std::size_t s = fx.fiber_size, nf = fx.fibers;
  auto local = [&](const Pt& P) { return static_cast<std::uint16_t>(fx.of(P) % s); };
  auto fiber_of = [&](const Pt& P) { return fx.of(P) / s; };

  std::vector<std::uint16_t> sum3(nf * s * s * s);
  for (std::size_t f = 0; f < nf; ++f)
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) {
        const Pt pij = loop.add(fx.at(f, i), fx.at(f, j));
        for (std::size_t k = 0; k < s; ++k) sum3[((f * s + i) * s + j) * s + k] = local(loop.sub(pij, fx.at(f, k)));
      }
  std::vector<std::uint16_t> cross(nf * nf * s * s);
  std::vector<std::size_t> fiber_sum(nf * nf);
  for (std::size_t a = 0; a < nf; ++a)
    for (std::size_t b = 0; b < nf; ++b) {
      fiber_sum[a * nf + b] = fiber_of(loop.add(fx.at(a, 0), fx.at(b, 0)));
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t l = 0; l < s; ++l) cross[((a * nf + b) * s + i) * s + l] = local(loop.add(fx.at(a, i), fx.at(b, l)));
    }

  for (std::size_t a = 0; a < nf; ++a)
    for (std::size_t b = a; b < nf; ++b) {
      const std::size_t c = fiber_sum[a * nf + b];
      const std::uint16_t* C = &cross[(a * nf + b) * s * s];
      const std::uint16_t* S3a = &sum3[a * s * s * s];
      const std::uint16_t* S3b = &sum3[b * s * s * s];
      const std::uint16_t* S3c = &sum3[c * s * s * s];
      for (std::size_t i = 0; i < s; ++i)
        for (std::size_t j = 0; j < s; ++j)
          for (std::size_t k = 0; k < s; ++k) {
            const std::uint16_t* lhs_row = C + S3a[(i * s + j) * s + k] * s;
            const std::uint16_t* Ck = C + k * s;
            for (std::size_t l = 0; l < s; ++l) {
              const std::size_t u = C[i * s + l];
              for (std::size_t m = 0; m < s; ++m) {
                const std::size_t v = C[j * s + m];
                const std::uint16_t* rhs_row = S3c + (u * s + v) * s;
                const std::uint16_t* sb_row = S3b + (l * s + m) * s;
                for (std::size_t n = 0; n < s; ++n) {
                  if (lhs_row[sb_row[n]] != rhs_row[Ck[n]]) {
                    rep.checked += 1;
                    rep.verdict = false;
                    rep.counterexample = {fx.at(a, i), fx.at(a, j), fx.at(a, k),
                                          fx.at(b, l), fx.at(b, m), fx.at(b, n)};
                    return;
                  }
                }
                rep.checked += s;
              }
            }
          }
    }
}

void require_low_nilpotency(const Loop<ZpeElem>& loop) {
  if (loop.config().nilpotency() > 2) throw Error(ErrorKind::NilpotencyTooHigh, "identity needs m^2 = 0");
}

}  // namespace

std::string_view to_string(Law law) {
  for (const auto& [l, name] : kLawNames)
    if (l == law) return name;
  return "unknown";
}

Law law_from_string(std::string_view name) {
  for (const auto& [l, n] : kLawNames)
    if (n == name) return l;
  throw Error(ErrorKind::PreconditionUnmet, "unknown law '" + std::string(name) + "'");
}

const std::vector<Law>& all_laws() {
  static const std::vector<Law> laws = [] {
    std::vector<Law> out;
    for (const auto& entry : kLawNames) out.push_back(entry.first);
    return out;
  }();
  return laws;
}

const std::vector<std::string>& low_nilpotency_identities() {
  static const std::vector<std::string> names{"ass-with-inf", "three-points-over-the-same", "heavy",
                                              "ass-multiples", "inf-associativity"};
  return names;
}

LawReport<ZpeElem> low_nilpotency_report(const Loop<ZpeElem>& loop, std::string_view identity, std::uint64_t budget,
                                         std::uint64_t seed) {
  require_low_nilpotency(loop);
  LawReport<ZpeElem> rep;
  rep.law = std::string(identity);
  rep.seed = seed;
  rep.budget = budget;
  const FiberIndex fx(loop);
  auto plain = [&](const std::vector<Pt>& t) { return identity_holds(loop, rep.law, t, {}); };

  if (identity == "ass-with-inf") {
    drive_fiber_tuples(rep, fx, "FFII", plain);
  } else if (identity == "three-points-over-the-same") {
    drive_fiber_tuples(rep, fx, "FFF", plain);
  } else if (identity == "inf-associativity") {
    drive_fiber_tuples(rep, fx, "FII", plain);
  } else if (identity == "heavy") {
    const std::uint64_t s = fx.fiber_size, nf = fx.fibers;
    const std::uint64_t pairs = nf * (nf + 1) / 2;
    std::uint64_t total = pairs;
    bool fits = true;
    for (int i = 0; i < 6 && fits; ++i) {
      if (total > budget / s) fits = false;
      total *= s;
    }
    if (fits && total <= budget) {
      rep.exhaustive = true;
      heavy_exhaustive(rep, loop, fx);
    } else {
      std::mt19937_64 rng(seed);
      std::uniform_int_distribution<std::size_t> pick_fiber(0, nf - 1);
      std::uniform_int_distribution<std::size_t> pick(0, s - 1);
      for (std::uint64_t c = 0; c < budget && rep.verdict; ++c) {
        const std::size_t a = pick_fiber(rng), b = pick_fiber(rng);
        std::vector<Pt> t;
        for (int i = 0; i < 3; ++i) t.push_back(fx.at(a, pick(rng)));
        for (int i = 0; i < 3; ++i) t.push_back(fx.at(b, pick(rng)));
        ++rep.checked;
        if (!plain(t)) {
          rep.verdict = false;
          rep.counterexample = t;
        }
      }
    }
  } else if (identity == "ass-multiples") {
    // Multiples of every point, cut at its order: both sides of the identity
    // are periodic in m with period dividing the lcm of the four orders, so
    // m in [0, lcm) covers every integer.
    std::vector<std::vector<Pt>> multiples(fx.pts.size());
    for (std::size_t i = 0; i < fx.pts.size(); ++i) {
      auto& mult = multiples[i];
      mult.push_back(loop.identity());
      for (Pt Q = fx.pts[i]; !(Q == mult.front()); Q = loop.add(Q, fx.pts[i])) mult.push_back(Q);
    }
    drive_fiber_tuples(rep, fx, "FFF", [&](const std::vector<Pt>& t) {
      const Pt S = loop.sub(loop.add(t[0], t[1]), t[2]);
      const auto& m1 = multiples[fx.of(t[0])];
      const auto& m2 = multiples[fx.of(t[1])];
      const auto& m3 = multiples[fx.of(t[2])];
      const auto& ms = multiples[fx.of(S)];
      const std::uint64_t period = lcm_u64(lcm_u64(m1.size(), m2.size()), lcm_u64(m3.size(), ms.size()));
      for (std::uint64_t m = 0; m < period; ++m) {
        const Pt rhs = loop.sub(loop.add(m1[m % m1.size()], m2[m % m2.size()]), m3[m % m3.size()]);
        if (!(rhs == ms[m % ms.size()])) {
          rep.parameters = {static_cast<std::int64_t>(m)};
          return false;
        }
      }
      return true;
    });
  } else {
    throw Error(ErrorKind::PreconditionUnmet, "unknown identity '" + std::string(identity) + "'");
  }
  return rep;
}

std::vector<LawReport<ZpeElem>> low_nilpotency_suite(const Loop<ZpeElem>& loop, std::uint64_t budget,
                                                     std::uint64_t seed) {
  require_low_nilpotency(loop);
  std::vector<LawReport<ZpeElem>> out;
  for (const auto& name : low_nilpotency_identities()) out.push_back(low_nilpotency_report(loop, name, budget, seed));
  return out;
}

LawReport<ZpeElem> tech_congruence_report(const Loop<ZpeElem>& loop, std::string_view part, std::uint64_t samples,
                                          std::uint64_t seed) {
  const RingConfig& cfg = loop.config();
  if (cfg.kind != RingKind::IntegerQuotient) throw Error(ErrorKind::PreconditionUnmet, "needs Z/p^eZ");
  if (cfg.e < 2) throw Error(ErrorKind::PreconditionUnmet, "needs e >= 2");
  if (part != "tech-i" && part != "tech-ii" && part != "tech-iv")
    throw Error(ErrorKind::PreconditionUnmet, "unknown congruence '" + std::string(part) + "'");

  LawReport<ZpeElem> rep;
  rep.law = std::string(part);
  rep.seed = seed;
  rep.budget = samples;
  std::mt19937_64 rng(seed);
  auto in_power = [&](std::uint32_t k) {
    std::uniform_int_distribution<std::uint64_t> d(0, ipow(cfg.p, cfg.e - k) - 1);
    return loop.elem(static_cast<std::int64_t>(ipow(cfg.p, k) * d(rng)));
  };
  auto inf_point = [&](std::uint32_t k) { return loop.point(in_power(k), loop.elem(1), in_power(k)); };
  std::uniform_int_distribution<std::uint32_t> pick_k(1, cfg.e - 1);

  for (std::uint64_t c = 0; c < samples; ++c) {
    const std::uint32_t k = pick_k(rng);
    std::vector<Pt> t;
    std::vector<std::int64_t> params{static_cast<std::int64_t>(k)};
    if (part == "tech-i") {
      t = {inf_point(k), inf_point(k)};
    } else if (part == "tech-ii") {
      const std::uint32_t f = std::uniform_int_distribution<std::uint32_t>(k, cfg.e - 1)(rng);
      t = {inf_point(k), inf_point(k), inf_point(f)};
      params.push_back(f);
    } else {
      const std::int64_t unit_part = std::uniform_int_distribution<std::int64_t>(-500, 500)(rng);
      const std::int64_t scale = static_cast<std::int64_t>(ipow(cfg.p, std::uniform_int_distribution<std::uint32_t>(0, 2)(rng)));
      t = {inf_point(k)};
      params.push_back(unit_part * scale);
    }
    ++rep.checked;
    if (!identity_holds(loop, rep.law, t, params)) {
      rep.verdict = false;
      rep.counterexample = t;
      rep.parameters = params;
      break;
    }
  }
  return rep;
}

CardinalityReport cardinality_report(const Loop<ZpeElem>& loop) {
  const RingConfig& cfg = loop.config();
  CardinalityReport r;
  for (const auto& P : enumerate_projective_plane<ZpeElem>(cfg)) {
    if (!loop.contains(P)) continue;
    (P.is_affine() ? r.affine : r.infinity) += 1;
  }
  const std::uint64_t fiber = ipow(cfg.ideal_size(), 2);
  r.expected_infinity = fiber;
  r.expected_affine = (loop.base_order() - 1) * fiber;
  return r;
}

std::optional<GroupCertificate<Pt>> certify_loop_group(const Loop<ZpeElem>& loop) {
  const auto pts = loop.points();
  std::vector<std::uint64_t> orders;
  orders.reserve(pts.size());
  for (const auto& P : pts) orders.push_back(loop.order_of(P));
  const auto factors = invariant_factors_from_orders(orders);
  if (!factors) return std::nullopt;
  return certify_abelian_group(pts, orders, *factors, loop.identity(),
                               [&](const Pt& a, const Pt& b) { return loop.add(a, b); });
}

ClassificationResult classify_group_loops(const ClassificationOptions& opts) {
  ClassificationResult result;
  for (std::uint32_t p = 5; p <= opts.max_p; ++p) {
    if (!is_prime(p)) continue;
    for (std::uint32_t e = std::max<std::uint32_t>(opts.min_e, 1); ipow(p, e) <= opts.max_ring_size; ++e) {
      const RingConfig cfg = RingConfig::integer_quotient(p, e);
      for (std::int64_t a = 0; a < p; ++a)
        for (std::int64_t b = 0; b < p; ++b) {
          std::optional<Loop<ZpeElem>> loop;
          try {
            loop.emplace(Loop<ZpeElem>::create(cfg, a, b));
          } catch (const Error&) {
            continue;
          }
          ++result.loops_examined;
          ClassificationEntry entry{p, e, a, b, loop->size(), {}, {}};

          if (e >= 3 && !witness_A(*loop).associates) continue;
          if (e >= 2) {
            if (auto P = first_point_without_three_torsion(*loop); P && !witness_B(*loop, P).associates) continue;
          }
          if (auto cert = certify_loop_group(*loop)) {
            entry.invariant_factors = cert->factors;
            entry.method = "certificate";
            result.groups.push_back(entry);
            continue;
          }
          const auto sampled =
              associativity_on(*loop, loop->points(), opts.sample_budget, opts.seed + result.loops_examined);
          if (!sampled.verdict) continue;
          entry.method = "undecided";
          result.undecided.push_back(entry);
        }
    }
  }
  return result;
}

std::string classification_csv(const ClassificationResult& result) {
  std::ostringstream os;
  os << "p,e,A,B,size,invariant_factors,method\n";
  auto row = [&](const ClassificationEntry& c) {
    os << c.p << ',' << c.e << ',' << c.a << ',' << c.b << ',' << c.size << ',';
    for (std::size_t i = 0; i < c.invariant_factors.size(); ++i) os << (i ? "x" : "") << c.invariant_factors[i];
    os << ',' << c.method << '\n';
  };
  for (const auto& c : result.groups) row(c);
  for (const auto& c : result.undecided) row(c);
  return os.str();
}

}  // namespace eloop
