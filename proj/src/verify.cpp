#include "eloop/verify.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "eloop/layers.hpp"
#include "eloop/structure.hpp"

namespace eloop {

namespace {

using Pt = LoopPoint<ZpeElem>;
using Lp = Loop<ZpeElem>;

CheckResult named(std::string suite, std::string check) {
  CheckResult c;
  c.suite = std::move(suite);
  c.check = std::move(check);
  return c;
}

CheckResult from_report(std::string suite, std::string check, const LawReport<ZpeElem>& r) {
  CheckResult c;
  c.suite = std::move(suite);
  c.check = std::move(check);
  c.passed = r.verdict;
  c.exhaustive = r.exhaustive;
  c.checked = r.checked;
  c.counterexample = r.counterexample;
  c.parameters = r.parameters;
  return c;
}

CheckResult not_applicable(std::string suite, std::string check, std::string why) {
  CheckResult c;
  c.suite = std::move(suite);
  c.check = std::move(check);
  c.applicable = false;
  c.detail = std::move(why);
  return c;
}

/// Runs `holds` on every point, or on `budget` sampled points.
template <class Holds>
CheckResult per_point(std::string suite, std::string check, const std::vector<Pt>& pts, std::uint64_t budget,
                      std::uint64_t seed, Holds holds) {
  CheckResult c;
  c.suite = std::move(suite);
  c.check = std::move(check);
  c.exhaustive = pts.size() <= budget;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, pts.size() - 1);
  const std::uint64_t n = c.exhaustive ? pts.size() : budget;
  for (std::uint64_t i = 0; i < n; ++i) {
    const Pt& P = c.exhaustive ? pts[i] : pts[pick(rng)];
    ++c.checked;
    if (!holds(P)) {
      c.passed = false;
      c.counterexample = {P};
      break;
    }
  }
  return c;
}

std::vector<CheckResult> axioms(const Lp& L, std::uint64_t budget, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const auto pts = L.points();
  const Pt O = L.identity();
  out.push_back(per_point("axioms", "identity", pts, budget, seed,
                          [&](const Pt& P) { return L.add(O, P) == P && L.add(P, O) == P; }));
  out.push_back(per_point("axioms", "inverse", pts, budget, seed,
                          [&](const Pt& P) { return L.add(P, L.neg(P)) == O && L.contains(L.neg(P)); }));
  out.push_back(from_report("axioms", "latin-square", law_suite(L, Law::LatinSquare, budget, seed)));

  LawReport<ZpeElem> weak;
  weak.law = "latin-square";
  weak.seed = seed;
  weak.budget = budget;
  detail::drive_tuples(weak, pts, 2, [&](const std::vector<Pt>& t) { return identity_holds(L, "latin-square", t, {}); });
  out.push_back(from_report("axioms", "weak-associativity", weak));

  LawReport<ZpeElem> comm;
  comm.law = "commutative";
  comm.seed = seed;
  comm.budget = budget;
  detail::drive_tuples(comm, pts, 2, [&](const std::vector<Pt>& t) { return L.add(t[0], t[1]) == L.add(t[1], t[0]); });
  out.push_back(from_report("axioms", "commutative", comm));
  return out;
}

std::vector<CheckResult> power(const Lp& L, std::uint64_t budget, std::uint64_t seed) {
  std::vector<CheckResult> out;
  out.push_back(from_report("power", "power-associative", law_suite(L, Law::PowerAssociative, budget, seed)));
  const auto pts = L.points();
  const std::uint64_t per = 2 * kPowerRange + 1;
  out.push_back(per_point("power", "double-and-add", pts, std::max<std::uint64_t>(budget / per, 1), seed,
                          [&](const Pt& P) {
                            Pt pos = L.identity(), neg = L.identity();
                            const Pt mP = L.neg(P);
                            for (std::int64_t n = 0; n <= kPowerRange; ++n) {
                              if (!(L.mul(n, P) == pos) || !(L.mul(-n, P) == neg)) return false;
                              pos = L.add(pos, P);
                              neg = L.add(neg, mP);
                            }
                            return true;
                          }));
  return out;
}

std::vector<CheckResult> hessian(const Lp& L, std::uint64_t budget, std::uint64_t seed) {
  const auto& E = L.residue_curve();
  return {per_point("hessian", "three-torsion-iff-hessian-in-m", L.points(), budget, seed, [&](const Pt& P) {
    return E.mul(3, L.project(P)).infinity == !L.eval_H(P).is_unit();
  })};
}

std::vector<CheckResult> strat(const Lp& L, std::uint64_t budget, std::uint64_t seed) {
  const auto layers = all_layers(L);
  auto pts = L.affine_points();
  CheckResult c = per_point("strat", "unique-layer", pts, budget / std::max<std::size_t>(layers.size(), 1), seed,
                            [&](const Pt& P) {
                              if (!L.eval_H(P).is_unit()) return true;
                              const ZpeElem t = stratify(L, P);
                              std::size_t hits = 0;
                              for (const auto& layer : layers) hits += layer.contains(P) ? 1 : 0;
                              return hits == 1 && Layer<ZpeElem>(L, t).contains(P);
                            });
  if (L.residue_curve().is_three_torsion() || L.three_divides_base_order()) {
    std::uint64_t skipped = 0;
    for (const auto& P : pts) skipped += L.eval_H(P).is_unit() ? 0 : 1;
    c.detail = std::to_string(skipped) + " affine points over 3-torsion are outside every stratum";
  }
  return {c};
}

std::vector<CheckResult> layers_suite(const Lp& L, std::uint64_t budget, std::uint64_t seed) {
  std::vector<CheckResult> out;
  const RingConfig& cfg = L.config();
  const auto layers = all_layers(L);
  const std::uint64_t share = std::max<std::uint64_t>(budget / layers.size(), 1);
  const std::uint64_t expected_order = cfg.ideal_size();

  CheckResult closed = named("layers", "closed-and-associative");
  CheckResult gen = named("layers", "infinity-generator");
  CheckResult val = named("layers", "infinity-valuation");
  gen.exhaustive = val.exhaustive = true;
  closed.exhaustive = true;
  std::set<std::uint64_t> meet;
  bool first = true;
  for (const auto& layer : layers) {
    const auto pts = layer.points();
    LawReport<ZpeElem> rep;
    rep.law = "layer-closure";
    rep.seed = seed;
    rep.budget = share;
    detail::drive_tuples(rep, pts, 2, [&](const std::vector<Pt>& t) { return layer.contains(L.add(t[0], t[1])); });
    closed.checked += rep.checked;
    closed.exhaustive = closed.exhaustive && rep.exhaustive;
    if (!rep.verdict && closed.passed) {
      closed.passed = false;
      closed.counterexample = rep.counterexample;
      closed.parameters = {static_cast<std::int64_t>(layer.t().value())};
    }
    const auto assoc = associativity_on(L, pts, share, seed);
    closed.checked += assoc.checked;
    closed.exhaustive = closed.exhaustive && assoc.exhaustive;
    if (!assoc.verdict && closed.passed) {
      closed.passed = false;
      closed.counterexample = assoc.counterexample;
      closed.parameters = {static_cast<std::int64_t>(layer.t().value())};
    }

    const auto inf = layer.infinity_points();
    const Pt g = layer_infinity_generator(layer);
    std::unordered_set<std::uint64_t> span, inf_keys;
    for (Pt Q = L.identity();; ) {
      span.insert(Q.key());
      Q = L.add(Q, g);
      if (Q == L.identity()) break;
    }
    for (const auto& P : inf) inf_keys.insert(P.key());
    ++gen.checked;
    if (gen.passed && (span != inf_keys || span.size() != expected_order)) {
      gen.passed = false;
      gen.counterexample = {g};
      gen.parameters = {static_cast<std::int64_t>(layer.t().value())};
    }

    std::set<std::uint64_t> here;
    for (const auto& P : inf) {
      ++val.checked;
      here.insert(P.key());
      const bool origin = P.x().is_zero() && P.z().is_zero();
      if (!origin && !(P.x().valuation() < P.z().valuation()) && val.passed) {
        val.passed = false;
        val.counterexample = {P};
      }
    }
    if (first) {
      meet = here;
      first = false;
    } else {
      std::set<std::uint64_t> next;
      std::set_intersection(meet.begin(), meet.end(), here.begin(), here.end(), std::inserter(next, next.begin()));
      meet = next;
    }
  }
  out.push_back(closed);
  out.push_back(gen);
  out.push_back(val);

  if (cfg.e >= 2) {
    std::set<std::uint64_t> expected;
    for (const auto& x : ideal_power_elements<ZpeElem>(cfg, cfg.e - 1))
      expected.insert(L.point(x, L.elem(1), L.elem(0)).key());
    CheckResult inter = named("layers", "infinity-intersection");
    inter.exhaustive = true;
    inter.checked = layers.size();
    inter.passed = meet == expected;
    out.push_back(inter);
  } else {
    out.push_back(not_applicable("layers", "infinity-intersection", "needs e >= 2"));
  }
  return out;
}

std::vector<CheckResult> infinity_suite(const Lp& L, std::uint64_t budget, std::uint64_t) {
  std::vector<CheckResult> out;
  const RingConfig& cfg = L.config();
  const std::uint64_t n = cfg.ideal_size();
  const auto [g1, g2] = infinity_generators(L);

  CheckResult orders = named("infinity", "generator-orders");
  orders.exhaustive = true;
  orders.checked = 2;
  orders.passed = L.order_of(g1) == n && L.order_of(g2) == n;
  out.push_back(orders);

  CheckResult disjoint = named("infinity", "cyclic-parts-meet-in-identity");
  disjoint.exhaustive = true;
  std::unordered_set<std::uint64_t> first;
  for (Pt Q = L.identity(); first.insert(Q.key()).second; Q = L.add(Q, g1)) {}
  for (Pt Q = g2; !(Q == L.identity()); Q = L.add(Q, g2)) {
    ++disjoint.checked;
    if (first.count(Q.key()) != 0) {
      disjoint.passed = false;
      disjoint.counterexample = {Q};
      break;
    }
  }
  out.push_back(disjoint);

  if (n * n <= budget) {
    CheckResult bij = named("infinity", "decomposition-bijection");
    bij.exhaustive = true;
    std::unordered_set<std::uint64_t> seen;
    for (const auto& P : L.infinity_points()) {
      ++bij.checked;
      const auto d = infinity_decompose(L, P);
      if (d.alpha >= n || d.beta >= n || !seen.insert(d.alpha * n + d.beta).second || !(infinity_compose(L, d) == P)) {
        bij.passed = false;
        bij.counterexample = {P};
        break;
      }
    }
    bij.passed = bij.passed && seen.size() == n * n;
    out.push_back(bij);
  } else {
    out.push_back(not_applicable("infinity", "decomposition-bijection", "|L^inf| exceeds the budget"));
  }

  CheckResult forbidden = named("infinity", "forbidden-locus");
  forbidden.exhaustive = true;
  forbidden.checked = n;
  forbidden.passed = forbidden_locus_check(L);
  out.push_back(forbidden);
  return out;
}

CheckResult witness_check(const Lp& L, std::string name, const Witness<ZpeElem>& w) {
  CheckResult c = named("witnesses", std::move(name));
  c.exhaustive = true;
  c.checked = 1;
  c.passed = !w.associates;
  c.counterexample = w.triple;
  c.detail = "rank " + std::to_string(matrix_rank(assoc_matrix(L, w.triple)));
  return c;
}

std::vector<CheckResult> witnesses(const Lp& L, std::uint64_t, std::uint64_t) {
  std::vector<CheckResult> out;
  const std::uint32_t e = L.config().e;
  if (e >= 3)
    out.push_back(witness_check(L, "witness-A", witness_A(L)));
  else
    out.push_back(not_applicable("witnesses", "witness-A", "needs e >= 3"));
  if (e >= 2 && first_point_without_three_torsion(L))
    out.push_back(witness_check(L, "witness-B", witness_B(L)));
  else
    out.push_back(not_applicable("witnesses", "witness-B", "needs e >= 2 and a base point with 3P != O"));
  if (e >= 6)
    out.push_back(witness_check(L, "witness-inf", witness_inf(L)));
  else
    out.push_back(not_applicable("witnesses", "witness-inf", "needs e >= 6"));
  return out;
}

std::vector<CheckResult> lownil(const Lp& L, std::uint64_t budget, std::uint64_t seed) {
  std::vector<CheckResult> out;
  if (L.config().nilpotency() > 2) {
    for (const auto& name : low_nilpotency_identities()) out.push_back(not_applicable("lownil", name, "needs e <= 2"));
    return out;
  }
  for (const auto& r : low_nilpotency_suite(L, budget, seed)) out.push_back(from_report("lownil", r.law, r));
  return out;
}

std::vector<CheckResult> torsion(const Lp& L, std::uint64_t, std::uint64_t) {
  if (L.config().nilpotency() > 2) return {not_applicable("torsion", "fibers-and-lines", "needs e <= 2")};
  const std::uint64_t p = L.config().p;
  const auto& E = L.residue_curve();
  CheckResult c = named("torsion", "fibers-and-lines");
  c.exhaustive = true;
  for (const auto& r : E.points()) {
    const std::uint64_t q = E.order_of(r);
    if (q % 3 == 0 || q % p == 0) continue;
    std::optional<Pt> P;
    for (const auto& Q : L.fiber(r))
      if (L.mul(static_cast<std::int64_t>(q), Q) == L.identity()) {
        P = Q;
        break;
      }
    if (!P) {
      c.passed = false;
      c.detail = "no point of order dividing " + std::to_string(q) + " over a base point";
      break;
    }
    ++c.checked;
    const auto fiber = torsion_fiber(L, static_cast<std::int64_t>(q), *P);
    const auto D = difference_group(L, static_cast<std::int64_t>(q), *P);
    const std::uint64_t expected = r.infinity ? 1 : p;
    bool ok = D.subgroup_of_infinity && D.translates_onto_fiber && fiber.size() == expected &&
              D.elements.size() == expected;
    const auto line = torsion_line(L, *P, difference_group_generator(L, D));
    for (const auto& Q : fiber) ok = ok && line.line.contains(Q);
    if (line.reduced) {
      std::size_t meet = 0;
      for (const auto& Q : L.fiber(r)) meet += line.reduced->contains(Q) ? 1 : 0;
      for (const auto& Q : fiber) ok = ok && line.reduced->contains(Q);
      ok = ok && meet == fiber.size();
    }
    if (!ok) {
      c.passed = false;
      c.counterexample = {*P};
      c.parameters = {static_cast<std::int64_t>(q)};
      break;
    }
  }
  return {c};
}

std::vector<CheckResult> tech(const Lp& L, std::uint64_t budget, std::uint64_t seed) {
  std::vector<CheckResult> out;
  for (const char* part : {"tech-i", "tech-ii", "tech-iv"}) {
    if (L.config().e < 2) {
      out.push_back(not_applicable("tech", part, "needs e >= 2"));
      continue;
    }
    out.push_back(from_report("tech", part, tech_congruence_report(L, part, std::min<std::uint64_t>(budget, 10000), seed)));
  }
  return out;
}

using SuiteFn = std::vector<CheckResult> (*)(const Lp&, std::uint64_t, std::uint64_t);

const std::map<std::string, SuiteFn, std::less<>>& registry() {
  static const std::map<std::string, SuiteFn, std::less<>> m{
      {"axioms", axioms},       {"power", power},         {"hessian", hessian},       {"strat", strat},
      {"layers", layers_suite}, {"infinity", infinity_suite}, {"witnesses", witnesses}, {"lownil", lownil},
      {"torsion", torsion},     {"tech", tech},
  };
  return m;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"axioms", "power",     "hessian", "strat",   "layers",
                                              "infinity", "witnesses", "lownil", "torsion", "tech"};
  return names;
}

std::vector<CheckResult> run_suite(const Loop<ZpeElem>& loop, std::string_view suite, std::uint64_t budget,
                                   std::uint64_t seed) {
  if (loop.config().kind != RingKind::IntegerQuotient)
    throw Error(ErrorKind::PreconditionUnmet, "verification suites run over Z/p^eZ");
  if (suite == "all") {
    std::vector<CheckResult> out;
    for (const auto& name : suite_names()) {
      auto part = registry().find(name)->second(loop, budget, seed);
      out.insert(out.end(), part.begin(), part.end());
    }
    return out;
  }
  const auto it = registry().find(suite);
  if (it == registry().end()) throw Error(ErrorKind::PreconditionUnmet, "unknown suite '" + std::string(suite) + "'");
  return it->second(loop, budget, seed);
}

}  // namespace eloop
