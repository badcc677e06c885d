#pragma once

// JSON encodings. Ring elements are written as their canonical index
// (the residue in [0, p^e) for Z/p^eZ), points as [X, Y, Z].

#include <string>

#include "eloop/diagnostics.hpp"
#include "eloop/layers.hpp"
#include "eloop/structure.hpp"
#include "json.hpp"

namespace eloop {

using json = nlohmann::json;

inline json to_json(const RingConfig& cfg) {
  return json{{"kind", std::string(to_string(cfg.kind))}, {"p", cfg.p}, {"e", cfg.e}};
}

inline RingConfig ring_from_json(const json& j) {
  const auto kind = ring_kind_from_string(j.at("kind").get<std::string>());
  const auto p = j.at("p").get<std::uint32_t>();
  const auto e = j.at("e").get<std::uint32_t>();
  return kind == RingKind::IntegerQuotient ? RingConfig::integer_quotient(p, e) : RingConfig::truncated_polynomial(p, e);
}

template <LocalRingElement R>
json to_json(const ProjPoint<R>& P) {
  return json::array({P.x().index(), P.y().index(), P.z().index()});
}

/// Normalizes on ingest, so any primitive representative is accepted.
template <LocalRingElement R>
ProjPoint<R> point_from_json(const RingConfig& cfg, const json& j) {
  if (!j.is_array() || j.size() != 3) throw Error(ErrorKind::PreconditionUnmet, "a point is a 3-element array");
  auto coord = [&](std::size_t i) {
    const auto v = j.at(i).get<std::uint64_t>();
    if (v >= cfg.size()) throw Error(ErrorKind::PreconditionUnmet, "coordinate out of range");
    return R::from_index(cfg, v);
  };
  return normalize(coord(0), coord(1), coord(2));
}

template <LocalRingElement R>
json to_json(const LawReport<R>& r) {
  json pts = json::array();
  for (const auto& P : r.counterexample) pts.push_back(to_json(P));
  return json{{"law", r.law},         {"verdict", r.verdict}, {"counterexample", pts},
              {"parameters", r.parameters}, {"checked", r.checked}, {"exhaustive", r.exhaustive},
              {"seed", r.seed},       {"budget", r.budget}};
}

template <LocalRingElement R>
LawReport<R> law_report_from_json(const RingConfig& cfg, const json& j) {
  LawReport<R> r;
  r.law = j.at("law").get<std::string>();
  r.verdict = j.at("verdict").get<bool>();
  for (const auto& p : j.at("counterexample")) r.counterexample.push_back(point_from_json<R>(cfg, p));
  r.parameters = j.at("parameters").get<std::vector<std::int64_t>>();
  r.checked = j.at("checked").get<std::uint64_t>();
  r.exhaustive = j.at("exhaustive").get<bool>();
  r.seed = j.at("seed").get<std::uint64_t>();
  r.budget = j.at("budget").get<std::uint64_t>();
  return r;
}

inline json to_json(const InfDecomposition& d) { return json{{"alpha", d.alpha}, {"beta", d.beta}}; }

inline InfDecomposition decomposition_from_json(const json& j) {
  return InfDecomposition{j.at("alpha").get<std::uint64_t>(), j.at("beta").get<std::uint64_t>()};
}

inline json to_json(const LayerSummary& s) {
  return json{{"t", s.t},
              {"Z_t", s.z_t},
              {"cardinality", s.cardinality},
              {"infinity_order", s.infinity_order},
              {"group_structure", s.group_structure}};
}

inline LayerSummary layer_summary_from_json(const json& j) {
  LayerSummary s;
  s.t = j.at("t").get<std::uint64_t>();
  s.z_t = j.at("Z_t").get<std::uint64_t>();
  s.cardinality = j.at("cardinality").get<std::uint64_t>();
  s.infinity_order = j.at("infinity_order").get<std::uint64_t>();
  s.group_structure = j.at("group_structure").get<std::vector<std::uint64_t>>();
  return s;
}

template <LocalRingElement R>
json to_json(const LineCoefficients<R>& l) {
  return json::array({l.a.index(), l.b.index(), l.c.index()});
}

template <LocalRingElement R>
json to_json(const Witness<R>& w) {
  json triple = json::array();
  for (const auto& P : w.triple) triple.push_back(to_json(P));
  return json{{"triple", triple}, {"left", to_json(w.left)}, {"right", to_json(w.right)}, {"associates", w.associates}};
}

}  // namespace eloop
