#include "eloop/layers.hpp"

#include "eloop/abelian.hpp"

namespace eloop {

std::array<ZpeElem, 4> layer_infinity_polynomial(const Layer<ZpeElem>& layer) {
  const Loop<ZpeElem>& L = layer.loop();
  const RingConfig& cfg = L.config();
  if (cfg.kind != RingKind::IntegerQuotient)
    throw Error(ErrorKind::PreconditionUnmet, "layer generator needs an integer-quotient ring");
  const ZpeElem p = ZpeElem::uniformizer(cfg);
  const ZpeElem& t = layer.t();
  const ZpeElem &A = L.a(), &B = L.b();
  // F(p,1,z)   = p^3 + A p z^2 + B z^3 - z
  // H_F(p,1,z) = -8 (3A p^2 z + 3p + 9B p z^2 - A^2 z^3)
  return {p * p * p + L.elem(24) * t * p,
          L.elem(-1) + L.elem(24) * t * A * p * p,
          A * p + L.elem(72) * t * B * p,
          B - L.elem(8) * t * A * A};
}

LoopPoint<ZpeElem> layer_infinity_generator(const Layer<ZpeElem>& layer) {
  const auto c = layer_infinity_polynomial(layer);
  const Loop<ZpeElem>& L = layer.loop();
  const ZpeElem two = L.elem(2), three = L.elem(3);
  auto g = [&](const ZpeElem& z) { return c[0] + z * (c[1] + z * (c[2] + z * c[3])); };
  auto dg = [&](const ZpeElem& z) { return c[1] + z * (two * c[2] + z * three * c[3]); };

  // Newton doubles the p-adic precision each step.
  ZpeElem z = L.elem(0);
  for (std::uint32_t step = 0; step <= 2 * L.config().e + 2 && !g(z).is_zero(); ++step) z = z - g(z) * dg(z).inverse();
  if (!g(z).is_zero()) throw Error(ErrorKind::PreconditionUnmet, "Hensel iteration failed to converge");

  const ZpeElem p = ZpeElem::uniformizer(L.config());
  LoopPoint<ZpeElem> gen = normalize(p, L.elem(1), z);
  if (!layer.contains(gen)) throw Error(ErrorKind::PreconditionUnmet, "lifted generator misses the layer");
  return gen;
}

LayerSummary summarize_layer(const Layer<ZpeElem>& layer) {
  const Loop<ZpeElem>& L = layer.loop();
  const auto gen = layer_infinity_generator(layer);
  LayerSummary s;
  s.t = layer.t().value();
  s.z_t = gen.z().value();
  s.infinity_order = L.order_of(gen);
  std::vector<std::uint64_t> orders;
  for (const auto& P : layer.points()) orders.push_back(L.order_of(P));
  s.cardinality = orders.size();
  if (auto f = invariant_factors_from_orders(orders)) s.group_structure = *f;
  return s;
}

}  // namespace eloop
