#include "eloop/structure.hpp"

namespace eloop {

namespace {

void require_integer_quotient(const Loop<ZpeElem>& loop) {
  if (loop.config().kind != RingKind::IntegerQuotient)
    throw Error(ErrorKind::PreconditionUnmet, "needs an integer-quotient ring");
}

}  // namespace

std::pair<LoopPoint<ZpeElem>, LoopPoint<ZpeElem>> infinity_generators(const Loop<ZpeElem>& loop) {
  require_integer_quotient(loop);
  const std::int64_t p = loop.config().p;
  return {loop.point(p, 1, 0), loop.point(0, 1, p)};
}

LoopPoint<ZpeElem> infinity_compose(const Loop<ZpeElem>& loop, const InfDecomposition& d) {
  const auto [g1, g2] = infinity_generators(loop);
  return loop.add(loop.mul(static_cast<std::int64_t>(d.alpha), g1), loop.mul(static_cast<std::int64_t>(d.beta), g2));
}

InfDecomposition infinity_decompose(const Loop<ZpeElem>& loop, const LoopPoint<ZpeElem>& P) {
  require_integer_quotient(loop);
  if (!loop.contains(P) || !loop.project(P).infinity)
    throw Error(ErrorKind::PreconditionUnmet, "point does not lie over the identity");
  const RingConfig& cfg = loop.config();
  const std::uint64_t p = cfg.p;
  const std::uint64_t modulus = cfg.size();

  // With (alpha, beta) known mod p^{k-1}, the next digits are the
  // coefficients of p^k in X(P) - X(Q) and Z(P) - Z(Q), Q the partial sum.
  InfDecomposition d;
  std::uint64_t weight = 1;  // p^{k-1}
  std::uint64_t pk = p;      // p^k
  for (std::uint32_t k = 1; k < cfg.e; ++k) {
    const auto Q = infinity_compose(loop, d);
    const std::uint64_t dx = (P.x().value() + modulus - Q.x().value()) % modulus;
    const std::uint64_t dz = (P.z().value() + modulus - Q.z().value()) % modulus;
    if (dx % pk != 0 || dz % pk != 0) break;
    d.alpha += (dx / pk % p) * weight;
    d.beta += (dz / pk % p) * weight;
    weight *= p;
    pk *= p;
  }
  if (infinity_compose(loop, d) == P) return d;
  if (auto exhaustive = infinity_decompose_exhaustive(loop, P)) return *exhaustive;
  throw Error(ErrorKind::PreconditionUnmet, "no decomposition found");
}

std::optional<InfDecomposition> infinity_decompose_exhaustive(const Loop<ZpeElem>& loop,
                                                              const LoopPoint<ZpeElem>& P) {
  require_integer_quotient(loop);
  const std::uint64_t n = loop.config().ideal_size();
  const auto [g1, g2] = infinity_generators(loop);
  auto a_mult = loop.identity();
  for (std::uint64_t a = 0; a < n; ++a, a_mult = loop.add(a_mult, g1)) {
    auto b_mult = loop.identity();
    for (std::uint64_t b = 0; b < n; ++b, b_mult = loop.add(b_mult, g2))
      if (loop.add(a_mult, b_mult) == P) return InfDecomposition{a, b};
  }
  return std::nullopt;
}

bool forbidden_locus_check(const Loop<ZpeElem>& loop) {
  require_integer_quotient(loop);
  const auto g = infinity_generators(loop).second;
  const auto layers = all_layers(loop);
  const auto O = loop.identity();
  for (auto Q = g; !(Q == O); Q = loop.add(Q, g))
    for (const auto& layer : layers)
      if (layer.contains(Q)) return false;
  return true;
}

}  // namespace eloop
