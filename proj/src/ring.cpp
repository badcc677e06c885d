#include "eloop/ring.hpp"

#include <limits>

namespace eloop {

std::string_view to_string(RingKind kind) {
  return kind == RingKind::IntegerQuotient ? "integer-quotient" : "truncated-polynomial";
}

RingKind ring_kind_from_string(std::string_view name) {
  if (name == "integer-quotient") return RingKind::IntegerQuotient;
  if (name == "truncated-polynomial") return RingKind::TruncatedPolynomial;
  throw Error(ErrorKind::InvalidConfig, "unknown ring kind '" + std::string(name) + "'");
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::uint64_t ipow(std::uint64_t base, std::uint32_t exp) {
  std::uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

RingConfig RingConfig::integer_quotient(std::uint32_t p, std::uint32_t e) {
  RingConfig c{RingKind::IntegerQuotient, p, e};
  c.validate();
  return c;
}

RingConfig RingConfig::truncated_polynomial(std::uint32_t p, std::uint32_t e) {
  RingConfig c{RingKind::TruncatedPolynomial, p, e};
  c.validate();
  return c;
}

void RingConfig::validate() const {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidConfig, "p = " + std::to_string(p) + " is not prime");
  if (p < 5) throw Error(ErrorKind::InvalidConfig, "p must be at least 5 so that 6 is a unit");
  if (e < 1) throw Error(ErrorKind::InvalidConfig, "e must be positive");
  if (kind == RingKind::TruncatedPolynomial && e > TruncPolyElem::kMaxExponent)
    throw Error(ErrorKind::InvalidConfig, "truncation exponent too large");
  std::uint64_t n = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    n *= p;
    if (n > kMaxRingSize) throw Error(ErrorKind::InvalidConfig, "ring too large (p^e > 2^21)");
  }
}

std::uint64_t RingConfig::size() const { return ipow(p, e); }
std::uint64_t RingConfig::ideal_size() const { return ipow(p, e - 1); }

std::string to_string(Valuation v) { return v.is_infinite() ? "inf" : std::to_string(v.value()); }

// ---------------------------------------------------------------------------

ZpeElem ZpeElem::from_int(const RingConfig& cfg, std::int64_t n) {
  if (cfg.kind != RingKind::IntegerQuotient) throw Error(ErrorKind::ConfigMismatch, "not an integer-quotient ring");
  ZpeElem r;
  r.p_ = cfg.p;
  r.e_ = cfg.e;
  r.modulus_ = cfg.size();
  const auto m = static_cast<std::int64_t>(r.modulus_);
  std::int64_t v = n % m;
  if (v < 0) v += m;
  r.value_ = static_cast<std::uint64_t>(v);
  return r;
}

Valuation ZpeElem::valuation() const {
  if (value_ == 0) return Valuation::infinity();
  int k = 0;
  std::uint64_t v = value_;
  while (v % p_ == 0) {
    v /= p_;
    ++k;
  }
  return Valuation(k);
}

ZpeElem ZpeElem::inverse() const {
  if (!is_unit()) throw Error(ErrorKind::NonUnit, std::to_string(value_) + " lies in the maximal ideal");
  std::int64_t r0 = static_cast<std::int64_t>(modulus_), r1 = static_cast<std::int64_t>(value_);
  std::int64_t s0 = 0, s1 = 1;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  const auto m = static_cast<std::int64_t>(modulus_);
  std::int64_t inv = s0 % m;
  if (inv < 0) inv += m;
  return with_value(static_cast<std::uint64_t>(inv));
}

// ---------------------------------------------------------------------------

namespace {

std::uint32_t inverse_mod_prime(std::uint32_t a, std::uint32_t p) {
  // Fermat: a^(p-2).
  std::uint64_t r = 1, b = a % p;
  for (std::uint32_t k = p - 2; k > 0; k >>= 1) {
    if (k & 1u) r = r * b % p;
    b = b * b % p;
  }
  return static_cast<std::uint32_t>(r);
}

}  // namespace

TruncPolyElem TruncPolyElem::from_int(const RingConfig& cfg, std::int64_t n) {
  if (cfg.kind != RingKind::TruncatedPolynomial)
    throw Error(ErrorKind::ConfigMismatch, "not a truncated-polynomial ring");
  TruncPolyElem r;
  r.p_ = cfg.p;
  r.e_ = cfg.e;
  const auto p = static_cast<std::int64_t>(cfg.p);
  std::int64_t v = n % p;
  if (v < 0) v += p;
  r.c_[0] = static_cast<std::uint32_t>(v);
  return r;
}

TruncPolyElem TruncPolyElem::from_index(const RingConfig& cfg, std::uint64_t index) {
  TruncPolyElem r = from_int(cfg, 0);
  for (std::uint32_t i = 0; i < cfg.e; ++i) {
    r.c_[i] = static_cast<std::uint32_t>(index % cfg.p);
    index /= cfg.p;
  }
  return r;
}

TruncPolyElem TruncPolyElem::from_coefficients(const RingConfig& cfg, const std::vector<std::int64_t>& coeffs) {
  TruncPolyElem r = from_int(cfg, 0);
  const auto p = static_cast<std::int64_t>(cfg.p);
  for (std::size_t i = 0; i < coeffs.size() && i < cfg.e; ++i) {
    std::int64_t v = coeffs[i] % p;
    if (v < 0) v += p;
    r.c_[i] = static_cast<std::uint32_t>(v);
  }
  return r;
}

TruncPolyElem TruncPolyElem::uniformizer(const RingConfig& cfg) {
  TruncPolyElem r = from_int(cfg, 0);
  if (cfg.e > 1) r.c_[1] = 1;
  return r;
}

std::uint64_t TruncPolyElem::index() const {
  std::uint64_t idx = 0;
  for (std::uint32_t i = e_; i-- > 0;) idx = idx * p_ + c_[i];
  return idx;
}

TruncPolyElem operator+(const TruncPolyElem& a, const TruncPolyElem& b) {
  a.check_same(b);
  TruncPolyElem r = a;
  for (std::uint32_t i = 0; i < a.e_; ++i) {
    std::uint32_t s = a.c_[i] + b.c_[i];
    r.c_[i] = s >= a.p_ ? s - a.p_ : s;
  }
  return r;
}

TruncPolyElem operator-(const TruncPolyElem& a, const TruncPolyElem& b) {
  a.check_same(b);
  TruncPolyElem r = a;
  for (std::uint32_t i = 0; i < a.e_; ++i) r.c_[i] = a.c_[i] >= b.c_[i] ? a.c_[i] - b.c_[i] : a.c_[i] + a.p_ - b.c_[i];
  return r;
}

TruncPolyElem operator*(const TruncPolyElem& a, const TruncPolyElem& b) {
  a.check_same(b);
  TruncPolyElem r = a;
  for (std::uint32_t k = 0; k < a.e_; ++k) {
    std::uint64_t s = 0;
    for (std::uint32_t i = 0; i <= k; ++i) s += std::uint64_t{a.c_[i]} * b.c_[k - i];
    r.c_[k] = static_cast<std::uint32_t>(s % a.p_);
  }
  return r;
}

TruncPolyElem TruncPolyElem::operator-() const {
  TruncPolyElem r = *this;
  for (std::uint32_t i = 0; i < e_; ++i) r.c_[i] = c_[i] == 0 ? 0 : p_ - c_[i];
  return r;
}

bool TruncPolyElem::is_zero() const {
  for (std::uint32_t i = 0; i < e_; ++i)
    if (c_[i] != 0) return false;
  return true;
}

Valuation TruncPolyElem::valuation() const {
  for (std::uint32_t i = 0; i < e_; ++i)
    if (c_[i] != 0) return Valuation(static_cast<int>(i));
  return Valuation::infinity();
}

TruncPolyElem TruncPolyElem::inverse() const {
  if (!is_unit()) throw Error(ErrorKind::NonUnit, "element lies in the maximal ideal");
  // b_0 = c_0^{-1}, b_k = -c_0^{-1} sum_{j=1..k} c_j b_{k-j}.
  TruncPolyElem r = *this;
  const std::uint32_t c0inv = inverse_mod_prime(c_[0], p_);
  r.c_[0] = c0inv;
  for (std::uint32_t k = 1; k < e_; ++k) {
    std::uint64_t s = 0;
    for (std::uint32_t j = 1; j <= k; ++j) s += std::uint64_t{c_[j]} * r.c_[k - j];
    s %= p_;
    r.c_[k] = static_cast<std::uint32_t>((p_ - s) % p_ * c0inv % p_);
  }
  for (std::uint32_t k = e_; k < kMaxExponent; ++k) r.c_[k] = 0;
  return r;
}

}  // namespace eloop
