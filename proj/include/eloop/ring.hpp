#pragma once

// Finite local rings with principal maximal ideal: Z/p^eZ and F_p[t]/(t^e).
// Both element types share one interface (see LocalRingElement) so the loop
// arithmetic above them is written once.

#include <array>
#include <compare>
#include <concepts>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "eloop/error.hpp"

namespace eloop {

enum class RingKind { IntegerQuotient, TruncatedPolynomial };

std::string_view to_string(RingKind kind);
RingKind ring_kind_from_string(std::string_view name);

/// Upper bound on |R| so that a projective point packs into one 64-bit key.
inline constexpr std::uint64_t kMaxRingSize = std::uint64_t{1} << 21;

struct RingConfig {
  RingKind kind = RingKind::IntegerQuotient;
  std::uint32_t p = 0;
  std::uint32_t e = 0;

  /// Throws InvalidConfig unless p is a prime >= 5, e >= 1 and p^e fits.
  static RingConfig integer_quotient(std::uint32_t p, std::uint32_t e);
  static RingConfig truncated_polynomial(std::uint32_t p, std::uint32_t e);
  void validate() const;

  /// |R| = p^e.
  std::uint64_t size() const;
  /// |m| = p^(e-1).
  std::uint64_t ideal_size() const;
  /// Nilpotency of m; equals e for both instances.
  std::uint32_t nilpotency() const { return e; }

  friend bool operator==(const RingConfig&, const RingConfig&) = default;
};

bool is_prime(std::uint64_t n);
std::uint64_t ipow(std::uint64_t base, std::uint32_t exp);

/// Element of Z ∪ {∞} restricted to non-negative values; infinity absorbs
/// under addition and dominates every finite value.
class Valuation {
 public:
  constexpr explicit Valuation(int value) : value_(value), infinite_(false) {}
  static constexpr Valuation infinity() { return Valuation(); }

  constexpr bool is_infinite() const { return infinite_; }
  /// Finite value; meaningless when is_infinite().
  constexpr int value() const { return value_; }

  friend constexpr Valuation operator+(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) return infinity();
    return Valuation(a.value_ + b.value_);
  }
  friend constexpr bool operator==(Valuation a, Valuation b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Valuation a, Valuation b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }
  /// True iff this valuation is at least k, i.e. the element lies in m^k.
  constexpr bool at_least(int k) const { return infinite_ || value_ >= k; }

 private:
  constexpr Valuation() : value_(0), infinite_(true) {}
  int value_;
  bool infinite_;
};

std::string to_string(Valuation v);

// ---------------------------------------------------------------------------
// Z/p^eZ

class ZpeElem {
 public:
  ZpeElem() = default;

  static ZpeElem from_int(const RingConfig& cfg, std::int64_t n);
  static ZpeElem from_index(const RingConfig& cfg, std::uint64_t index) {
    return from_int(cfg, static_cast<std::int64_t>(index));
  }
  static ZpeElem zero(const RingConfig& cfg) { return from_int(cfg, 0); }
  static ZpeElem one(const RingConfig& cfg) { return from_int(cfg, 1); }
  static ZpeElem uniformizer(const RingConfig& cfg) { return from_int(cfg, cfg.p); }

  RingConfig config() const { return RingConfig{RingKind::IntegerQuotient, p_, e_}; }
  std::uint64_t value() const { return value_; }
  std::uint64_t index() const { return value_; }

  friend ZpeElem operator+(const ZpeElem& a, const ZpeElem& b) {
    a.check_same(b);
    std::uint64_t s = a.value_ + b.value_;
    if (s >= a.modulus_) s -= a.modulus_;
    return a.with_value(s);
  }
  friend ZpeElem operator-(const ZpeElem& a, const ZpeElem& b) {
    a.check_same(b);
    return a.with_value(a.value_ >= b.value_ ? a.value_ - b.value_ : a.value_ + a.modulus_ - b.value_);
  }
  friend ZpeElem operator*(const ZpeElem& a, const ZpeElem& b) {
    a.check_same(b);
    return a.with_value((a.value_ * b.value_) % a.modulus_);
  }
  ZpeElem operator-() const { return with_value(value_ == 0 ? 0 : modulus_ - value_); }
  ZpeElem& operator+=(const ZpeElem& o) { return *this = *this + o; }
  ZpeElem& operator-=(const ZpeElem& o) { return *this = *this - o; }
  ZpeElem& operator*=(const ZpeElem& o) { return *this = *this * o; }

  friend bool operator==(const ZpeElem& a, const ZpeElem& b) {
    return a.modulus_ == b.modulus_ && a.value_ == b.value_;
  }

  bool is_zero() const { return value_ == 0; }
  bool is_unit() const { return value_ % p_ != 0; }
  Valuation valuation() const;
  /// Throws NonUnit for elements of m.
  ZpeElem inverse() const;
  /// Reduction modulo m, as a residue in [0, p).
  std::uint32_t residue() const { return static_cast<std::uint32_t>(value_ % p_); }

 private:
  ZpeElem with_value(std::uint64_t v) const {
    ZpeElem r = *this;
    r.value_ = v;
    return r;
  }
  void check_same(const ZpeElem& o) const {
    if (modulus_ != o.modulus_) throw Error(ErrorKind::ConfigMismatch, "operands live in different rings");
  }

  std::uint64_t value_ = 0;
  std::uint64_t modulus_ = 0;
  std::uint32_t p_ = 0;
  std::uint32_t e_ = 0;
};

// ---------------------------------------------------------------------------
// F_p[t]/(t^e)

class TruncPolyElem {
 public:
  static constexpr std::uint32_t kMaxExponent = 16;

  TruncPolyElem() = default;

  /// The integer n maps to the constant polynomial n mod p.
  static TruncPolyElem from_int(const RingConfig& cfg, std::int64_t n);
  /// Index in base p, coefficient of t^i being digit i.
  static TruncPolyElem from_index(const RingConfig& cfg, std::uint64_t index);
  static TruncPolyElem from_coefficients(const RingConfig& cfg, const std::vector<std::int64_t>& coeffs);
  static TruncPolyElem zero(const RingConfig& cfg) { return from_int(cfg, 0); }
  static TruncPolyElem one(const RingConfig& cfg) { return from_int(cfg, 1); }
  static TruncPolyElem uniformizer(const RingConfig& cfg);

  RingConfig config() const { return RingConfig{RingKind::TruncatedPolynomial, p_, e_}; }
  std::uint64_t index() const;
  std::uint32_t coefficient(std::uint32_t i) const { return c_[i]; }

  friend TruncPolyElem operator+(const TruncPolyElem& a, const TruncPolyElem& b);
  friend TruncPolyElem operator-(const TruncPolyElem& a, const TruncPolyElem& b);
  friend TruncPolyElem operator*(const TruncPolyElem& a, const TruncPolyElem& b);
  TruncPolyElem operator-() const;
  TruncPolyElem& operator+=(const TruncPolyElem& o) { return *this = *this + o; }
  TruncPolyElem& operator-=(const TruncPolyElem& o) { return *this = *this - o; }
  TruncPolyElem& operator*=(const TruncPolyElem& o) { return *this = *this * o; }

  friend bool operator==(const TruncPolyElem& a, const TruncPolyElem& b) {
    return a.p_ == b.p_ && a.e_ == b.e_ && a.c_ == b.c_;
  }

  bool is_zero() const;
  bool is_unit() const { return c_[0] != 0; }
  Valuation valuation() const;
  TruncPolyElem inverse() const;
  std::uint32_t residue() const { return c_[0]; }

 private:
  void check_same(const TruncPolyElem& o) const {
    if (p_ != o.p_ || e_ != o.e_) throw Error(ErrorKind::ConfigMismatch, "operands live in different rings");
  }

  std::array<std::uint32_t, kMaxExponent> c_{};
  std::uint32_t p_ = 0;
  std::uint32_t e_ = 0;
};

template <class R>
concept LocalRingElement = std::regular<R> && requires(const R a, const R b, const RingConfig& cfg,
                                                       std::int64_t n, std::uint64_t i) {
  { R::from_int(cfg, n) } -> std::same_as<R>;
  { R::from_index(cfg, i) } -> std::same_as<R>;
  { R::zero(cfg) } -> std::same_as<R>;
  { R::one(cfg) } -> std::same_as<R>;
  { R::uniformizer(cfg) } -> std::same_as<R>;
  { a + b } -> std::same_as<R>;
  { a - b } -> std::same_as<R>;
  { a * b } -> std::same_as<R>;
  { -a } -> std::same_as<R>;
  { a.config() } -> std::same_as<RingConfig>;
  { a.index() } -> std::same_as<std::uint64_t>;
  { a.is_zero() } -> std::same_as<bool>;
  { a.is_unit() } -> std::same_as<bool>;
  { a.valuation() } -> std::same_as<Valuation>;
  { a.inverse() } -> std::same_as<R>;
  { a.residue() } -> std::same_as<std::uint32_t>;
};

static_assert(LocalRingElement<ZpeElem>);
static_assert(LocalRingElement<TruncPolyElem>);

/// All |R| elements, in index order.
template <LocalRingElement R>
std::vector<R> all_elements(const RingConfig& cfg) {
  std::vector<R> out;
  out.reserve(cfg.size());
  for (std::uint64_t i = 0; i < cfg.size(); ++i) out.push_back(R::from_index(cfg, i));
  return out;
}

/// Elements of m^k (k >= 0), in index order.
template <LocalRingElement R>
std::vector<R> ideal_power_elements(const RingConfig& cfg, std::uint32_t k) {
  std::vector<R> out;
  for (std::uint64_t i = 0; i < cfg.size(); ++i) {
    R x = R::from_index(cfg, i);
    if (x.valuation().at_least(static_cast<int>(k))) out.push_back(x);
  }
  return out;
}

/// True iff a ≡ b mod m^k; k >= e means exact equality.
template <LocalRingElement R>
bool congruent_mod_power(const R& a, const R& b, int k) {
  return (a - b).valuation().at_least(k);
}

}  // namespace eloop
