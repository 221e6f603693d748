#pragma once

// Exact arithmetic over Z/p^m and finite abelian p-groups
// C_{p^a1} + ... + C_{p^ab} in coordinate form.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bracelab {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

enum class ErrorCode {
  invalid_argument,
  non_prime,
  empty_exponents,
  out_of_range,
  unsupported_prime,
  factorial_not_invertible,
  not_a_brace,
  intractable,
  representative_dependence,
  depth_zero,
  flows_divergence,
  class_bound,
  internal,
};

std::string to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

inline constexpr int kMaxRank = 8;

inline u64 mul_mod(u64 a, u64 b, u64 m) {
  if (((a | b) >> 32) == 0) return a * b % m;
  return static_cast<u64>(static_cast<u128>(a) * b % m);
}
u64 pow_mod(u64 base, u64 exponent, u64 m);
std::optional<u64> inv_mod(u64 a, u64 m);
bool is_prime(u64 n);
/// p^e, throwing out_of_range when the result would reach 2^63.
u64 checked_pow(u64 p, unsigned e);
/// Distinct prime factors by trial division.
std::vector<u64> prime_factors(u64 n);
/// Reduces a signed integer into [0, m).
u64 reduce_signed(i64 value, u64 m);

/// Residue vector; only the first rank() entries of the owning group are used.
struct Element {
  std::array<u64, kMaxRank> c{};
  friend bool operator==(const Element&, const Element&) = default;
  friend auto operator<=>(const Element&, const Element&) = default;
};

class PrimePowerGroup {
 public:
  PrimePowerGroup(u64 p, std::span<const unsigned> exponents);
  PrimePowerGroup(u64 p, std::initializer_list<unsigned> exponents)
      : PrimePowerGroup(p, std::span<const unsigned>(exponents.begin(), exponents.size())) {}
  /// The one-element group; used for degenerate quotients.
  static PrimePowerGroup trivial(u64 p);

  u64 p() const { return p_; }
  int rank() const { return rank_; }
  unsigned exponent(int j) const { return exponents_[j]; }
  std::vector<unsigned> exponents() const;
  unsigned total_exponent() const { return n_; }
  unsigned max_exponent() const;
  u64 modulus(int j) const { return moduli_[j]; }
  u64 weight(int j) const { return weights_[j]; }
  /// p^i for i no larger than the largest exponent.
  u64 ppow(unsigned i) const { return powers_[i]; }
  u64 order() const { return order_; }
  bool uniform() const;

  Element zero() const { return Element{}; }
  Element element_at(u64 index) const;
  u64 index_of(const Element& a) const;
  Element from_coords(std::span<const u64> coords) const;
  Element from_signed(std::span<const i64> coords) const;
  std::vector<u64> coords(const Element& a) const;
  Element generator(int j) const;
  std::vector<Element> generators() const;
  bool valid(const Element& a) const;

  Element add(const Element& a, const Element& b) const;
  Element sub(const Element& a, const Element& b) const;
  Element neg(const Element& a) const;
  /// m·a for a non-negative integer m (reduced per coordinate).
  Element scale(const Element& a, u64 m) const;
  Element scale_signed(const Element& a, i64 m) const;
  bool is_zero(const Element& a) const;

  /// log_p of the additive order of a.
  unsigned order_log(const Element& a) const;
  /// Membership in p^i A.
  bool in_p_power(const Element& a, unsigned i) const;
  /// Membership in ann(p^i).
  bool in_annihilator(const Element& a, unsigned i) const;
  /// Lexicographic comparison with coordinate 0 most significant.
  bool lex_less(const Element& a, const Element& b) const;

  std::string format(const Element& a) const;
  std::string describe() const;

  friend bool operator==(const PrimePowerGroup& x, const PrimePowerGroup& y) {
    return x.p_ == y.p_ && x.rank_ == y.rank_ && x.exponents_ == y.exponents_;
  }

 private:
  PrimePowerGroup() = default;

  u64 p_ = 0;
  int rank_ = 0;
  unsigned n_ = 0;
  u64 order_ = 1;
  std::array<unsigned, kMaxRank> exponents_{};
  std::array<u64, kMaxRank> moduli_{};
  std::array<u64, kMaxRank> weights_{};
  std::array<u64, 64> powers_{};
};

PrimePowerGroup make_group(u64 p, std::span<const unsigned> exponents);

/// An additive endomorphism stored by the images of the standard generators.
class AdditiveMap {
 public:
  AdditiveMap(const PrimePowerGroup& group, std::vector<Element> images);
  static AdditiveMap identity(const PrimePowerGroup& group);

  const PrimePowerGroup& group() const { return group_; }
  const std::vector<Element>& images() const { return images_; }
  Element apply(const Element& x) const;
  /// (*this) after `inner`.
  AdditiveMap compose(const AdditiveMap& inner) const;
  AdditiveMap minus_identity() const;

  friend bool operator==(const AdditiveMap& a, const AdditiveMap& b) {
    return a.group_ == b.group_ && a.images_ == b.images_;
  }

 private:
  PrimePowerGroup group_;
  std::vector<Element> images_;
};

struct EngelUnit {
  u64 p = 0;
  unsigned n = 0;
  u64 modulus = 0;  // p^n
  u64 gamma = 0;
  u64 xi = 0;
};

u64 primitive_root(u64 p, unsigned n);
/// xi = gamma^{p^{n-1}} mod p^n, with xi^{p-1} = 1 mod p^n and xi^j != 1 mod p
/// for 0 < j < p-1 certified.
EngelUnit engel_unit(u64 p, unsigned n);

/// C(j, i) computed exactly, then reduced mod p^m.
u64 binom_reduced(u64 j, u64 i, u64 p, unsigned m);
/// (i!)^{-1} mod p^m; requires i < p.
u64 inv_factorial(u64 i, u64 p, unsigned m);

}  // namespace bracelab
