#include "bracelab/padic.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <sstream>

namespace bracelab {

std::string to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::non_prime: return "non-prime";
    case ErrorCode::empty_exponents: return "empty-exponents";
    case ErrorCode::out_of_range: return "out-of-range";
    case ErrorCode::unsupported_prime: return "unsupported-prime";
    case ErrorCode::factorial_not_invertible: return "factorial-not-invertible";
    case ErrorCode::not_a_brace: return "not-a-brace";
    case ErrorCode::intractable: return "intractable-closure";
    case ErrorCode::representative_dependence: return "representative-dependence";
    case ErrorCode::depth_zero: return "depth-zero";
    case ErrorCode::flows_divergence: return "flows-divergence";
    case ErrorCode::class_bound: return "class-bound";
    case ErrorCode::internal: return "internal";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(to_string(code) + ": " + what), code_(code) {}

u64 pow_mod(u64 base, u64 exponent, u64 m) {
  if (m == 1) return 0;
  u64 result = 1;
  base %= m;
  while (exponent > 0) {
    if (exponent & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exponent >>= 1;
  }
  return result;
}

std::optional<u64> inv_mod(u64 a, u64 m) {
  if (m == 1) return 0;
  i64 old_r = static_cast<i64>(a % m), r = static_cast<i64>(m);
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    std::tie(old_r, r) = std::pair{r, old_r - q * r};
    std::tie(old_s, s) = std::pair{s, old_s - q * s};
  }
  if (old_r != 1) return std::nullopt;
  return reduce_signed(old_s, m);
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 checked_pow(u64 p, unsigned e) {
  u64 result = 1;
  for (unsigned i = 0; i < e; ++i) {
    if (result > (u64{1} << 62) / p)
      throw Error(ErrorCode::out_of_range, "p^" + std::to_string(e) + " exceeds 2^63");
    result *= p;
  }
  return result;
}

std::vector<u64> prime_factors(u64 n) {
  std::vector<u64> out;
  for (u64 d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

u64 reduce_signed(i64 value, u64 m) {
  i64 r = static_cast<i64>(static_cast<u64>(value < 0 ? -(value + 1) : value) % m);
  if (value < 0) r = static_cast<i64>(m) - 1 - r;
  return static_cast<u64>(r);
}

// ---------------------------------------------------------------------------

PrimePowerGroup::PrimePowerGroup(u64 p, std::span<const unsigned> exponents) {
  if (!is_prime(p)) throw Error(ErrorCode::non_prime, std::to_string(p) + " is not prime");
  if (p == 2) throw Error(ErrorCode::unsupported_prime, "p = 2 is not supported");
  if (exponents.empty()) throw Error(ErrorCode::empty_exponents, "exponent list is empty");
  if (exponents.size() > static_cast<size_t>(kMaxRank))
    throw Error(ErrorCode::out_of_range, "rank exceeds " + std::to_string(kMaxRank));
  p_ = p;
  rank_ = static_cast<int>(exponents.size());
  u64 w = 1;
  for (int j = 0; j < rank_; ++j) {
    if (exponents[j] == 0) throw Error(ErrorCode::invalid_argument, "exponents must be positive");
    exponents_[j] = exponents[j];
    moduli_[j] = checked_pow(p, exponents[j]);
    weights_[j] = w;
    n_ += exponents[j];
    if (static_cast<u128>(w) * moduli_[j] >= (u128{1} << 63))
      throw Error(ErrorCode::out_of_range, "group order exceeds 2^63");
    w *= moduli_[j];
  }
  order_ = w;
  for (unsigned i = 0; i <= max_exponent(); ++i) powers_[i] = checked_pow(p, i);
}

PrimePowerGroup PrimePowerGroup::trivial(u64 p) {
  if (!is_prime(p) || p == 2) throw Error(ErrorCode::non_prime, "trivial group needs an odd prime");
  PrimePowerGroup g;
  g.p_ = p;
  g.powers_[0] = 1;
  return g;
}

PrimePowerGroup make_group(u64 p, std::span<const unsigned> exponents) {
  return PrimePowerGroup(p, exponents);
}

std::vector<unsigned> PrimePowerGroup::exponents() const {
  return {exponents_.begin(), exponents_.begin() + rank_};
}

unsigned PrimePowerGroup::max_exponent() const {
  unsigned m = 0;
  for (int j = 0; j < rank_; ++j) m = std::max(m, exponents_[j]);
  return m;
}

bool PrimePowerGroup::uniform() const {
  for (int j = 1; j < rank_; ++j)
    if (exponents_[j] != exponents_[0]) return false;
  return true;
}

Element PrimePowerGroup::element_at(u64 index) const {
  if (index >= order_)
    throw Error(ErrorCode::out_of_range, "index " + std::to_string(index) + " outside group of order " +
                                             std::to_string(order_));
  Element a;
  for (int j = 0; j < rank_; ++j) {
    a.c[j] = index % moduli_[j];
    index /= moduli_[j];
  }
  return a;
}

u64 PrimePowerGroup::index_of(const Element& a) const {
  u64 index = 0;
  for (int j = 0; j < rank_; ++j) {
    if (a.c[j] >= moduli_[j]) throw Error(ErrorCode::out_of_range, "coordinate out of range");
    index += a.c[j] * weights_[j];
  }
  return index;
}

Element PrimePowerGroup::from_coords(std::span<const u64> coords) const {
  if (static_cast<int>(coords.size()) != rank_)
    throw Error(ErrorCode::out_of_range, "expected " + std::to_string(rank_) + " coordinates");
  Element a;
  for (int j = 0; j < rank_; ++j) {
    if (coords[j] >= moduli_[j]) throw Error(ErrorCode::out_of_range, "coordinate out of range");
    a.c[j] = coords[j];
  }
  return a;
}

Element PrimePowerGroup::from_signed(std::span<const i64> coords) const {
  if (static_cast<int>(coords.size()) != rank_)
    throw Error(ErrorCode::out_of_range, "expected " + std::to_string(rank_) + " coordinates");
  Element a;
  for (int j = 0; j < rank_; ++j) a.c[j] = reduce_signed(coords[j], moduli_[j]);
  return a;
}

std::vector<u64> PrimePowerGroup::coords(const Element& a) const {
  return {a.c.begin(), a.c.begin() + rank_};
}

Element PrimePowerGroup::generator(int j) const {
  Element g;
  g.c[j] = moduli_[j] > 1 ? 1 : 0;
  return g;
}

std::vector<Element> PrimePowerGroup::generators() const {
  std::vector<Element> gens;
  for (int j = 0; j < rank_; ++j) gens.push_back(generator(j));
  return gens;
}

bool PrimePowerGroup::valid(const Element& a) const {
  for (int j = 0; j < kMaxRank; ++j) {
    if (j < rank_ ? a.c[j] >= moduli_[j] : a.c[j] != 0) return false;
  }
  return true;
}

Element PrimePowerGroup::add(const Element& a, const Element& b) const {
  Element r;
  for (int j = 0; j < rank_; ++j) {
    u64 s = a.c[j] + b.c[j];
    r.c[j] = s >= moduli_[j] ? s - moduli_[j] : s;
  }
  return r;
}

Element PrimePowerGroup::sub(const Element& a, const Element& b) const {
  Element r;
  for (int j = 0; j < rank_; ++j) r.c[j] = a.c[j] >= b.c[j] ? a.c[j] - b.c[j] : a.c[j] + moduli_[j] - b.c[j];
  return r;
}

Element PrimePowerGroup::neg(const Element& a) const {
  Element r;
  for (int j = 0; j < rank_; ++j) r.c[j] = a.c[j] == 0 ? 0 : moduli_[j] - a.c[j];
  return r;
}

Element PrimePowerGroup::scale(const Element& a, u64 m) const {
  Element r;
  for (int j = 0; j < rank_; ++j) r.c[j] = mul_mod(a.c[j], m % moduli_[j], moduli_[j]);
  return r;
}

Element PrimePowerGroup::scale_signed(const Element& a, i64 m) const {
  Element r;
  for (int j = 0; j < rank_; ++j) r.c[j] = mul_mod(a.c[j], reduce_signed(m, moduli_[j]), moduli_[j]);
  return r;
}

bool PrimePowerGroup::is_zero(const Element& a) const {
  for (int j = 0; j < rank_; ++j)
    if (a.c[j] != 0) return false;
  return true;
}

unsigned PrimePowerGroup::order_log(const Element& a) const {
  unsigned best = 0;
  for (int j = 0; j < rank_; ++j) {
    u64 x = a.c[j];
    if (x == 0) continue;
    unsigned v = 0;
    while (x % p_ == 0) {
      x /= p_;
      ++v;
    }
    best = std::max(best, exponents_[j] - v);
  }
  return best;
}

bool PrimePowerGroup::in_p_power(const Element& a, unsigned i) const {
  for (int j = 0; j < rank_; ++j) {
    if (i >= exponents_[j]) {
      if (a.c[j] != 0) return false;
    } else if (a.c[j] % powers_[i] != 0) {
      return false;
    }
  }
  return true;
}

bool PrimePowerGroup::in_annihilator(const Element& a, unsigned i) const {
  for (int j = 0; j < rank_; ++j) {
    if (i >= exponents_[j]) continue;
    if (a.c[j] % powers_[exponents_[j] - i] != 0) return false;
  }
  return true;
}

bool PrimePowerGroup::lex_less(const Element& a, const Element& b) const {
  for (int j = 0; j < rank_; ++j)
    if (a.c[j] != b.c[j]) return a.c[j] < b.c[j];
  return false;
}

std::string PrimePowerGroup::format(const Element& a) const {
  std::ostringstream os;
  if (rank_ == 1) {
    os << a.c[0];
    return os.str();
  }
  os << '(';
  for (int j = 0; j < rank_; ++j) os << (j ? "," : "") << a.c[j];
  os << ')';
  return os.str();
}

std::string PrimePowerGroup::describe() const {
  if (rank_ == 0) return "0";
  std::ostringstream os;
  for (int j = 0; j < rank_; ++j) os << (j ? " + " : "") << "Z/" << moduli_[j];
  return os.str();
}

// ---------------------------------------------------------------------------

AdditiveMap::AdditiveMap(const PrimePowerGroup& group, std::vector<Element> images)
    : group_(group), images_(std::move(images)) {
  if (static_cast<int>(images_.size()) != group_.rank())
    throw Error(ErrorCode::invalid_argument, "additive map needs one image per generator");
  for (int j = 0; j < group_.rank(); ++j) {
    if (!group_.valid(images_[j])) throw Error(ErrorCode::out_of_range, "image outside the group");
    if (group_.order_log(images_[j]) > group_.exponent(j))
      throw Error(ErrorCode::invalid_argument,
                  "image of generator " + std::to_string(j) + " has order exceeding p^" +
                      std::to_string(group_.exponent(j)));
  }
}

AdditiveMap AdditiveMap::identity(const PrimePowerGroup& group) {
  return AdditiveMap(group, group.generators());
}

Element AdditiveMap::apply(const Element& x) const {
  Element r = group_.zero();
  for (int j = 0; j < group_.rank(); ++j) r = group_.add(r, group_.scale(images_[j], x.c[j]));
  return r;
}

AdditiveMap AdditiveMap::compose(const AdditiveMap& inner) const {
  std::vector<Element> imgs;
  imgs.reserve(images_.size());
  for (const auto& v : inner.images_) imgs.push_back(apply(v));
  return AdditiveMap(group_, std::move(imgs));
}

AdditiveMap AdditiveMap::minus_identity() const {
  std::vector<Element> imgs;
  for (int j = 0; j < group_.rank(); ++j) imgs.push_back(group_.sub(images_[j], group_.generator(j)));
  return AdditiveMap(group_, std::move(imgs));
}

// ---------------------------------------------------------------------------

u64 primitive_root(u64 p, unsigned n) {
  if (!is_prime(p)) throw Error(ErrorCode::non_prime, std::to_string(p) + " is not prime");
  if (p == 2) throw Error(ErrorCode::unsupported_prime, "no primitive-root search for p = 2");
  if (n == 0) throw Error(ErrorCode::invalid_argument, "n must be positive");
  const u64 modulus = checked_pow(p, n);
  const u64 phi = modulus / p * (p - 1);
  std::vector<u64> qs = prime_factors(p - 1);
  if (n >= 2) qs.push_back(p);
  for (u64 g = 2; g < modulus; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (u64 q : qs) {
      if (pow_mod(g, phi / q, modulus) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
  throw Error(ErrorCode::internal, "no primitive root found");
}

EngelUnit engel_unit(u64 p, unsigned n) {
  EngelUnit u;
  u.p = p;
  u.n = n;
  u.gamma = primitive_root(p, n);
  u.modulus = checked_pow(p, n);
  u.xi = pow_mod(u.gamma, checked_pow(p, n - 1), u.modulus);
  if (pow_mod(u.xi, p - 1, u.modulus) != 1)
    throw Error(ErrorCode::internal, "xi^(p-1) != 1 mod p^n");
  for (u64 j = 1; j + 1 < p; ++j)
    if (pow_mod(u.xi, j, p) == 1) throw Error(ErrorCode::internal, "xi^j = 1 mod p for 0 < j < p-1");
  return u;
}

u64 binom_reduced(u64 j, u64 i, u64 p, unsigned m) {
  using boost::multiprecision::cpp_int;
  if (i > j) throw Error(ErrorCode::invalid_argument, "binomial C(j,i) with i > j");
  const u64 modulus = checked_pow(p, m);
  i = std::min(i, j - i);
  cpp_int c = 1;
  for (u64 t = 1; t <= i; ++t) {
    c *= (j - i + t);
    c /= t;
  }
  return static_cast<u64>(c % modulus);
}

u64 inv_factorial(u64 i, u64 p, unsigned m) {
  if (i >= p)
    throw Error(ErrorCode::factorial_not_invertible,
                std::to_string(i) + "! is divisible by p = " + std::to_string(p));
  const u64 modulus = checked_pow(p, m);
  u64 f = 1 % modulus;
  for (u64 t = 2; t <= i; ++t) f = mul_mod(f, t, modulus);
  auto inv = inv_mod(f, modulus);
  if (!inv) throw Error(ErrorCode::internal, "factorial not invertible");
  return *inv;
}

}  // namespace bracelab
