#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bracelab/brace.hpp"
#include "bracelab/filtration.hpp"
#include "bracelab/subgroup.hpp"

namespace bracelab {

struct BuildParams {
  u64 p = 0;
  unsigned n = 0;  // total exponent of A
  unsigned k = 0;
  EngelUnit xi;
  int m1 = 0;  // ⌊(p-1)/4⌋

  /// Defaults k to the least value with k(p-1) ≥ max α_j; rejects p < 5 and
  /// any k violating that bound.
  static BuildParams make(const PrimePowerGroup& g, std::optional<unsigned> k = std::nullopt);
  Json to_json() const;
};

/// A section of multiplication by p^k on p^kA.
class PullbackSection {
 public:
  enum class Policy { canonical, random };

  /// Certifies p^k·s(a) = a on all of p^kA when that set is enumerable.
  PullbackSection(const PrimePowerGroup& g, unsigned k, Policy policy = Policy::canonical, u64 seed = 0);
  static PullbackSection random(const PrimePowerGroup& g, unsigned k, u64 seed) {
    return PullbackSection(g, k, Policy::random, seed);
  }

  const PrimePowerGroup& group() const { return g_; }
  unsigned k() const { return k_; }
  Policy policy() const { return policy_; }
  u64 seed() const { return seed_; }
  std::string describe() const;

  /// Throws out_of_range when a ∉ p^kA.
  Element operator()(const Element& a) const;

 private:
  PrimePowerGroup g_;
  unsigned k_;
  Policy policy_;
  u64 seed_;
};

/// Checks [s(a)] + [s(b)] = [s(a+b)] and [m·s(a)] = [s(ma)] modulo I for
/// a, b ∈ p^kA, 0 ≤ m ≤ p^k. Rejects I not containing ann(p^k).
Report verify_section_additivity(const PullbackSection& s, const Subgroup& ideal,
                                 const SweepMode& mode = SweepMode::automatic());

/// The carrier A/ann(p^{2k}) ≅ ⊕ C_{p^{α_j - 2k}}, with cosets represented by
/// reduced coordinates.
class Carrier {
 public:
  Carrier(const PrimePowerGroup& parent, unsigned depth);

  const PrimePowerGroup& parent() const { return parent_; }
  const PrimePowerGroup& group() const { return group_; }
  unsigned depth() const { return depth_; }
  u64 size() const { return group_.order(); }
  Element reduce(const Element& a) const;
  /// Lexicographically minimal representative.
  Element lift(const Element& c) const;
  u64 class_of(const Element& a) const { return group_.index_of(reduce(a)); }
  const Subgroup& kernel() const { return kernel_; }
  /// True when p^depth kills the carrier.
  bool degenerate() const;

 private:
  std::vector<int> map_;  // carrier coordinate -> parent coordinate
  PrimePowerGroup parent_;
  PrimePowerGroup group_;
  unsigned depth_;
  Subgroup kernel_;
};

/// [a] ↦ [s(a^{∘p^k})] on A/ann(p^{2k}).
struct FMap {
  Carrier carrier;
  std::vector<std::uint32_t> image;  // by carrier index
};

/// Builds the f-map table; throws representative_dependence when shifting a
/// representative by ann(p^{2k}) changes the image class.
FMap f_map(const Brace& b, const BuildParams& params, const PullbackSection& s,
           const SweepMode& mode = SweepMode::automatic());
/// Injectivity of f and {a^{∘p^k}} = p^kA.
Report verify_f_injective(const Brace& b, const BuildParams& params, const PullbackSection& s,
                          const SweepMode& mode = SweepMode::automatic());

/// Σ_{i=0}^{p-2} ξ^{p-1-i}((ξ^i x)*y) for x, y ∈ p^kA.
Element dot_product(const Brace& b, const BuildParams& params, const Element& x, const Element& y);
/// (x+y)·z = x·z + y·z and x·(y+z) = x·y + x·z on p^kA.
Report verify_dot_additivity(const Brace& b, const BuildParams& params, const SweepMode& mode = SweepMode::automatic());

// ---------------------------------------------------------------------------

class PreLieRing {
 public:
  enum class Provenance { theorem1, prop12345, external, passage, flows };
  using Product = std::function<Element(const Element&, const Element&)>;

  /// Table-backed product on all of `carrier`, indices in canonical order.
  PreLieRing(PrimePowerGroup carrier, std::vector<std::uint32_t> table, Provenance provenance);
  /// Evaluator-backed product, optionally restricted to an additive subgroup.
  PreLieRing(PrimePowerGroup carrier, Product product, Provenance provenance,
             std::optional<Subgroup> domain = std::nullopt);

  const PrimePowerGroup& group() const { return group_; }
  Provenance provenance() const { return provenance_; }
  bool has_table() const { return !table_.empty(); }
  const std::vector<std::uint32_t>& table() const { return table_; }
  /// The additive subgroup the product lives on (the whole carrier by default).
  const Subgroup& domain() const { return domain_; }
  u64 size() const { return domain_.size(); }
  Element element_at(u64 i) const { return domain_.element_at(i); }
  std::vector<Element> generators() const { return domain_.generators(); }

  Element mul(const Element& x, const Element& y) const;
  u64 mul_index(u64 x, u64 y) const { return table_[x * group_.order() + y]; }

  /// {"format":"prelie-v1",...}; tabulates evaluator products on demand.
  Json to_json() const;
  static PreLieRing from_json(const Json& j);

 private:
  PrimePowerGroup group_;
  std::vector<std::uint32_t> table_;
  Product product_;
  Provenance provenance_;
  Subgroup domain_;
};

std::string to_string(PreLieRing::Provenance p);

/// Bi-additivity (exact, via generators) and the pre-Lie identity.
Report verify_prelie_axioms(const PreLieRing& P, const SweepMode& mode = SweepMode::automatic());

struct NilpotencyChain {
  int index = 0;                  // least m ≥ 2 with P^m = 0 (0 if not reached)
  std::vector<Subgroup> terms;    // terms[0] = P^1
  const Subgroup& at(unsigned j) const;
};
/// P^{j+1} = span(P·P^j).
NilpotencyChain left_nilpotency_chain(const PreLieRing& P);
int left_nilpotency_index(const PreLieRing& P);

/// Largest m with some product of m elements (any bracketing) nonzero, bounded
/// above via S^(m) = Σ_{i+j=m} span(S^(i)·S^(j)). Returns 0 when the bound
/// does not close within `limit` steps.
int strong_nilpotency_class(const PreLieRing& P, int limit);
/// The same bound for an arbitrary product on `domain`; when the product is
/// not additive on the left, left factors range over whole spans.
int strong_nilpotency_bound(const PrimePowerGroup& g, const Subgroup& domain, const PreLieRing::Product& mul,
                            bool left_additive, int limit);

// ---------------------------------------------------------------------------

struct QuotientPreLieOptions {
  PullbackSection::Policy policy = PullbackSection::Policy::canonical;
  u64 seed = 0;
  /// Random sections used for the section-independence check.
  std::vector<u64> comparison_seeds{1};
  SweepMode check = SweepMode::automatic();
};

struct QuotientPreLie {
  BuildParams params;
  Carrier carrier;
  std::vector<std::uint32_t> odot;    // [x]⊙[y] by carrier indices
  std::vector<std::uint32_t> bullet;  // [x]•[y]
  Report checks;                      // hypotheses, representative and section independence
  std::vector<std::string> notices;

  u64 size() const { return carrier.size(); }
  u64 odot_at(u64 x, u64 y) const { return odot[x * size() + y]; }
  u64 bullet_at(u64 x, u64 y) const { return bullet[x * size() + y]; }
  PreLieRing ring() const;
};

/// ⊙ and • tables for one section (no checks). A nonzero `rep_seed` shifts
/// each representative by a pseudo-random element of ann(p^{2k}).
std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> quotient_tables(
    const Brace& b, const BuildParams& params, const Carrier& carrier, const PullbackSection& s, u64 rep_seed = 0);

/// Builds (A/ann(p^{2k}), +, •). Throws representative_dependence on a
/// representative- or section-dependent product.
QuotientPreLie build_quotient_prelie(const Brace& b, const BuildParams& params,
                                     const QuotientPreLieOptions& options = {});

/// p^{2k}([a]•[b]) = [(p^k a)·(p^k b)] for all (or sampled) coset pairs.
Clause scaling_bridge_clause(const Brace& b, const QuotientPreLie& q, const SweepMode& mode);

/// Nilpotency index bound n+1, the transfer A^c ⊆ pA ⇒ P^c ⊆ pP and the
/// annihilator descent of P when its brace-side hypotheses hold.
Report nilpotency_report(const Brace& b, const QuotientPreLie& q);

}  // namespace bracelab
