#pragma once

#include <optional>
#include <vector>

#include "bracelab/brace.hpp"
#include "bracelab/subgroup.hpp"

namespace bracelab {

/// An additive subgroup I with a*i, i*a ∈ I for all a ∈ A, i ∈ I.
class Ideal {
 public:
  /// Certifies the ideal property (exhaustive or sampled per `mode`) and
  /// throws not_a_brace with a witness when it fails.
  Ideal(const Brace& parent, Subgroup elements, const SweepMode& mode = SweepMode::automatic());

  const Subgroup& elements() const { return elements_; }
  const PrimePowerGroup& group() const { return elements_.parent(); }
  const std::vector<Element>& generator_witnesses() const { return witnesses_; }
  void set_generator_witnesses(std::vector<Element> w) { witnesses_ = std::move(w); }

 private:
  Subgroup elements_;
  std::vector<Element> witnesses_;
};

/// Clause "I is an ideal": closure of a*i and i*a over A x I.
Clause check_ideal(const Brace& b, const Subgroup& s, const SweepMode& mode, const std::string& name);

/// Least ideal containing `seeds`; throws intractable above kClosureLimit.
Ideal ideal_closure(const Brace& b, const std::vector<Element>& seeds);

/// A/I with cosets numbered by their lexicographically minimal representative.
class QuotientBrace {
 public:
  QuotientBrace(const Brace& parent, const Ideal& ideal, const SweepMode& check = SweepMode::automatic());

  const Brace& parent() const { return parent_; }
  const Subgroup& ideal() const { return ideal_; }
  u64 size() const { return reps_.size(); }
  u64 class_of(const Element& a) const;
  const Element& rep(u64 coset) const { return reps_.at(coset); }
  u64 add(u64 x, u64 y) const;
  u64 star(u64 x, u64 y) const;
  u64 circle(u64 x, u64 y) const;
  /// Exponents of the cyclic factors of A/I (descending), from the orders of
  /// its p^i-torsion subgroups.
  std::vector<unsigned> additive_type() const;
  /// The quotient as a brace on ⊕ C_{p^{v_j}}; available when I is structural.
  std::optional<Brace> as_brace() const;

 private:
  Brace parent_;
  Subgroup ideal_;
  std::vector<Element> reps_;
  std::vector<std::uint32_t> class_;  // per parent index (explicit mode)
  std::vector<std::uint32_t> star_table_;
  std::optional<PrimePowerGroup> structural_group_;
};

/// Star rule on A/I for structural I, evaluated by lifting coordinates.
class QuotientRule final : public StarRule {
 public:
  QuotientRule(Brace parent, std::vector<int> coordinate_map)
      : parent_(std::move(parent)), map_(std::move(coordinate_map)) {}
  Element star(const PrimePowerGroup& g, const Element& a, const Element& b) const override;
  std::string kind() const override { return "quotient"; }
  Element lift(const PrimePowerGroup& g, const Element& a) const;

 private:
  Brace parent_;
  std::vector<int> map_;
};

/// Additive group A/I for structural I = ⊕ p^{v_j}C, together with the parent
/// coordinate of each surviving factor.
std::pair<PrimePowerGroup, std::vector<int>> structural_quotient_group(const Subgroup& ideal);

}  // namespace bracelab
