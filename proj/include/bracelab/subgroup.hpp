#pragma once

#include <array>
#include <memory>
#include <string>
#include <vector>

#include "bracelab/brace.hpp"
#include "bracelab/padic.hpp"

namespace bracelab {

/// An additive subgroup of a PrimePowerGroup. Either structural
/// (⊕_j p^{v_j} C_{p^{α_j}}, membership by divisibility) or an explicit member
/// set over an enumerable parent.
class Subgroup {
 public:
  enum class Tag { whole, p_power, annihilator, e_chain, star_power, q_chain, ideal, custom };

  static Subgroup coordinate(const PrimePowerGroup& g, const std::array<unsigned, kMaxRank>& valuations,
                             Tag tag = Tag::custom, int parameter = 0);
  static Subgroup p_power(const PrimePowerGroup& g, unsigned i);
  static Subgroup annihilator(const PrimePowerGroup& g, unsigned i);
  static Subgroup whole(const PrimePowerGroup& g);
  static Subgroup zero(const PrimePowerGroup& g);
  /// Wraps an explicit element set. `additive_closed()` records whether the set
  /// is closed under addition (E-chain members need not be, a priori).
  static Subgroup from_members(const PrimePowerGroup& g, std::vector<std::uint8_t> member, Tag tag,
                               int parameter = 0);

  const PrimePowerGroup& parent() const { return parent_; }
  bool structural() const { return !data_; }
  Tag tag() const { return tag_; }
  int parameter() const { return parameter_; }
  std::string label() const;

  bool contains(const Element& a) const;
  u64 size() const;
  /// Element number i in canonical order; i < size().
  Element element_at(u64 i) const;
  std::vector<Element> elements() const;
  /// Additive generators.
  const std::vector<Element>& generators() const;
  bool additive_closed() const;
  const std::array<unsigned, kMaxRank>& valuations() const { return valuations_; }

  bool subset_of(const Subgroup& other) const;
  bool same_set(const Subgroup& other) const { return subset_of(other) && other.subset_of(*this); }
  /// {p^i·x : x ∈ this}.
  Subgroup scaled(unsigned i) const;
  Json to_json() const;

 private:
  struct Data {
    std::vector<std::uint8_t> member;
    std::vector<u64> elements;
    bool closed = true;
  };
  Subgroup(const PrimePowerGroup& g) : parent_(g) {}

  PrimePowerGroup parent_;
  std::array<unsigned, kMaxRank> valuations_{};
  std::shared_ptr<const Data> data_;
  std::vector<Element> generators_;
  Tag tag_ = Tag::custom;
  int parameter_ = 0;
};

std::string to_string(Subgroup::Tag tag);

/// Incremental additive span over an enumerable group.
class SpanBuilder {
 public:
  explicit SpanBuilder(const PrimePowerGroup& g);
  /// Adds x; returns true if the span grew.
  bool add(const Element& x);
  bool contains(const Element& x) const { return member_[g_.index_of(x)] != 0; }
  u64 size() const { return elements_.size(); }
  const std::vector<Element>& generators() const { return generators_; }
  const std::vector<Element>& elements() const { return elements_; }
  Subgroup finish(Subgroup::Tag tag, int parameter = 0) const;

 private:
  PrimePowerGroup g_;
  std::vector<std::uint8_t> member_;
  std::vector<Element> elements_;
  std::vector<Element> generators_;
};

/// Subgroup of (A,∘) generated by `gens`, as an element set.
Subgroup circle_closure(const Brace& b, const std::vector<Element>& gens, Subgroup::Tag tag, int parameter = 0);

}  // namespace bracelab
