#pragma once

// Left braces on finite abelian p-groups. The additive group is always a
// PrimePowerGroup; the brace structure is carried by a star rule
// a*b = a∘b - a - b, either tabulated or given by a closed formula.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "bracelab/padic.hpp"
#include "bracelab/report.hpp"

namespace bracelab {

/// Groups up to this order are enumerable (element sets, closures, chains).
inline constexpr u64 kEnumerationLimit = u64{1} << 20;
/// Groups up to this order get full addition/circle tables for sweeps.
inline constexpr u64 kTableLimit = 4096;
/// Ideal closure refuses carriers above this order.
inline constexpr u64 kClosureLimit = 20000;

class StarRule {
 public:
  virtual ~StarRule() = default;
  virtual Element star(const PrimePowerGroup& g, const Element& a, const Element& b) const = 0;
  /// Short formula name: trivial, ring, heisenberg, star_table, lambda_table, ...
  virtual std::string kind() const = 0;
};

class Brace {
 public:
  Brace(PrimePowerGroup group, std::shared_ptr<const StarRule> rule);

  const PrimePowerGroup& group() const { return group_; }
  const StarRule& rule() const { return *rule_; }
  const std::shared_ptr<const StarRule>& rule_ptr() const { return rule_; }
  bool validated() const { return validated_; }
  bool enumerable() const { return group_.order() <= kEnumerationLimit; }
  u64 p() const { return group_.p(); }

  Element star(const Element& a, const Element& b) const { return rule_->star(group_, a, b); }
  Element circle(const Element& a, const Element& b) const;
  /// λ_a(b) = a∘b - a.
  Element lambda(const Element& a, const Element& b) const;
  Element circle_inv(const Element& a) const;
  /// a^{∘m} by binary exponentiation; a^{∘0} = 0.
  Element circle_pow(const Element& a, u64 m) const;
  /// λ_a as an additive map; additivity is spot-certified on generator pairs.
  AdditiveMap lambda_of(const Element& a) const;

 private:
  friend class BraceCertifier;
  PrimePowerGroup group_;
  std::shared_ptr<const StarRule> rule_;
  bool validated_ = false;
};

// Formula and table backends ------------------------------------------------

class TrivialRule final : public StarRule {
 public:
  Element star(const PrimePowerGroup& g, const Element&, const Element&) const override { return g.zero(); }
  std::string kind() const override { return "trivial"; }
};

/// a*b = p^s·a·b on Z/p^α (the adjoint brace of the radical ring p^s·Z/p^α).
class RingRule final : public StarRule {
 public:
  explicit RingRule(unsigned s) : s_(s) {}
  Element star(const PrimePowerGroup& g, const Element& a, const Element& b) const override;
  std::string kind() const override { return "ring"; }
  unsigned s() const { return s_; }

 private:
  unsigned s_;
};

/// λ_{(x,y)}(u,v) = (u + y·v, v) on C_p + C_p, so (x,y)*(u,v) = (y·v, 0).
class HeisenbergRule final : public StarRule {
 public:
  Element star(const PrimePowerGroup& g, const Element& a, const Element& b) const override;
  std::string kind() const override { return "heisenberg"; }
};

/// Row-major table of canonical indices; row = left operand.
class StarTableRule final : public StarRule {
 public:
  StarTableRule(const PrimePowerGroup& g, std::vector<u64> table);
  Element star(const PrimePowerGroup& g, const Element& a, const Element& b) const override;
  std::string kind() const override { return "star_table"; }
  const std::vector<u64>& table() const { return table_; }

 private:
  u64 order_;
  std::vector<u64> table_;
};

/// rows[a·rank + j] = λ_a(g_j); star(a, b) = λ_a(b) - b.
class LambdaTableRule final : public StarRule {
 public:
  LambdaTableRule(const PrimePowerGroup& g, std::vector<Element> rows);
  Element star(const PrimePowerGroup& g, const Element& a, const Element& b) const override;
  std::string kind() const override { return "lambda_table"; }
  const std::vector<Element>& rows() const { return rows_; }

 private:
  int rank_;
  std::vector<Element> rows_;
};

/// Componentwise brace on the concatenated coordinates of two braces.
class ProductRule final : public StarRule {
 public:
  ProductRule(Brace left, Brace right) : left_(std::move(left)), right_(std::move(right)) {}
  Element star(const PrimePowerGroup& g, const Element& a, const Element& b) const override;
  std::string kind() const override { return "product"; }
  const Brace& left() const { return left_; }
  const Brace& right() const { return right_; }

 private:
  Brace left_;
  Brace right_;
};

/// Tabulates an arbitrary brace into a star table (orders up to kTableLimit²-feasible).
Brace tabulate(const Brace& b);
/// Lambda-table form of an arbitrary brace (one row per element).
Brace to_lambda_table(const Brace& b);

// Index tables --------------------------------------------------------------

/// Full addition/circle/negation tables over canonical indices.
struct BraceTables {
  u64 n = 0;
  std::vector<std::uint32_t> add;
  std::vector<std::uint32_t> circle;
  std::vector<std::uint32_t> neg;

  static std::optional<BraceTables> build(const Brace& b);
  std::uint32_t sum(u64 a, u64 c) const { return add[a * n + c]; }
  std::uint32_t circ(u64 a, u64 c) const { return circle[a * n + c]; }
  std::uint32_t lambda(u64 a, u64 c) const { return add[circle[a * n + c] * n + neg[a]]; }
};

// Validation ----------------------------------------------------------------

Json element_json(const PrimePowerGroup& g, const Element& a);

/// Axiom report: additive group, identity, associativity, inverses,
/// distributivity a∘(b+c)+a = a∘b+a∘c, λ multiplicativity.
Report validate_brace(const Brace& b, const SweepMode& mode = SweepMode::automatic());

class BraceCertifier {
 public:
  /// Runs validate_brace and returns the brace marked validated, or throws
  /// not_a_brace carrying the first failing clause and its witness.
  static Brace certify(Brace b, const SweepMode& mode = SweepMode::automatic());
};

inline Brace certify_brace(Brace b, const SweepMode& mode = SweepMode::automatic()) {
  return BraceCertifier::certify(std::move(b), mode);
}

// Star chains ---------------------------------------------------------------

/// e_1' = a*y, e_{i+1}' = a*e_i'.
std::vector<Element> e_chain(const Brace& b, const Element& a, const Element& y, int jmax);
/// e_1 = a, e_{i+1} = a*e_i.
std::vector<Element> diagonal_chain(const Brace& b, const Element& a, int jmax);
/// (λ_a - I)^m(y), evaluated through the additive map λ_a.
Element lambda_minus_identity_power(const Brace& b, const Element& a, const Element& y, int m);

struct Lemma14Check {
  bool holds = true;
  Element circle_power;  // a^{∘j}
  Element circle_sum;    // Σ C(j,i) e_i(a)
  Element star_power;    // a^{∘j} * y
  Element star_sum;      // Σ C(j,i) e_i'(a,y)
};

/// Checks a^{∘j} = Σ_{i=1}^{j} C(j,i) e_i(a) and a^{∘j}*y = Σ C(j,i) e_i'(a,y).
Lemma14Check verify_lemma14(const Brace& b, const Element& a, const Element& y, u64 j);

}  // namespace bracelab
