#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "bracelab/prelie.hpp"

namespace bracelab {

/// Group of flows of a pre-Lie ring whose products of more than c factors
/// vanish (any bracketing), c < p.
class FlowContext {
 public:
  /// Certifies the class bound (computed when not given); throws class_bound
  /// when it is not below p.
  explicit FlowContext(std::shared_ptr<const PreLieRing> ring, std::optional<int> class_bound = std::nullopt);

  const PreLieRing& ring() const { return *ring_; }
  std::shared_ptr<const PreLieRing> ring_ptr() const { return ring_; }
  int class_bound() const { return c_; }
  const PrimePowerGroup& group() const { return ring_->group(); }

  /// Σ_{i=0}^{c} L_x^i(b)/i!, L_x(y) = x·y.
  Element exp_of_left_mult(const Element& x, const Element& b) const;
  /// W(x) = Σ_{i≥0} L_x^i(x)/(i+1)!.
  Element w(const Element& x) const;
  /// The Ω with W(Ω) = a; throws flows_divergence if c+1 fixed-point steps do not reach it.
  Element omega(const Element& a) const;
  /// a∘b = a + exp(L_{Ω(a)})(b).
  Element compose(const Element& a, const Element& b) const;

 private:
  std::shared_ptr<const PreLieRing> ring_;
  int c_;
  std::vector<u64> inv_fact_;  // i!^{-1} mod the carrier exponent, i ≤ c
};

/// The brace (carrier, ∘ from flows), validated.
Brace brace_from_prelie(std::shared_ptr<const FlowContext> ctx, const SweepMode& mode = SweepMode::automatic());

class FlowsRule final : public StarRule {
 public:
  explicit FlowsRule(std::shared_ptr<const FlowContext> ctx) : ctx_(std::move(ctx)) {}
  Element star(const PrimePowerGroup& g, const Element& a, const Element& b) const override;
  std::string kind() const override { return "flows"; }
  const FlowContext& context() const { return *ctx_; }

 private:
  std::shared_ptr<const FlowContext> ctx_;
};

/// Strong nilpotency class of (B = p^kA, *), or 0 if not below p.
int star_strong_class(const Brace& b, const BuildParams& params);

/// x·y = (p-1)^{-1} Σ ξ^{p-1-i}((ξ^i x)*y) on B = p^kA; throws class_bound
/// unless B is strongly nilpotent of class < p.
PreLieRing passage_product(const Brace& b, const BuildParams& params);

/// flows ∘ over the passage product against the brace circle on B, flows
/// identities and associativity, and dot = (p-1)·passage.
Report verify_flows_roundtrip(const Brace& b, const BuildParams& params, const SweepMode& mode = SweepMode::automatic());

// Symbolic expansion -------------------------------------------------------

using Rational = boost::multiprecision::cpp_rational;

/// Binary trees over the leaves x (id 0) and y (id 1).
struct MagmaNode {
  int left = -1;
  int right = -1;
  int degree = 1;
};

struct StarTerm {
  int tree;
  Rational coefficient;
  int degree;
};

/// x*y = Σ coefficient·tree(x, y) in the free non-associative algebra, from the
/// flows formula truncated at degree c.
struct StarExpansion {
  int class_bound = 0;
  std::vector<MagmaNode> nodes;
  std::vector<StarTerm> terms;

  std::string format(int tree) const;
  template <class Leaf, class Mul>
  auto evaluate(int tree, const Leaf& leaf, const Mul& mul) const -> decltype(leaf(0)) {
    const MagmaNode& n = nodes[tree];
    if (n.left < 0) return leaf(tree);
    return mul(evaluate(n.left, leaf, mul), evaluate(n.right, leaf, mul));
  }
};

/// Cached per class bound; safe to call concurrently.
const StarExpansion& star_expansion(int class_bound);

/// q'([a],[b]) = Σ_T coef_T·(p-1)^{-(d-1)}·p^{dk}·T_•([a],[b]) on the carrier.
u64 q_prime(const QuotientPreLie& q, const StarExpansion& e, u64 a, u64 b);

/// Clauses (i) p^{2k}([a]⊙[b]) = q', (ii) ⊙ recovered by two carrier
/// sections from q', (iii) determinism under section and representative
/// change; plus the expansion check on B and the degree-scaling rule for d ≤ 4.
Report verify_main_recovery(const Brace& b, const BuildParams& params, const SweepMode& mode = SweepMode::automatic(),
                            std::vector<u64> seeds = {2, 3});

}  // namespace bracelab
