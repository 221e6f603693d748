#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bracelab/brace.hpp"
#include "bracelab/ideal.hpp"
#include "bracelab/subgroup.hpp"

namespace bracelab {

Subgroup p_power_subgroup(const Brace& b, unsigned i);
Subgroup annihilator(const Brace& b, unsigned i);

/// E_0 = A, E_{i+1} = <x^{∘p} : x ∈ E_i> in (A,∘); stops after the first {0}.
std::vector<Subgroup> e_subgroup_chain(const Brace& b);

struct StarChain {
  std::vector<Subgroup> terms;  // terms[0] = A^1 = A
  bool reached_zero = false;
  /// A^j for j ≥ 1 ({0} past the end when the chain reached zero).
  const Subgroup& at(unsigned j) const { return terms.at(std::min<size_t>(j, terms.size()) - 1); }
};

/// A^1 = A, A^{j+1} = span{a*x : a ∈ A, x ∈ A^j}, up to n+1 steps.
StarChain star_power_chain(const Brace& b);

/// Q_{0,j} = ann(p^j), Q_{t+1,j} = span{a*x : a ∈ A, x ∈ Q_{t,j}}.
Subgroup q_chain(const Brace& b, unsigned t, unsigned j);
/// Q_{0,j}, ..., Q_{tmax,j}.
std::vector<Subgroup> q_chain_terms(const Brace& b, unsigned j, unsigned tmax);

enum class DescentMode { property1, property1prime, property1doubleprime, engel };
std::string to_string(DescentMode m);
DescentMode parse_descent_mode(const std::string& s);
int default_depth(DescentMode m, u64 p);

struct PropertyReport {
  std::string property;
  int depth = 0;
  Report report;

  bool passed() const { return report.passed(); }
  Json to_json() const;
};

/// Depth-m descent checks: e_m'(a,b) ∈ pA plus e_m'(a,a) ∈ pA (1, 1'),
/// e_m'(a, ann(p^i)) ⊆ ann(p^{i-1}) (1''), (λ_a - I)^m(b) ∈ pA (engel).
/// Since x ↦ e_m'(a,x) is additive, the exhaustive and automatic modes run
/// b over additive generators, which covers all of A exactly.
PropertyReport check_descent(const Brace& b, DescentMode mode, std::optional<int> depth = std::nullopt,
                             const SweepMode& sweep_mode = SweepMode::automatic());

/// Ideal and product-inclusion clauses for the p-power and annihilator
/// filtrations (see README for the list).
Report verify_ideal_lattice(const Brace& b, const SweepMode& mode = SweepMode::automatic());

/// Uniform-group clauses: ann(p^i) = p^{α-i}A, 1' ⇒ 1'', ann(p^{4k}) = p^{α-4k}A,
/// and the additive type of A/p^αA (α defaults to the least exponent).
Report uniform_report(const Brace& b, unsigned k, std::optional<unsigned> alpha = std::nullopt,
                      const SweepMode& mode = SweepMode::automatic());

/// Clause "s1 = s2" by mutual inclusion.
Clause same_set_clause(const std::string& name, const Subgroup& s1, const Subgroup& s2);

}  // namespace bracelab
