#pragma once

#include <vector>

#include "bracelab/brace.hpp"

namespace bracelab {

/// Raw λ-table count: braces are distinct maps a ↦ λ_a, not isomorphism classes.
struct Enumeration {
  std::vector<Brace> braces;  // in discovery order, each validated
  u64 count = 0;
  bool complete = true;  // false when the node budget ran out
  u64 nodes = 0;
  u64 automorphisms = 0;

  Json to_json() const;
};

/// All left braces on the given additive group, by backtracking over
/// λ: A → Aut(A) closed under λ_{a + λ_a(b)} = λ_a λ_b. Requires |A| ≤ p²
/// and p ≤ 7.
Enumeration enumerate_small(u64 p, const std::vector<unsigned>& exponents, u64 budget = 1000000);

}  // namespace bracelab
