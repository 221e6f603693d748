#pragma once

#include <vector>

#include "bracelab/brace.hpp"

namespace bracelab {

// Each generator validates its result before returning it.

Brace gen_trivial(u64 p, const std::vector<unsigned>& exponents);
/// a*b = p^s·ab on Z/p^alpha; s = 0 fails validation (1 + a need not be a unit).
Brace gen_ring_brace(u64 p, unsigned alpha, unsigned s);
/// (x,y)*(u,v) = (y·v, 0) on C_p + C_p, p ≥ 3.
Brace gen_heisenberg(u64 p);
/// Componentwise brace on the concatenated coordinates.
Brace gen_direct_product(const Brace& b1, const Brace& b2);

}  // namespace bracelab
