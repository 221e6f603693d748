#include "bracelab/generators.hpp"

namespace bracelab {

Brace gen_trivial(u64 p, const std::vector<unsigned>& exponents) {
  return certify_brace(Brace(make_group(p, exponents), std::make_shared<TrivialRule>()));
}

Brace gen_ring_brace(u64 p, unsigned alpha, unsigned s) {
  return certify_brace(Brace(PrimePowerGroup(p, {alpha}), std::make_shared<RingRule>(s)));
}

Brace gen_heisenberg(u64 p) {
  if (p < 3) throw Error(ErrorCode::invalid_argument, "heisenberg brace needs p >= 3");
  return certify_brace(Brace(PrimePowerGroup(p, {1, 1}), std::make_shared<HeisenbergRule>()));
}

Brace gen_direct_product(const Brace& b1, const Brace& b2) {
  if (b1.p() != b2.p())
    throw Error(ErrorCode::invalid_argument,
                "direct product of braces over p = " + std::to_string(b1.p()) + " and " + std::to_string(b2.p()));
  auto exps = b1.group().exponents();
  const auto more = b2.group().exponents();
  exps.insert(exps.end(), more.begin(), more.end());
  if (exps.size() > static_cast<size_t>(kMaxRank))
    throw Error(ErrorCode::invalid_argument, "direct product exceeds rank " + std::to_string(kMaxRank));
  return certify_brace(Brace(make_group(b1.p(), exps), std::make_shared<ProductRule>(b1, b2)));
}

}  // namespace bracelab
