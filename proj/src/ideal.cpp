#include "bracelab/ideal.hpp"

#include <algorithm>
#include <numeric>

namespace bracelab {

Clause check_ideal(const Brace& b, const Subgroup& s, const SweepMode& mode, const std::string& name) {
  const auto& g = b.group();
  if (!s.additive_closed()) {
    return verdict_clause(name, false, Json{{"reason", "not closed under addition"}});
  }
  // a*(·) is additive, so the left condition only needs the generators of s.
  const auto& gens = s.generators();
  auto left = sweep<2>({gens.size(), g.order()}, mode.reduced(), [&](const std::array<u64, 2>& t) -> std::optional<Json> {
    Element a = g.element_at(t[1]);
    if (!s.contains(b.star(a, gens[t[0]])))
      return Json{{"a", element_json(g, a)}, {"i", element_json(g, gens[t[0]])}, {"side", "a*i"}};
    return std::nullopt;
  });
  if (!left.ok) return clause_from(name, left);
  auto right = sweep<2>({g.order(), s.size()}, mode, [&](const std::array<u64, 2>& t) -> std::optional<Json> {
    Element a = g.element_at(t[0]);
    Element i = s.element_at(t[1]);
    if (!s.contains(b.star(i, a)))
      return Json{{"a", element_json(g, a)}, {"i", element_json(g, i)}, {"side", "i*a"}};
    return std::nullopt;
  });
  right.checked += left.checked;
  return clause_from(name, right);
}

Ideal::Ideal(const Brace& parent, Subgroup elements, const SweepMode& mode) : elements_(std::move(elements)) {
  if (!(elements_.parent() == parent.group()))
    throw Error(ErrorCode::invalid_argument, "ideal lives in a different group");
  Clause c = check_ideal(parent, elements_, mode, "ideal");
  if (c.failed()) throw Error(ErrorCode::not_a_brace, "subgroup is not an ideal; witness " + c.witness.dump());
}

Ideal ideal_closure(const Brace& b, const std::vector<Element>& seeds) {
  const auto& g = b.group();
  if (g.order() > kClosureLimit)
    throw Error(ErrorCode::intractable, "ideal closure over order " + std::to_string(g.order()) +
                                            " exceeds " + std::to_string(kClosureLimit));
  std::vector<Element> all;
  all.reserve(g.order());
  for (u64 x = 0; x < g.order(); ++x) all.push_back(g.element_at(x));

  SpanBuilder span(g);
  for (const auto& s : seeds) span.add(s);
  size_t done_elements = 0, done_gens = 0;
  // a*(·) is additive, so left products are only needed on generators;
  // (·)*a is not, so right products run over every element.
  while (done_elements < span.elements().size() || done_gens < span.generators().size()) {
    if (done_gens < span.generators().size()) {
      Element x = span.generators()[done_gens++];
      for (const auto& a : all) span.add(b.star(a, x));
      continue;
    }
    Element i = span.elements()[done_elements++];
    for (const auto& a : all) span.add(b.star(i, a));
  }
  Ideal out(b, span.finish(Subgroup::Tag::ideal), SweepMode::exhaustive());
  out.set_generator_witnesses(seeds);
  return out;
}

// ---------------------------------------------------------------------------

std::pair<PrimePowerGroup, std::vector<int>> structural_quotient_group(const Subgroup& ideal) {
  const auto& g = ideal.parent();
  std::vector<unsigned> exps;
  std::vector<int> map;
  for (int j = 0; j < g.rank(); ++j) {
    if (ideal.valuations()[j] > 0) {
      exps.push_back(ideal.valuations()[j]);
      map.push_back(j);
    }
  }
  if (exps.empty()) return {PrimePowerGroup::trivial(g.p()), map};
  return {PrimePowerGroup(g.p(), exps), map};
}

Element QuotientRule::lift(const PrimePowerGroup&, const Element& a) const {
  Element x;
  for (size_t j = 0; j < map_.size(); ++j) x.c[map_[j]] = a.c[j];
  return x;
}

Element QuotientRule::star(const PrimePowerGroup& g, const Element& a, const Element& b) const {
  Element s = parent_.star(lift(g, a), lift(g, b));
  Element r;
  for (size_t j = 0; j < map_.size(); ++j) r.c[j] = s.c[map_[j]] % g.modulus(static_cast<int>(j));
  return r;
}

QuotientBrace::QuotientBrace(const Brace& parent, const Ideal& ideal, const SweepMode& check)
    : parent_(parent), ideal_(ideal.elements()) {
  const auto& g = parent.group();
  if (ideal_.structural()) {
    auto [qg, map] = structural_quotient_group(ideal_);
    if (qg.order() > kEnumerationLimit) throw Error(ErrorCode::intractable, "quotient too large");
    structural_group_ = qg;
    reps_.reserve(qg.order());
    for (u64 x = 0; x < qg.order(); ++x) {
      Element q = qg.element_at(x), lifted;
      for (size_t j = 0; j < map.size(); ++j) lifted.c[map[j]] = q.c[j];
      reps_.push_back(lifted);
    }
  } else {
    const u64 n = g.order();
    std::vector<u64> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<Element> elems(n);
    for (u64 x = 0; x < n; ++x) elems[x] = g.element_at(x);
    std::sort(order.begin(), order.end(), [&](u64 a, u64 b) { return g.lex_less(elems[a], elems[b]); });
    constexpr std::uint32_t kUnset = ~std::uint32_t{0};
    class_.assign(n, kUnset);
    const auto members = ideal_.elements();
    for (u64 x : order) {
      if (class_[x] != kUnset) continue;
      const auto id = static_cast<std::uint32_t>(reps_.size());
      reps_.push_back(elems[x]);
      for (const auto& i : members) class_[g.index_of(g.add(elems[x], i))] = id;
    }
  }

  const u64 q = size();
  if (q <= kTableLimit) {
    star_table_.resize(q * q);
    for (u64 x = 0; x < q; ++x)
      for (u64 y = 0; y < q; ++y)
        star_table_[x * q + y] = static_cast<std::uint32_t>(class_of(parent_.star(reps_[x], reps_[y])));
  }

  auto outcome = sweep<4>({q, q, ideal_.size(), ideal_.size()}, check,
                          [&](const std::array<u64, 4>& t) -> std::optional<Json> {
                            Element x = g.add(reps_[t[0]], ideal_.element_at(t[2]));
                            Element y = g.add(reps_[t[1]], ideal_.element_at(t[3]));
                            if (class_of(parent_.star(x, y)) != star(t[0], t[1]))
                              return Json{{"x", element_json(g, x)}, {"y", element_json(g, y)}};
                            return std::nullopt;
                          });
  if (!outcome.ok)
    throw Error(ErrorCode::representative_dependence, "induced star depends on representatives; witness " +
                                                          outcome.witness.dump());
}

u64 QuotientBrace::class_of(const Element& a) const {
  const auto& g = parent_.group();
  if (structural_group_) {
    const auto& qg = *structural_group_;
    u64 index = 0;
    int k = 0;
    for (int j = 0; j < g.rank(); ++j) {
      if (ideal_.valuations()[j] == 0) continue;
      index += (a.c[j] % qg.modulus(k)) * qg.weight(k);
      ++k;
    }
    return index;
  }
  return class_[g.index_of(a)];
}

u64 QuotientBrace::add(u64 x, u64 y) const { return class_of(parent_.group().add(reps_[x], reps_[y])); }

u64 QuotientBrace::star(u64 x, u64 y) const {
  if (!star_table_.empty()) return star_table_[x * size() + y];
  return class_of(parent_.star(reps_[x], reps_[y]));
}

u64 QuotientBrace::circle(u64 x, u64 y) const { return add(add(x, y), star(x, y)); }

std::vector<unsigned> QuotientBrace::additive_type() const {
  const auto& g = parent_.group();
  // torsion[i] = log_p |{cosets c : p^i c = 0}|
  std::vector<unsigned> torsion{0};
  for (unsigned i = 1;; ++i) {
    u64 count = 0;
    for (const auto& r : reps_)
      if (ideal_.contains(g.scale(r, g.ppow(std::min(i, g.max_exponent()))))) ++count;
    unsigned lg = 0;
    for (u64 c = count; c > 1; c /= g.p()) ++lg;
    torsion.push_back(lg);
    if (count == size()) break;
  }
  std::vector<unsigned> type;
  for (size_t i = 1; i < torsion.size(); ++i) {
    const unsigned at_least_i = torsion[i] - torsion[i - 1];
    const unsigned at_least_next = i + 1 < torsion.size() ? torsion[i + 1] - torsion[i] : 0;
    for (unsigned t = 0; t < at_least_i - at_least_next; ++t) type.push_back(static_cast<unsigned>(i));
  }
  std::sort(type.rbegin(), type.rend());
  return type;
}

std::optional<Brace> QuotientBrace::as_brace() const {
  if (!structural_group_) return std::nullopt;
  auto [qg, map] = structural_quotient_group(ideal_);
  return Brace(qg, std::make_shared<QuotientRule>(parent_, map));
}

}  // namespace bracelab
