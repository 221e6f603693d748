#include "bracelab/prelie.hpp"

#include <algorithm>
#include <array>

namespace bracelab {

namespace {

/// p^i as a scalar on g (p^i ≡ 0 once i reaches the exponent).
u64 p_scalar(const PrimePowerGroup& g, unsigned i) { return i >= g.max_exponent() ? 0 : g.ppow(i); }

u64 xi_power(const BuildParams& params, u64 i) { return pow_mod(params.xi.xi, i, params.xi.modulus); }

Subgroup span_of_products(const PrimePowerGroup& g, const std::vector<Element>& left,
                          const std::vector<Element>& right, const PreLieRing& P, Subgroup::Tag tag, int param) {
  SpanBuilder span(g);
  for (const auto& x : left)
    for (const auto& y : right) span.add(P.mul(x, y));
  return span.finish(tag, param);
}

}  // namespace

BuildParams BuildParams::make(const PrimePowerGroup& g, std::optional<unsigned> k) {
  const u64 p = g.p();
  if (p < 5) throw Error(ErrorCode::unsupported_prime, "the pre-Lie construction needs p >= 5");
  if (g.rank() == 0) throw Error(ErrorCode::invalid_argument, "trivial additive group");
  BuildParams out;
  out.p = p;
  out.n = g.total_exponent();
  const unsigned top = g.max_exponent();
  const unsigned least = std::max(1u, static_cast<unsigned>((top + p - 2) / (p - 1)));
  out.k = k.value_or(least);
  if (out.k < 1 || out.k * (p - 1) < top)
    throw Error(ErrorCode::invalid_argument, "k = " + std::to_string(out.k) + " violates k(p-1) >= " +
                                                 std::to_string(top));
  unsigned xi_exp = out.n;
  try {
    checked_pow(p, xi_exp);
  } catch (const Error&) {
    xi_exp = top;
  }
  out.xi = engel_unit(p, xi_exp);
  out.m1 = static_cast<int>((p - 1) / 4);
  return out;
}

Json BuildParams::to_json() const {
  return Json{{"p", p}, {"n", n}, {"k", k}, {"gamma", xi.gamma}, {"xi", xi.xi}, {"xi_modulus", xi.modulus}, {"m1", m1}};
}

// ---------------------------------------------------------------------------

PullbackSection::PullbackSection(const PrimePowerGroup& g, unsigned k, Policy policy, u64 seed)
    : g_(g), k_(k), policy_(policy), seed_(seed) {
  if (k == 0) throw Error(ErrorCode::invalid_argument, "section level k must be >= 1");
  const Subgroup domain = Subgroup::p_power(g, k);
  if (domain.size() > kEnumerationLimit) return;
  const u64 pk = p_scalar(g, k);
  for (u64 i = 0; i < domain.size(); ++i) {
    const Element a = domain.element_at(i);
    if (!(g.scale((*this)(a), pk) == a))
      throw Error(ErrorCode::internal, "section fails p^k s(a) = a at " + g.format(a));
  }
}

std::string PullbackSection::describe() const {
  return policy_ == Policy::canonical ? "canonical" : "random:" + std::to_string(seed_);
}

Element PullbackSection::operator()(const Element& a) const {
  Element x;
  const u64 index = g_.index_of(a);
  for (int j = 0; j < g_.rank(); ++j) {
    const unsigned alpha = g_.exponent(j);
    u64 shift_unit = 1, shift_count = g_.modulus(j);
    if (alpha <= k_) {
      if (a.c[j] != 0) throw Error(ErrorCode::out_of_range, g_.format(a) + " is not in p^" + std::to_string(k_) + "A");
    } else {
      const u64 pk = g_.ppow(k_);
      if (a.c[j] % pk != 0) throw Error(ErrorCode::out_of_range, g_.format(a) + " is not in p^" + std::to_string(k_) + "A");
      x.c[j] = a.c[j] / pk;
      shift_unit = g_.ppow(alpha - k_);
      shift_count = pk;
    }
    if (policy_ == Policy::random) {
      const u64 r = sample_value(seed_, index, static_cast<u64>(j), shift_count);
      x.c[j] = (x.c[j] + r * shift_unit) % g_.modulus(j);
    }
  }
  return x;
}

Report verify_section_additivity(const PullbackSection& s, const Subgroup& ideal, const SweepMode& mode) {
  const auto& g = s.group();
  if (!Subgroup::annihilator(g, s.k()).subset_of(ideal))
    throw Error(ErrorCode::invalid_argument, "the ideal must contain ann(p^k)");
  const Subgroup domain = Subgroup::p_power(g, s.k());
  Report r;
  r.title = "section-additivity";
  auto o = sweep<2>({domain.size(), domain.size()}, mode, [&](const std::array<u64, 2>& t) -> std::optional<Json> {
    const Element a = domain.element_at(t[1]);
    const Element c = domain.element_at(t[0]);
    const Element diff = g.sub(g.add(s(a), s(c)), s(g.add(a, c)));
    if (ideal.contains(diff)) return std::nullopt;
    return Json{{"a", element_json(g, a)}, {"b", element_json(g, c)}};
  });
  r.add(clause_from("sum", o));
  const u64 pk = checked_pow(g.p(), s.k());
  auto m = sweep<2>({pk + 1, domain.size()}, mode, [&](const std::array<u64, 2>& t) -> std::optional<Json> {
    const Element a = domain.element_at(t[1]);
    const Element diff = g.sub(g.scale(s(a), t[0]), s(g.scale(a, t[0])));
    if (ideal.contains(diff)) return std::nullopt;
    return Json{{"a", element_json(g, a)}, {"m", t[0]}};
  });
  r.add(clause_from("multiple", m));
  return r;
}

// ---------------------------------------------------------------------------

namespace {

PrimePowerGroup carrier_group(const PrimePowerGroup& parent, unsigned depth, std::vector<int>& map) {
  std::vector<unsigned> exps;
  for (int j = 0; j < parent.rank(); ++j) {
    if (parent.exponent(j) > depth) {
      exps.push_back(parent.exponent(j) - depth);
      map.push_back(j);
    }
  }
  if (exps.empty()) return PrimePowerGroup::trivial(parent.p());
  return PrimePowerGroup(parent.p(), exps);
}

}  // namespace

Carrier::Carrier(const PrimePowerGroup& parent, unsigned depth)
    : map_(),
      parent_(parent),
      group_(carrier_group(parent, depth, map_)),
      depth_(depth),
      kernel_(Subgroup::annihilator(parent, depth)) {
  if (group_.order() > kEnumerationLimit) throw Error(ErrorCode::intractable, "carrier too large");
}

Element Carrier::reduce(const Element& a) const {
  Element c;
  for (size_t j = 0; j < map_.size(); ++j) c.c[j] = a.c[map_[j]] % group_.modulus(static_cast<int>(j));
  return c;
}

Element Carrier::lift(const Element& c) const {
  Element a;
  for (size_t j = 0; j < map_.size(); ++j) a.c[map_[j]] = c.c[j];
  return a;
}

bool Carrier::degenerate() const { return group_.rank() == 0 || group_.max_exponent() <= depth_; }

FMap f_map(const Brace& b, const BuildParams& params, const PullbackSection& s, const SweepMode& mode) {
  const auto& g = b.group();
  FMap out{Carrier(g, 2 * params.k), {}};
  const Carrier& c = out.carrier;
  const u64 pk = checked_pow(g.p(), params.k);
  auto f = [&](const Element& a) { return c.class_of(s(b.circle_pow(a, pk))); };
  out.image.resize(c.size());
  for (u64 x = 0; x < c.size(); ++x) out.image[x] = static_cast<std::uint32_t>(f(c.lift(c.group().element_at(x))));
  const Subgroup& ker = c.kernel();
  auto o = sweep<2>({ker.size(), c.size()}, mode.reduced(), [&](const std::array<u64, 2>& t) -> std::optional<Json> {
    const Element a = g.add(c.lift(c.group().element_at(t[1])), ker.element_at(t[0]));
    if (f(a) == out.image[t[1]]) return std::nullopt;
    return Json{{"coset", t[1]}, {"representative", element_json(g, a)}};
  });
  if (!o.ok) throw Error(ErrorCode::representative_dependence, "f-map depends on the representative: " + o.witness.dump());
  return out;
}

Report verify_f_injective(const Brace& b, const BuildParams& params, const PullbackSection& s, const SweepMode& mode) {
  const auto& g = b.group();
  Report r;
  r.title = "f-map";
  std::optional<FMap> fm;
  try {
    fm = f_map(b, params, s, mode);
    r.add(verdict_clause("well-defined", true));
  } catch (const Error& e) {
    r.add(verdict_clause("well-defined", false, Json{{"error", e.what()}}));
    return r;
  }
  std::vector<std::int64_t> first(fm->carrier.size(), -1);
  std::optional<Json> clash;
  for (u64 x = 0; x < fm->image.size() && !clash; ++x) {
    auto& slot = first[fm->image[x]];
    if (slot >= 0)
      clash = Json{{"cosets", {slot, x}}, {"image", fm->image[x]}};
    else
      slot = static_cast<std::int64_t>(x);
  }
  Clause inj = verdict_clause("injective", !clash, clash.value_or(Json()),
                              std::to_string(fm->carrier.size()) + " cosets");
  inj.checked = fm->carrier.size();
  r.add(std::move(inj));

  if (b.enumerable()) {
    const u64 pk = checked_pow(g.p(), params.k);
    const Subgroup target = Subgroup::p_power(g, params.k);
    std::vector<std::uint8_t> hit(g.order(), 0);
    u64 distinct = 0;
    std::optional<Json> w;
    for (u64 x = 0; x < g.order(); ++x) {
      const Element a = g.element_at(x);
      const Element v = b.circle_pow(a, pk);
      if (!target.contains(v)) {
        w = Json{{"a", element_json(g, a)}, {"power", element_json(g, v)}};
        break;
      }
      if (!hit[g.index_of(v)]++) ++distinct;
    }
    if (!w && distinct != target.size()) w = Json{{"image_size", distinct}, {"expected", target.size()}};
    r.add(verdict_clause("circle-power-image", !w, w.value_or(Json())));
  } else {
    r.add(skipped_clause("circle-power-image", "carrier too large to enumerate"));
  }
  return r;
}

Element dot_product(const Brace& b, const BuildParams& params, const Element& x, const Element& y) {
  const auto& g = b.group();
  if (!g.in_p_power(x, params.k) || !g.in_p_power(y, params.k))
    throw Error(ErrorCode::out_of_range, "dot product arguments must lie in p^kA");
  std::array<u64, 64> pw;
  const u64 p = params.p;
  if (p > pw.size()) {
    Element sum;
    for (u64 i = 0; i + 1 < p; ++i)
      sum = g.add(sum, g.scale(b.star(g.scale(x, xi_power(params, i)), y), xi_power(params, p - 1 - i)));
    return sum;
  }
  pw[0] = 1 % params.xi.modulus;
  for (u64 i = 1; i < p; ++i) pw[i] = mul_mod(pw[i - 1], params.xi.xi, params.xi.modulus);
  Element sum;
  for (u64 i = 0; i + 1 < p; ++i) sum = g.add(sum, g.scale(b.star(g.scale(x, pw[i]), y), pw[p - 1 - i]));
  return sum;
}

Report verify_dot_additivity(const Brace& b, const BuildParams& params, const SweepMode& mode) {
  const auto& g = b.group();
  const Subgroup B = Subgroup::p_power(g, params.k);
  const auto& gens = B.generators();
  Report r;
  r.title = "dot-additivity";
  auto dot = [&](const Element& x, const Element& y) { return dot_product(b, params, x, y); };
  auto left = sweep<3>({gens.size(), B.size(), B.size()}, mode.reduced(), [&](const std::array<u64, 3>& t) -> std::optional<Json> {
    const Element x = B.element_at(t[1]), z = B.element_at(t[2]), e = gens[t[0]];
    if (dot(g.add(x, e), z) == g.add(dot(x, z), dot(e, z))) return std::nullopt;
    return Json{{"x", element_json(g, x)}, {"y", element_json(g, e)}, {"z", element_json(g, z)}};
  });
  r.add(clause_from("left-additivity", left));
  auto right = sweep<3>({gens.size(), B.size(), B.size()}, mode.reduced(), [&](const std::array<u64, 3>& t) -> std::optional<Json> {
    const Element x = B.element_at(t[2]), y = B.element_at(t[1]), e = gens[t[0]];
    if (dot(x, g.add(y, e)) == g.add(dot(x, y), dot(x, e))) return std::nullopt;
    return Json{{"x", element_json(g, x)}, {"y", element_json(g, y)}, {"z", element_json(g, e)}};
  });
  r.add(clause_from("right-additivity", right));
  return r;
}

// ---------------------------------------------------------------------------

std::string to_string(PreLieRing::Provenance p) {
  switch (p) {
    case PreLieRing::Provenance::theorem1: return "theorem-1";
    case PreLieRing::Provenance::prop12345: return "prop-12345";
    case PreLieRing::Provenance::external: return "external";
    case PreLieRing::Provenance::passage: return "passage";
    case PreLieRing::Provenance::flows: return "flows";
  }
  return "?";
}

PreLieRing::PreLieRing(PrimePowerGroup carrier, std::vector<std::uint32_t> table, Provenance provenance)
    : group_(std::move(carrier)), table_(std::move(table)), provenance_(provenance), domain_(Subgroup::whole(group_)) {
  if (table_.size() != group_.order() * group_.order())
    throw Error(ErrorCode::invalid_argument, "product table has " + std::to_string(table_.size()) + " entries, expected " +
                                                 std::to_string(group_.order() * group_.order()));
  for (auto v : table_)
    if (v >= group_.order()) throw Error(ErrorCode::out_of_range, "product table entry " + std::to_string(v));
}

PreLieRing::PreLieRing(PrimePowerGroup carrier, Product product, Provenance provenance, std::optional<Subgroup> domain)
    : group_(std::move(carrier)),
      product_(std::move(product)),
      provenance_(provenance),
      domain_(domain.value_or(Subgroup::whole(group_))) {}

Element PreLieRing::mul(const Element& x, const Element& y) const {
  if (!table_.empty()) return group_.element_at(table_[group_.index_of(x) * group_.order() + group_.index_of(y)]);
  return product_(x, y);
}

Json PreLieRing::to_json() const {
  if (!(domain_.size() == group_.order()))
    throw Error(ErrorCode::invalid_argument, "only products on a whole carrier serialize");
  const u64 n = group_.order();
  Json rows = Json::array();
  for (u64 x = 0; x < n; ++x) {
    Json row = Json::array();
    for (u64 y = 0; y < n; ++y)
      row.push_back(table_.empty() ? group_.index_of(product_(group_.element_at(x), group_.element_at(y)))
                                   : u64{table_[x * n + y]});
    rows.push_back(std::move(row));
  }
  Json j;
  j["format"] = "prelie-v1";
  j["p"] = group_.p();
  j["exponents"] = group_.exponents();
  j["product_table"] = std::move(rows);
  return j;
}

PreLieRing PreLieRing::from_json(const Json& j) {
  if (!j.is_object() || j.value("format", "") != "prelie-v1")
    throw Error(ErrorCode::invalid_argument, "expected a prelie-v1 document");
  const auto exps = j.at("exponents").get<std::vector<unsigned>>();
  PrimePowerGroup g(j.at("p").get<u64>(), exps);
  const auto& rows = j.at("product_table");
  if (!rows.is_array() || rows.size() != g.order()) throw Error(ErrorCode::invalid_argument, "product_table row count");
  std::vector<std::uint32_t> table;
  table.reserve(g.order() * g.order());
  for (const auto& row : rows) {
    if (!row.is_array() || row.size() != g.order()) throw Error(ErrorCode::invalid_argument, "product_table row length");
    for (const auto& v : row) {
      const u64 x = v.get<u64>();
      if (x >= g.order()) throw Error(ErrorCode::out_of_range, "product_table entry " + std::to_string(x));
      table.push_back(static_cast<std::uint32_t>(x));
    }
  }
  return PreLieRing(g, std::move(table), Provenance::external);
}

Report verify_prelie_axioms(const PreLieRing& P, const SweepMode& mode) {
  const auto& g = P.group();
  const auto gens = P.generators();
  const u64 n = P.size();
  Report r;
  r.title = "pre-lie axioms";
  auto mul = [&](const Element& x, const Element& y) { return P.mul(x, y); };
  auto ej = [&](const Element& x) { return element_json(g, x); };
  auto left = sweep<3>({gens.size(), n, n}, mode.reduced(), [&](const std::array<u64, 3>& t) -> std::optional<Json> {
    const Element x = P.element_at(t[1]), z = P.element_at(t[2]), e = gens[t[0]];
    if (mul(g.add(x, e), z) == g.add(mul(x, z), mul(e, z))) return std::nullopt;
    return Json{{"x", ej(x)}, {"y", ej(e)}, {"z", ej(z)}};
  });
  r.add(clause_from("left-additivity", left, "second summand over generators"));
  auto right = sweep<3>({gens.size(), n, n}, mode.reduced(), [&](const std::array<u64, 3>& t) -> std::optional<Json> {
    const Element x = P.element_at(t[2]), y = P.element_at(t[1]), e = gens[t[0]];
    if (mul(x, g.add(y, e)) == g.add(mul(x, y), mul(x, e))) return std::nullopt;
    return Json{{"x", ej(x)}, {"y", ej(y)}, {"z", ej(e)}};
  });
  r.add(clause_from("right-additivity", right, "second summand over generators"));
  auto id = sweep<3>({n, n, n}, mode, [&](const std::array<u64, 3>& t) -> std::optional<Json> {
    const Element x = P.element_at(t[2]), y = P.element_at(t[1]), z = P.element_at(t[0]);
    const Element lhs = g.sub(mul(mul(x, y), z), mul(x, mul(y, z)));
    const Element rhs = g.sub(mul(mul(y, x), z), mul(y, mul(x, z)));
    if (lhs == rhs) return std::nullopt;
    return Json{{"x", ej(x)}, {"y", ej(y)}, {"z", ej(z)}};
  });
  r.add(clause_from("pre-lie-identity", id));
  return r;
}

const Subgroup& NilpotencyChain::at(unsigned j) const { return terms.at(std::min<size_t>(j, terms.size()) - 1); }

NilpotencyChain left_nilpotency_chain(const PreLieRing& P) {
  const auto& g = P.group();
  NilpotencyChain out;
  out.terms.push_back(P.domain());
  std::vector<Element> all;
  all.reserve(P.size());
  for (u64 i = 0; i < P.size(); ++i) all.push_back(P.element_at(i));
  const unsigned limit = g.total_exponent() + 2;
  while (out.terms.back().size() > 1 && out.terms.size() <= limit) {
    out.terms.push_back(span_of_products(g, all, out.terms.back().generators(), P, Subgroup::Tag::custom,
                                         static_cast<int>(out.terms.size() + 1)));
  }
  if (out.terms.back().size() == 1) out.index = std::max<int>(2, static_cast<int>(out.terms.size()));
  return out;
}

int left_nilpotency_index(const PreLieRing& P) { return left_nilpotency_chain(P).index; }

int strong_nilpotency_bound(const PrimePowerGroup& g, const Subgroup& domain, const PreLieRing::Product& mul,
                            bool left_additive, int limit) {
  std::vector<Subgroup> S{domain, domain};  // S[0] unused
  for (int m = 2; m <= 2 * (limit + 1); ++m) {
    SpanBuilder span(g);
    for (int i = 1; i < m; ++i) {
      const auto& right = S[m - i].generators();
      if (right.empty()) continue;
      if (left_additive) {
        for (const auto& x : S[i].generators())
          for (const auto& y : right) span.add(mul(x, y));
      } else {
        for (u64 xi = 0; xi < S[i].size(); ++xi) {
          const Element x = S[i].element_at(xi);
          for (const auto& y : right) span.add(mul(x, y));
        }
      }
    }
    S.push_back(span.finish(Subgroup::Tag::custom, m));
    // products of every size in [M, 2M-1] vanishing forces all larger sizes to vanish
    for (int M = 2; 2 * M - 1 <= m; ++M) {
      bool zero = true;
      for (int s = M; s <= 2 * M - 1 && zero; ++s) zero = S[s].size() == 1;
      if (zero) return M - 1;
    }
  }
  return 0;
}

int strong_nilpotency_class(const PreLieRing& P, int limit) {
  return strong_nilpotency_bound(P.group(), P.domain(), [&](const Element& x, const Element& y) { return P.mul(x, y); },
                                 true, limit);
}

// ---------------------------------------------------------------------------

PreLieRing QuotientPreLie::ring() const { return PreLieRing(carrier.group(), bullet, PreLieRing::Provenance::theorem1); }

std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>> quotient_tables(const Brace& b,
                                                                                  const BuildParams& params,
                                                                                  const Carrier& carrier,
                                                                                  const PullbackSection& s,
                                                                                  u64 rep_seed) {
  const auto& g = b.group();
  const auto& cg = carrier.group();
  const u64 N = carrier.size();
  const u64 pk = p_scalar(g, params.k);
  const Subgroup& ker = carrier.kernel();
  std::vector<Element> reps(N);
  for (u64 x = 0; x < N; ++x) {
    reps[x] = carrier.lift(cg.element_at(x));
    if (rep_seed != 0) reps[x] = g.add(reps[x], ker.element_at(sample_value(rep_seed, x, 0, ker.size())));
  }
  std::vector<std::uint32_t> odot(N * N), bullet(N * N);
  for (u64 x = 0; x < N; ++x) {
    const Element px = g.scale(reps[x], pk);
    for (u64 y = 0; y < N; ++y) odot[x * N + y] = static_cast<std::uint32_t>(carrier.class_of(s(b.star(px, reps[y]))));
  }
  std::vector<std::vector<u64>> xi_shift(params.p - 1, std::vector<u64>(N));
  for (u64 i = 0; i + 1 < params.p; ++i)
    for (u64 x = 0; x < N; ++x) xi_shift[i][x] = cg.index_of(cg.scale(cg.element_at(x), xi_power(params, i)));
  for (u64 x = 0; x < N; ++x) {
    for (u64 y = 0; y < N; ++y) {
      Element sum;
      for (u64 i = 0; i + 1 < params.p; ++i)
        sum = cg.add(sum, cg.scale(cg.element_at(odot[xi_shift[i][x] * N + y]), xi_power(params, params.p - 1 - i)));
      bullet[x * N + y] = static_cast<std::uint32_t>(cg.index_of(sum));
    }
  }
  return {std::move(odot), std::move(bullet)};
}

QuotientPreLie build_quotient_prelie(const Brace& b, const BuildParams& params, const QuotientPreLieOptions& options) {
  const auto& g = b.group();
  QuotientPreLie out{params, Carrier(g, 2 * params.k), {}, {}, {}, {}};
  const Carrier& c = out.carrier;
  if (c.size() > kTableLimit * 4)
    throw Error(ErrorCode::intractable, "carrier of order " + std::to_string(c.size()) + " is too large to tabulate");
  out.checks.title = "theorem-1 build";

  // hypotheses
  const unsigned k = params.k;
  out.checks.add(check_ideal(b, Subgroup::p_power(g, k), options.check, "hypothesis:p-power-ideal"));
  out.checks.add(check_ideal(b, Subgroup::annihilator(g, k), options.check, "hypothesis:annihilator-ideal(k)"));
  out.checks.add(check_ideal(b, Subgroup::annihilator(g, 2 * k), options.check, "hypothesis:annihilator-ideal(2k)"));
  {
    const Subgroup B = Subgroup::p_power(g, k);
    const Subgroup ann2 = Subgroup::annihilator(g, 2 * k);
    const Subgroup ann1 = Subgroup::annihilator(g, k);
    const auto& gens = ann2.generators();
    auto o = sweep<2>({gens.size(), B.size()}, options.check.reduced(), [&](const std::array<u64, 2>& t) -> std::optional<Json> {
      const Element x = B.element_at(t[1]);
      if (ann1.contains(b.star(x, gens[t[0]]))) return std::nullopt;
      return Json{{"x", element_json(g, x)}, {"y", element_json(g, gens[t[0]])}};
    });
    out.checks.add(clause_from("hypothesis:annihilator-product", o));
  }

  const PullbackSection section(g, k, options.policy, options.seed);
  std::tie(out.odot, out.bullet) = quotient_tables(b, params, c, section);
  const u64 N = c.size();
  const u64 pk = p_scalar(g, k);

  const Subgroup& ker = c.kernel();
  auto rep = sweep<4>({N, N, ker.size(), ker.size()}, options.check, [&](const std::array<u64, 4>& t) -> std::optional<Json> {
    const Element x = g.add(c.lift(c.group().element_at(t[0])), ker.element_at(t[2]));
    const Element y = g.add(c.lift(c.group().element_at(t[1])), ker.element_at(t[3]));
    if (c.class_of(section(b.star(g.scale(x, pk), y))) == out.odot_at(t[0], t[1])) return std::nullopt;
    return Json{{"x", element_json(g, x)}, {"y", element_json(g, y)}};
  });
  if (!rep.ok)
    throw Error(ErrorCode::representative_dependence, "odot depends on representatives: " + rep.witness.dump());
  out.checks.add(clause_from("representative-independence", rep));

  for (u64 seed : options.comparison_seeds) {
    const auto [odot2, bullet2] = quotient_tables(b, params, c, PullbackSection::random(g, k, seed));
    std::optional<Json> w;
    for (u64 i = 0; i < N * N && !w; ++i)
      if (odot2[i] != out.odot[i] || bullet2[i] != out.bullet[i])
        w = Json{{"x", i / N}, {"y", i % N}, {"seed", seed}};
    if (w) throw Error(ErrorCode::representative_dependence, "products depend on the section: " + w->dump());
    Clause cl = verdict_clause("section-independence(random:" + std::to_string(seed) + ")", true);
    cl.checked = N * N;
    out.checks.add(std::move(cl));
  }

  if (c.degenerate())
    out.notices.push_back("degenerate-depth: p^" + std::to_string(2 * k) +
                          " annihilates the carrier, so depth-2k identities hold as 0 = 0; use p >= 7 for substantive runs");
  return out;
}

Clause scaling_bridge_clause(const Brace& b, const QuotientPreLie& q, const SweepMode& mode) {
  const auto& g = b.group();
  const Carrier& c = q.carrier;
  const auto& cg = c.group();
  const u64 pk = p_scalar(g, q.params.k);
  const u64 p2k = p_scalar(cg, 2 * q.params.k);
  auto o = sweep<2>({q.size(), q.size()}, mode, [&](const std::array<u64, 2>& t) -> std::optional<Json> {
    const Element lhs = cg.scale(cg.element_at(q.bullet_at(t[1], t[0])), p2k);
    const Element x = g.scale(c.lift(cg.element_at(t[1])), pk);
    const Element y = g.scale(c.lift(cg.element_at(t[0])), pk);
    const Element rhs = c.reduce(dot_product(b, q.params, x, y));
    if (lhs == rhs) return std::nullopt;
    return Json{{"a", t[1]}, {"b", t[0]}, {"lhs", element_json(cg, lhs)}, {"rhs", element_json(cg, rhs)}};
  });
  return clause_from("scaling-bridge", o);
}

Report nilpotency_report(const Brace& b, const QuotientPreLie& q) {
  const auto& g = b.group();
  const auto& cg = q.carrier.group();
  Report r;
  r.title = "left nilpotency";
  const PreLieRing P = q.ring();
  const NilpotencyChain chain = left_nilpotency_chain(P);
  const int bound = static_cast<int>(g.total_exponent()) + 1;
  r.add(verdict_clause("index-bound", chain.index >= 2 && chain.index <= bound,
                       Json{{"index", chain.index}, {"bound", bound}},
                       "index " + std::to_string(chain.index) + ", bound " + std::to_string(bound)));
  if (!b.enumerable()) {
    r.add(skipped_clause("transfer", "brace too large to enumerate"));
    return r;
  }

  const StarChain achain = star_power_chain(b);
  const Subgroup pA = Subgroup::p_power(g, 1);
  const Subgroup pP = Subgroup::p_power(cg, 1);
  const unsigned cmax = static_cast<unsigned>(std::max(achain.terms.size(), chain.terms.size()));
  for (unsigned c = 1; c <= cmax; ++c) {
    if (!achain.at(c).subset_of(pA)) continue;
    const bool ok = chain.at(c).subset_of(pP);
    r.add(verdict_clause("transfer(" + std::to_string(c) + ")", ok, Json{{"c", c}}, "A^c in pA"));
  }

  // annihilator descent of P, with the depth of the Q-chain hypothesis read
  // independently of the A^c ⊆ pA depth
  const unsigned top = g.max_exponent();
  const unsigned tmax = g.total_exponent() + 1;
  std::vector<std::vector<Subgroup>> Q;
  for (unsigned i = 1; i <= top; ++i) Q.push_back(q_chain_terms(b, i, tmax));
  const std::vector<Element> pgens = P.generators();
  for (unsigned c = 1; c <= tmax; ++c) {
    bool hyp = true;
    for (unsigned i = 1; i <= top && hyp; ++i)
      hyp = Q[i - 1][c].subset_of(Subgroup::annihilator(g, i).scaled(1));
    if (!hyp) continue;
    const bool coupled = achain.at(c).subset_of(pA);
    bool concl = true;
    Json w;
    for (unsigned i = 1; cg.rank() > 0 && i <= cg.max_exponent() && concl; ++i) {
      const Subgroup ann = Subgroup::annihilator(cg, i);
      Subgroup S = ann;
      for (unsigned t = 0; t < c; ++t) S = span_of_products(cg, pgens, S.generators(), P, Subgroup::Tag::custom, 0);
      if (!S.subset_of(ann.scaled(1))) {
        concl = false;
        w = Json{{"c", c}, {"i", i}};
      }
    }
    const std::string name = "annihilator-descent(" + std::to_string(c) + ")";
    if (coupled) {
      r.add(verdict_clause(name, concl, w));
    } else {
      r.add(skipped_clause(name, std::string("A^c not in pA; conclusion ") + (concl ? "holds" : "fails")));
    }
  }
  return r;
}

}  // namespace bracelab
