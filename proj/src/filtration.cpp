#include "bracelab/filtration.hpp"

#include <algorithm>

namespace bracelab {

namespace {

/// span{a*x : a ∈ A, x ∈ s}; x runs over generators since a*(·) is additive.
Subgroup left_span(const Brace& b, const Subgroup& s, Subgroup::Tag tag, int parameter) {
  const auto& g = b.group();
  SpanBuilder span(g);
  for (const auto& x : s.generators())
    for (u64 a = 0; a < g.order(); ++a) span.add(b.star(g.element_at(a), x));
  return span.finish(tag, parameter);
}

std::vector<Element> left_trace(const Brace& b, const Element& a, Element y, int m) {
  std::vector<Element> out;
  for (int i = 0; i < m; ++i) {
    y = b.star(a, y);
    out.push_back(y);
  }
  return out;
}

Json trace_json(const PrimePowerGroup& g, const std::vector<Element>& trace) {
  Json t = Json::array();
  for (const auto& e : trace) t.push_back(element_json(g, e));
  return t;
}

std::string indexed(const std::string& name, std::initializer_list<unsigned> ix) {
  std::string out = name + "(";
  bool first = true;
  for (unsigned i : ix) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + ")";
}

}  // namespace

Subgroup p_power_subgroup(const Brace& b, unsigned i) { return Subgroup::p_power(b.group(), i); }

Subgroup annihilator(const Brace& b, unsigned i) { return Subgroup::annihilator(b.group(), i); }

std::vector<Subgroup> e_subgroup_chain(const Brace& b) {
  const auto& g = b.group();
  if (!b.enumerable()) throw Error(ErrorCode::intractable, "E-chain needs an enumerable brace");
  std::vector<Subgroup> chain{Subgroup::whole(g)};
  for (unsigned i = 1; chain.back().size() > 1 && i <= g.total_exponent() + 1; ++i) {
    const Subgroup& cur = chain.back();
    std::vector<Element> gens;
    gens.reserve(cur.size());
    for (u64 x = 0; x < cur.size(); ++x) gens.push_back(b.circle_pow(cur.element_at(x), g.p()));
    chain.push_back(circle_closure(b, gens, Subgroup::Tag::e_chain, static_cast<int>(i)));
  }
  return chain;
}

StarChain star_power_chain(const Brace& b) {
  const auto& g = b.group();
  StarChain out;
  out.terms.push_back(Subgroup::whole(g));
  for (unsigned j = 2; out.terms.back().size() > 1 && j <= g.total_exponent() + 2; ++j)
    out.terms.push_back(left_span(b, out.terms.back(), Subgroup::Tag::star_power, static_cast<int>(j)));
  out.reached_zero = out.terms.back().size() == 1;
  return out;
}

Subgroup q_chain(const Brace& b, unsigned t, unsigned j) { return q_chain_terms(b, j, t).back(); }

std::vector<Subgroup> q_chain_terms(const Brace& b, unsigned j, unsigned tmax) {
  std::vector<Subgroup> out{Subgroup::annihilator(b.group(), j)};
  for (unsigned t = 1; t <= tmax; ++t) {
    if (out.back().size() == 1)
      out.push_back(out.back());
    else
      out.push_back(left_span(b, out.back(), Subgroup::Tag::q_chain, static_cast<int>(t)));
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(DescentMode m) {
  switch (m) {
    case DescentMode::property1: return "property-1";
    case DescentMode::property1prime: return "property-1'";
    case DescentMode::property1doubleprime: return "property-1''";
    case DescentMode::engel: return "engel-hypothesis";
  }
  return "?";
}

DescentMode parse_descent_mode(const std::string& s) {
  if (s == "1" || s == "property1") return DescentMode::property1;
  if (s == "1'" || s == "1p" || s == "property1prime") return DescentMode::property1prime;
  if (s == "1''" || s == "1pp" || s == "property1doubleprime") return DescentMode::property1doubleprime;
  if (s == "engel") return DescentMode::engel;
  throw Error(ErrorCode::invalid_argument, "unknown descent mode '" + s + "'");
}

int default_depth(DescentMode m, u64 p) {
  switch (m) {
    case DescentMode::property1:
    case DescentMode::engel: return static_cast<int>((p - 1) / 2);
    default: return static_cast<int>((p - 1) / 4);
  }
}

Json PropertyReport::to_json() const {
  Json j;
  j["property"] = property;
  j["depth"] = depth;
  j["verdict"] = passed() ? "pass" : "fail";
  j["report"] = report.to_json();
  return j;
}

PropertyReport check_descent(const Brace& b, DescentMode mode, std::optional<int> depth,
                             const SweepMode& sweep_mode) {
  const auto& g = b.group();
  const int m = depth.value_or(default_depth(mode, g.p()));
  if (m < 1)
    throw Error(ErrorCode::depth_zero, to_string(mode) + " has depth " + std::to_string(m) + " for p = " +
                                           std::to_string(g.p()) + " (needs p > 3 for the quarter depth)");
  PropertyReport out;
  out.property = to_string(mode);
  out.depth = m;
  out.report.title = out.property;
  const auto gens = g.generators();
  const bool by_generators = sweep_mode.kind != SweepMode::Kind::sampled;
  const u64 second = by_generators ? gens.size() : g.order();
  auto pick = [&](u64 t) { return by_generators ? gens[t] : g.element_at(t); };

  if (mode == DescentMode::property1doubleprime) {
    for (unsigned i = 1; i <= g.max_exponent(); ++i) {
      const Subgroup ann = Subgroup::annihilator(g, i);
      const Subgroup lower = Subgroup::annihilator(g, i - 1);
      const auto& ag = ann.generators();
      const u64 extent = by_generators ? ag.size() : ann.size();
      auto o = sweep<2>({extent, g.order()}, sweep_mode.reduced(), [&](const std::array<u64, 2>& t) -> std::optional<Json> {
        const Element a = g.element_at(t[1]);
        const Element x = by_generators ? ag[t[0]] : ann.element_at(t[0]);
        auto trace = left_trace(b, a, x, m);
        if (lower.contains(trace.back())) return std::nullopt;
        return Json{{"a", element_json(g, a)}, {"x", element_json(g, x)}, {"i", i}, {"trace", trace_json(g, trace)}};
      });
      out.report.add(clause_from(indexed("annihilator-descent", {i}), o));
    }
    return out;
  }

  const Subgroup pA = Subgroup::p_power(g, 1);
  auto o = sweep<2>({second, g.order()}, by_generators ? sweep_mode.reduced() : sweep_mode,
                    [&](const std::array<u64, 2>& t) -> std::optional<Json> {
                      const Element a = g.element_at(t[1]);
                      const Element y = pick(t[0]);
                      if (mode == DescentMode::engel) {
                        Element v = y;
                        std::vector<Element> trace;
                        for (int s = 0; s < m; ++s) {
                          v = g.sub(b.lambda(a, v), v);
                          trace.push_back(v);
                        }
                        if (pA.contains(v)) return std::nullopt;
                        return Json{{"a", element_json(g, a)}, {"b", element_json(g, y)}, {"trace", trace_json(g, trace)}};
                      }
                      auto trace = left_trace(b, a, y, m);
                      if (pA.contains(trace.back())) return std::nullopt;
                      return Json{{"a", element_json(g, a)}, {"b", element_json(g, y)}, {"trace", trace_json(g, trace)}};
                    });
  out.report.add(clause_from(mode == DescentMode::engel ? "engel-descent" : "left-descent", o,
                             by_generators ? "b over additive generators" : ""));
  if (mode == DescentMode::engel) return out;

  auto d = sweep<1>({g.order()}, sweep_mode.reduced(), [&](const std::array<u64, 1>& t) -> std::optional<Json> {
    const Element a = g.element_at(t[0]);
    auto trace = left_trace(b, a, a, m);
    if (pA.contains(trace.back())) return std::nullopt;
    return Json{{"a", element_json(g, a)}, {"trace", trace_json(g, trace)}};
  });
  out.report.add(clause_from("diagonal-descent", d));
  return out;
}

// ---------------------------------------------------------------------------

Clause same_set_clause(const std::string& name, const Subgroup& s1, const Subgroup& s2) {
  const auto& g = s1.parent();
  auto missing = [&](const Subgroup& from, const Subgroup& in) -> std::optional<Element> {
    if (from.additive_closed() && in.additive_closed()) {
      for (const auto& x : from.generators())
        if (!in.contains(x)) return x;
      return std::nullopt;
    }
    for (u64 i = 0; i < from.size(); ++i)
      if (!in.contains(from.element_at(i))) return from.element_at(i);
    return std::nullopt;
  };
  if (auto x = missing(s1, s2))
    return verdict_clause(name, false, Json{{"only_in", "left"}, {"element", element_json(g, *x)}});
  if (auto x = missing(s2, s1))
    return verdict_clause(name, false, Json{{"only_in", "right"}, {"element", element_json(g, *x)}});
  Clause c = verdict_clause(name, true);
  c.checked = s1.size();
  return c;
}

Report verify_ideal_lattice(const Brace& b, const SweepMode& mode) {
  const auto& g = b.group();
  const unsigned top = g.max_exponent();
  Report r;
  r.title = "ideal-lattice";

  // (a) p^iA and ann(p^i) are ideals
  for (unsigned i = 1; i <= top; ++i) {
    r.add(check_ideal(b, Subgroup::p_power(g, i), mode, indexed("a:p-power-ideal", {i})));
    r.add(check_ideal(b, Subgroup::annihilator(g, i), mode, indexed("a:annihilator-ideal", {i})));
  }

  // (b) E_i = p^iA
  if (b.enumerable()) {
    auto chain = e_subgroup_chain(b);
    const Subgroup zero = Subgroup::zero(g);
    for (unsigned i = 0; i <= top; ++i)
      r.add(same_set_clause(indexed("b:e-chain", {i}), i < chain.size() ? chain[i] : zero, Subgroup::p_power(g, i)));
  } else {
    r.add(skipped_clause("b:e-chain", "carrier too large to enumerate"));
  }

  // (c) {a^{∘p^i}} = p^iA
  if (b.enumerable()) {
    std::vector<Element> powers;
    powers.reserve(g.order());
    for (u64 x = 0; x < g.order(); ++x) powers.push_back(g.element_at(x));
    for (unsigned i = 0; i <= top; ++i) {
      if (i > 0)
        for (auto& x : powers) x = b.circle_pow(x, g.p());
      const Subgroup target = Subgroup::p_power(g, i);
      std::vector<std::uint8_t> hit(g.order(), 0);
      u64 distinct = 0;
      std::optional<Json> witness;
      for (u64 x = 0; x < g.order() && !witness; ++x) {
        if (!target.contains(powers[x])) {
          witness = Json{{"a", element_json(g, g.element_at(x))}, {"power", element_json(g, powers[x])}};
          break;
        }
        auto& h = hit[g.index_of(powers[x])];
        if (!h) {
          h = 1;
          ++distinct;
        }
      }
      if (!witness && distinct != target.size())
        witness = Json{{"image_size", distinct}, {"expected", target.size()}};
      Clause c = verdict_clause(indexed("c:circle-power-image", {i}), !witness, witness.value_or(Json()));
      c.checked = g.order();
      r.add(std::move(c));
    }
  } else {
    r.add(skipped_clause("c:circle-power-image", "carrier too large to enumerate"));
  }

  // (d) (p^iA)*ann(p^j) ⊆ ann(p^{j-i}), j ≥ i
  for (unsigned i = 1; i <= top; ++i) {
    const Subgroup left = Subgroup::p_power(g, i);
    for (unsigned j = i; j <= top; ++j) {
      const Subgroup ann = Subgroup::annihilator(g, j);
      const Subgroup target = Subgroup::annihilator(g, j - i);
      const auto& gens = ann.generators();
      auto o = sweep<2>({gens.size(), left.size()}, mode.reduced(), [&](const std::array<u64, 2>& t) -> std::optional<Json> {
        const Element x = left.element_at(t[1]);
        const Element s = b.star(x, gens[t[0]]);
        if (target.contains(s)) return std::nullopt;
        return Json{{"x", element_json(g, x)}, {"y", element_json(g, gens[t[0]])}, {"star", element_json(g, s)}};
      });
      r.add(clause_from(indexed("d:annihilator-product", {i, j}), o));
    }
  }

  // (e) (p^iA)*A^j ⊆ p^i A^{j+1}
  if (b.enumerable()) {
    const StarChain chain = star_power_chain(b);
    if (!chain.reached_zero) r.notices.push_back("star-power chain did not reach zero");
    const Subgroup zero = Subgroup::zero(g);
    const unsigned len = static_cast<unsigned>(chain.terms.size());
    for (unsigned i = 1; i < top; ++i) {
      const Subgroup left = Subgroup::p_power(g, i);
      for (unsigned j = 1; j <= len; ++j) {
        const Subgroup& aj = chain.terms[j - 1];
        const Subgroup target = (j < len ? chain.terms[j] : zero).scaled(i);
        const auto& gens = aj.generators();
        if (gens.empty()) continue;
        auto o = sweep<2>({gens.size(), left.size()}, mode.reduced(), [&](const std::array<u64, 2>& t) -> std::optional<Json> {
          const Element x = left.element_at(t[1]);
          const Element s = b.star(x, gens[t[0]]);
          if (target.contains(s)) return std::nullopt;
          return Json{{"x", element_json(g, x)}, {"y", element_json(g, gens[t[0]])}, {"star", element_json(g, s)}};
        });
        r.add(clause_from(indexed("e:star-power-product", {i, j}), o));
      }
    }
  } else {
    r.add(skipped_clause("e:star-power-product", "carrier too large to enumerate"));
  }

  // (f) (p^{j1}a1)*((p^{j2}a2)*x) ∈ p^{j1+j2}A; additive in x
  const auto gens = g.generators();
  for (unsigned j1 = 1; j1 < top; ++j1) {
    for (unsigned j2 = 1; j1 + j2 <= top; ++j2) {
      const Subgroup c1 = Subgroup::p_power(g, j1);
      const Subgroup c2 = Subgroup::p_power(g, j2);
      const Subgroup target = Subgroup::p_power(g, j1 + j2);
      auto o = sweep<3>({gens.size(), c2.size(), c1.size()}, mode.reduced(),
                        [&](const std::array<u64, 3>& t) -> std::optional<Json> {
                          const Element x1 = c1.element_at(t[2]);
                          const Element x2 = c2.element_at(t[1]);
                          const Element s = b.star(x1, b.star(x2, gens[t[0]]));
                          if (target.contains(s)) return std::nullopt;
                          return Json{{"c1", element_json(g, x1)}, {"c2", element_json(g, x2)},
                                      {"x", element_json(g, gens[t[0]])}};
                        });
      r.add(clause_from(indexed("f:nested-product", {j1, j2}), o));
    }
  }
  return r;
}

Report uniform_report(const Brace& b, unsigned k, std::optional<unsigned> alpha_opt, const SweepMode& mode) {
  const auto& g = b.group();
  Report r;
  r.title = "uniform";
  const bool uniform = g.uniform();
  const unsigned alpha = g.exponent(0);
  if (uniform) {
    for (unsigned i = 0; i <= alpha; ++i)
      r.add(same_set_clause(indexed("a:annihilator-is-p-power", {i}), Subgroup::annihilator(g, i),
                            Subgroup::p_power(g, alpha - i)));
  } else {
    r.add(skipped_clause("a:annihilator-is-p-power", "additive group is not uniform"));
    r.notices.push_back("non-uniform additive group: clauses (a)-(c) skipped");
  }

  if (g.p() > 3) {
    auto one = check_descent(b, DescentMode::property1prime, std::nullopt, mode);
    auto two = check_descent(b, DescentMode::property1doubleprime, std::nullopt, mode);
    std::string note = std::string("1' ") + (one.passed() ? "pass" : "fail") + ", 1'' " + (two.passed() ? "pass" : "fail");
    if (!uniform)
      r.add(skipped_clause("b:1'-implies-1''", "additive group is not uniform; " + note));
    else
      r.add(verdict_clause("b:1'-implies-1''", !one.passed() || two.passed(), Json{{"property-1''", two.to_json()}},
                           note));
  } else {
    r.add(skipped_clause("b:1'-implies-1''", "depth zero for p <= 3"));
  }

  if (uniform && 4 * k <= alpha)
    r.add(same_set_clause("c:annihilator-4k", Subgroup::annihilator(g, 4 * k), Subgroup::p_power(g, alpha - 4 * k)));
  else
    r.add(skipped_clause("c:annihilator-4k", uniform ? "4k exceeds the exponent" : "additive group is not uniform"));

  const auto exps = g.exponents();
  const unsigned least = *std::min_element(exps.begin(), exps.end());
  const unsigned a = alpha_opt.value_or(least);
  if (a > least) {
    r.add(skipped_clause("d:quotient-type", "alpha exceeds the least exponent"));
    return r;
  }
  try {
    Ideal ideal(b, Subgroup::p_power(g, a), mode);
    QuotientBrace q(b, ideal, SweepMode::sampled(mode.seed, 1000));
    auto type = q.additive_type();
    std::vector<unsigned> expected(static_cast<size_t>(g.rank()), a);
    Json w{{"type", type}, {"expected", expected}};
    r.add(verdict_clause(indexed("d:quotient-type", {a}), type == expected, w));
  } catch (const Error& e) {
    r.add(verdict_clause(indexed("d:quotient-type", {a}), false, Json{{"error", e.what()}},
                         "p^alpha A is not an ideal"));
  }
  return r;
}

}  // namespace bracelab
