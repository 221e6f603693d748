#include "bracelab/flows.hpp"

#include <map>
#include <mutex>

namespace bracelab {

namespace {

u64 p_scalar(const PrimePowerGroup& g, unsigned i) { return i >= g.max_exponent() ? 0 : g.ppow(i); }

u64 carrier_modulus(const PrimePowerGroup& g) { return g.rank() == 0 ? 1 : g.ppow(g.max_exponent()); }

u64 rational_residue(const Rational& r, u64 m) {
  using boost::multiprecision::cpp_int;
  cpp_int num = boost::multiprecision::numerator(r) % m;
  if (num < 0) num += m;
  const cpp_int den = boost::multiprecision::denominator(r) % m;
  auto inv = inv_mod(static_cast<u64>(den), m);
  if (!inv) throw Error(ErrorCode::factorial_not_invertible, "coefficient denominator not invertible");
  return mul_mod(static_cast<u64>(num), *inv, m);
}

}  // namespace

FlowContext::FlowContext(std::shared_ptr<const PreLieRing> ring, std::optional<int> class_bound)
    : ring_(std::move(ring)), c_(0) {
  const auto& g = ring_->group();
  const u64 p = g.p();
  const int computed = strong_nilpotency_class(*ring_, static_cast<int>(p));
  if (computed == 0 || computed >= static_cast<int>(p))
    throw Error(ErrorCode::class_bound, "pre-Lie ring is not strongly nilpotent of class below p = " + std::to_string(p));
  if (class_bound && *class_bound < computed)
    throw Error(ErrorCode::class_bound, "class bound " + std::to_string(*class_bound) + " is below the certified class " +
                                            std::to_string(computed));
  c_ = class_bound.value_or(computed);
  if (c_ >= static_cast<int>(p)) throw Error(ErrorCode::class_bound, "class bound must be below p");
  inv_fact_.assign(static_cast<size_t>(c_) + 1, 0);
  if (g.rank() > 0)
    for (int i = 0; i <= c_; ++i) inv_fact_[i] = inv_factorial(static_cast<u64>(i), p, g.max_exponent());
}

Element FlowContext::exp_of_left_mult(const Element& x, const Element& b) const {
  const auto& g = group();
  Element term = b, sum = b;
  for (int i = 1; i <= c_; ++i) {
    term = ring_->mul(x, term);
    sum = g.add(sum, g.scale(term, inv_fact_[i]));
  }
  return sum;
}

Element FlowContext::w(const Element& x) const {
  const auto& g = group();
  Element term = x, sum = x;
  // L_x^i(x) has i+1 factors, so terms with i ≥ c vanish
  for (int i = 1; i < c_; ++i) {
    term = ring_->mul(x, term);
    sum = g.add(sum, g.scale(term, inv_fact_[i + 1]));
  }
  return sum;
}

Element FlowContext::omega(const Element& a) const {
  const auto& g = group();
  Element om = a;
  for (int t = 0; t <= c_ + 1; ++t) {
    const Element v = w(om);
    if (v == a) return om;
    om = g.sub(om, g.sub(v, a));
  }
  throw Error(ErrorCode::flows_divergence, "W(Omega) != a after " + std::to_string(c_ + 1) + " steps at " + g.format(a));
}

Element FlowContext::compose(const Element& a, const Element& b) const {
  return group().add(a, exp_of_left_mult(omega(a), b));
}

Element FlowsRule::star(const PrimePowerGroup& g, const Element& a, const Element& b) const {
  return g.sub(g.sub(ctx_->compose(a, b), a), b);
}

Brace brace_from_prelie(std::shared_ptr<const FlowContext> ctx, const SweepMode& mode) {
  const auto& P = ctx->ring();
  if (P.size() != P.group().order())
    throw Error(ErrorCode::invalid_argument, "flows brace needs a product on the whole carrier");
  Brace b(P.group(), std::make_shared<FlowsRule>(std::move(ctx)));
  return certify_brace(std::move(b), mode);
}

// ---------------------------------------------------------------------------

int star_strong_class(const Brace& b, const BuildParams& params) {
  const auto& g = b.group();
  const Subgroup B = Subgroup::p_power(g, params.k);
  const int c = strong_nilpotency_bound(g, B, [&](const Element& x, const Element& y) { return b.star(x, y); }, false,
                                        static_cast<int>(params.p));
  return c > 0 && c < static_cast<int>(params.p) ? c : 0;
}

PreLieRing passage_product(const Brace& b, const BuildParams& params) {
  const auto& g = b.group();
  if (star_strong_class(b, params) == 0)
    throw Error(ErrorCode::class_bound, "p^kA is not strongly nilpotent of class below p");
  const u64 m = carrier_modulus(g);
  const u64 inv = *inv_mod((params.p - 1) % m, m);
  Brace copy = b;
  BuildParams prm = params;
  auto product = [copy, prm, inv](const Element& x, const Element& y) {
    return copy.group().scale(dot_product(copy, prm, x, y), inv);
  };
  return PreLieRing(g, product, PreLieRing::Provenance::passage, Subgroup::p_power(g, params.k));
}

Report verify_flows_roundtrip(const Brace& b, const BuildParams& params, const SweepMode& mode) {
  const auto& g = b.group();
  Report r;
  r.title = "flows roundtrip";
  std::shared_ptr<const PreLieRing> P;
  std::optional<FlowContext> ctx;
  try {
    P = std::make_shared<PreLieRing>(passage_product(b, params));
    ctx.emplace(P);
  } catch (const Error& e) {
    r.add(verdict_clause("class-bound", false, Json{{"error", e.what()}}));
    return r;
  }
  r.add(verdict_clause("class-bound", true, Json(), "class " + std::to_string(ctx->class_bound())));
  const Subgroup& B = P->domain();
  const u64 nb = B.size();
  auto ej = [&](const Element& x) { return element_json(g, x); };

  auto rt = sweep<2>({nb, nb}, mode, [&](const std::array<u64, 2>& t) -> std::optional<Json> {
    const Element x = B.element_at(t[1]), y = B.element_at(t[0]);
    const Element lhs = ctx->compose(x, y), rhs = b.circle(x, y);
    if (lhs == rhs) return std::nullopt;
    return Json{{"x", ej(x)}, {"y", ej(y)}, {"flows", ej(lhs)}, {"circle", ej(rhs)}};
  });
  r.add(clause_from("roundtrip", rt));

  auto id = sweep<1>({nb}, mode.reduced(), [&](const std::array<u64, 1>& t) -> std::optional<Json> {
    const Element x = B.element_at(t[0]);
    if (ctx->compose(g.zero(), x) == x && ctx->compose(x, g.zero()) == x) return std::nullopt;
    return Json{{"x", ej(x)}};
  });
  r.add(clause_from("identity", id));

  auto assoc = sweep<3>({nb, nb, nb}, mode, [&](const std::array<u64, 3>& t) -> std::optional<Json> {
    const Element x = B.element_at(t[2]), y = B.element_at(t[1]), z = B.element_at(t[0]);
    if (ctx->compose(ctx->compose(x, y), z) == ctx->compose(x, ctx->compose(y, z))) return std::nullopt;
    return Json{{"x", ej(x)}, {"y", ej(y)}, {"z", ej(z)}};
  });
  r.add(clause_from("associativity", assoc));

  auto scaling = sweep<2>({nb, nb}, mode, [&](const std::array<u64, 2>& t) -> std::optional<Json> {
    const Element x = B.element_at(t[1]), y = B.element_at(t[0]);
    if (dot_product(b, params, x, y) == g.scale(P->mul(x, y), params.p - 1)) return std::nullopt;
    return Json{{"x", ej(x)}, {"y", ej(y)}};
  });
  r.add(clause_from("dot-scaling", scaling));
  return r;
}

// ---------------------------------------------------------------------------

std::string StarExpansion::format(int tree) const {
  const MagmaNode& n = nodes[tree];
  if (n.left < 0) return tree == 0 ? "x" : "y";
  return "(" + format(n.left) + format(n.right) + ")";
}

namespace {

using Poly = std::map<int, Rational>;

class ExpansionBuilder {
 public:
  explicit ExpansionBuilder(StarExpansion& e) : e_(e) {
    e_.nodes = {MagmaNode{}, MagmaNode{}};
  }

  Poly mul(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ta, ca] : a)
      for (const auto& [tb, cb] : b) {
        if (e_.nodes[ta].degree + e_.nodes[tb].degree > e_.class_bound) continue;
        out[node(ta, tb)] += ca * cb;
      }
    return prune(std::move(out));
  }

  static Poly combine(const Poly& a, const Poly& b, const Rational& scale) {
    Poly out = a;
    for (const auto& [t, c] : b) out[t] += scale * c;
    return prune(std::move(out));
  }

 private:
  static Poly prune(Poly p) {
    for (auto it = p.begin(); it != p.end();) it = it->second == 0 ? p.erase(it) : std::next(it);
    return p;
  }
  int node(int l, int r) {
    auto [it, fresh] = intern_.try_emplace({l, r}, static_cast<int>(e_.nodes.size()));
    if (fresh) e_.nodes.push_back(MagmaNode{l, r, e_.nodes[l].degree + e_.nodes[r].degree});
    return it->second;
  }

  StarExpansion& e_;
  std::map<std::pair<int, int>, int> intern_;
};

StarExpansion build_expansion(int c) {
  StarExpansion e;
  e.class_bound = c;
  ExpansionBuilder mb(e);
  const Poly X{{0, Rational(1)}}, Y{{1, Rational(1)}};
  Rational fact = 1;
  std::vector<Rational> inv_fact{Rational(1)};
  for (int i = 1; i <= c + 1; ++i) {
    fact *= i;
    inv_fact.push_back(Rational(1) / fact);
  }
  auto W = [&](const Poly& om) {
    Poly sum = om, term = om;
    for (int i = 1; i < c; ++i) {
      term = mb.mul(om, term);
      sum = ExpansionBuilder::combine(sum, term, inv_fact[i + 1]);
    }
    return sum;
  };
  Poly om = X;
  for (int t = 0; t < c; ++t) om = ExpansionBuilder::combine(om, ExpansionBuilder::combine(W(om), X, -1), -1);
  if (!ExpansionBuilder::combine(W(om), X, -1).empty())
    throw Error(ErrorCode::internal, "symbolic inverse of W did not close");

  Poly star, term = Y;
  for (int i = 1; i <= c; ++i) {
    term = mb.mul(om, term);
    star = ExpansionBuilder::combine(star, term, inv_fact[i]);
  }
  for (const auto& [t, coef] : star) {
    if (e.nodes[t].degree < 2) throw Error(ErrorCode::internal, "star expansion has a linear term");
    e.terms.push_back(StarTerm{t, coef, e.nodes[t].degree});
  }
  return e;
}

}  // namespace

const StarExpansion& star_expansion(int class_bound) {
  static std::mutex mu;
  static std::map<int, std::unique_ptr<StarExpansion>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[class_bound];
  if (!slot) slot = std::make_unique<StarExpansion>(build_expansion(class_bound));
  return *slot;
}

namespace {

/// Per-term scalars of q' on the carrier, in term order (0 for vanishing terms).
std::vector<u64> q_prime_scales(const QuotientPreLie& q, const StarExpansion& e) {
  const auto& cg = q.carrier.group();
  std::vector<u64> scales(e.terms.size(), 0);
  if (cg.rank() == 0) return scales;
  const u64 m = carrier_modulus(cg);
  const u64 inv = *inv_mod((q.params.p - 1) % m, m);
  for (size_t t = 0; t < e.terms.size(); ++t) {
    const auto& term = e.terms[t];
    const u64 pk = p_scalar(cg, static_cast<unsigned>(term.degree) * q.params.k);
    if (pk == 0) continue;
    scales[t] = mul_mod(mul_mod(rational_residue(term.coefficient, m),
                                pow_mod(inv, static_cast<u64>(term.degree - 1), m), m),
                        pk, m);
  }
  return scales;
}

u64 q_prime_with(const QuotientPreLie& q, const StarExpansion& e, const std::vector<u64>& scales, u64 a, u64 b) {
  const auto& cg = q.carrier.group();
  if (cg.rank() == 0) return 0;
  Element sum;
  for (size_t t = 0; t < e.terms.size(); ++t) {
    if (scales[t] == 0) continue;
    const u64 v = e.evaluate(
        e.terms[t].tree, [&](int leaf) { return leaf == 0 ? a : b; },
        [&](u64 x, u64 y) { return q.bullet_at(x, y); });
    sum = cg.add(sum, cg.scale(cg.element_at(v), scales[t]));
  }
  return cg.index_of(sum);
}

}  // namespace

u64 q_prime(const QuotientPreLie& q, const StarExpansion& e, u64 a, u64 b) {
  return q_prime_with(q, e, q_prime_scales(q, e), a, b);
}

Report verify_main_recovery(const Brace& b, const BuildParams& params, const SweepMode& mode, std::vector<u64> seeds) {
  const auto& g = b.group();
  Report r;
  r.title = "recovery";
  QuotientPreLieOptions opts;
  opts.comparison_seeds = {};
  opts.check = mode;
  const QuotientPreLie q = build_quotient_prelie(b, params, opts);
  r.append(q.checks, "build:");
  for (const auto& n : q.notices) r.notices.push_back(n);

  const int c = star_strong_class(b, params);
  if (c == 0) {
    r.add(verdict_clause("class-bound", false, Json{{"error", "p^kA is not strongly nilpotent of class below p"}}));
    return r;
  }
  const StarExpansion& e = star_expansion(c);
  const Carrier& car = q.carrier;
  const auto& cg = car.group();
  const u64 N = q.size();
  const unsigned k = params.k;
  const u64 pk = p_scalar(g, k);

  // the expansion reproduces * on B through the passage product
  {
    const PreLieRing P = passage_product(b, params);
    const Subgroup& B = P.domain();
    std::vector<u64> coefs;
    for (const auto& term : e.terms) coefs.push_back(rational_residue(term.coefficient, carrier_modulus(g)));
    auto o = sweep<2>({B.size(), B.size()}, mode, [&](const std::array<u64, 2>& t) -> std::optional<Json> {
      const Element x = B.element_at(t[1]), y = B.element_at(t[0]);
      Element sum;
      for (size_t j = 0; j < e.terms.size(); ++j) {
        const auto& term = e.terms[j];
        const u64 coef = coefs[j];
        const Element v = e.evaluate(
            term.tree, [&](int leaf) { return leaf == 0 ? x : y; },
            [&](const Element& u, const Element& w) { return P.mul(u, w); });
        sum = g.add(sum, g.scale(v, coef));
      }
      if (sum == b.star(x, y)) return std::nullopt;
      return Json{{"x", element_json(g, x)}, {"y", element_json(g, y)}};
    });
    r.add(clause_from("expansion", o, std::to_string(e.terms.size()) + " terms up to degree " + std::to_string(c)));
  }

  // [T_dot(p^k a, p^k b)] = p^{dk} T_•([a],[b]) for d ≤ 4
  for (const auto& term : e.terms) {
    if (term.degree > 4) continue;
    const u64 scale = p_scalar(cg, static_cast<unsigned>(term.degree) * k);
    auto o = sweep<2>({N, N}, mode, [&](const std::array<u64, 2>& t) -> std::optional<Json> {
      const Element x = g.scale(car.lift(cg.element_at(t[1])), pk);
      const Element y = g.scale(car.lift(cg.element_at(t[0])), pk);
      const Element lhs = car.reduce(e.evaluate(
          term.tree, [&](int leaf) { return leaf == 0 ? x : y; },
          [&](const Element& u, const Element& w) { return dot_product(b, params, u, w); }));
      const u64 v = e.evaluate(
          term.tree, [&](int leaf) { return leaf == 0 ? t[1] : t[0]; },
          [&](u64 u, u64 w) { return q.bullet_at(u, w); });
      const Element rhs = cg.scale(cg.element_at(v), scale);
      if (lhs == rhs) return std::nullopt;
      return Json{{"a", t[1]}, {"b", t[0]}, {"tree", e.format(term.tree)}};
    });
    r.add(clause_from("degree-scaling" + e.format(term.tree), o));
  }

  const u64 p2k = p_scalar(cg, 2 * k);
  const std::vector<u64> scales = q_prime_scales(q, e);
  auto i = sweep<2>({N, N}, mode.reduced(), [&](const std::array<u64, 2>& t) -> std::optional<Json> {
    const Element lhs = cg.scale(cg.element_at(q.odot_at(t[1], t[0])), p2k);
    const u64 rhs = q_prime_with(q, e, scales, t[1], t[0]);
    if (cg.index_of(lhs) == rhs) return std::nullopt;
    return Json{{"a", t[1]}, {"b", t[0]}, {"lhs", cg.index_of(lhs)}, {"q_prime", rhs}};
  });
  r.add(clause_from("i:q-prime-bridge", i));

  if (cg.rank() > 0) {
    const PullbackSection sect(cg, k);
    const Subgroup ann = Subgroup::annihilator(cg, 2 * k);
    auto ii = sweep<2>({N, N}, mode.reduced(), [&](const std::array<u64, 2>& t) -> std::optional<Json> {
      const Element qp = cg.element_at(q_prime_with(q, e, scales, t[1], t[0]));
      Json w{{"a", t[1]}, {"b", t[0]}, {"q_prime", element_json(cg, qp)}};
      try {
        const Element rec = sect(sect(qp));
        if (ann.contains(cg.sub(rec, cg.element_at(q.odot_at(t[1], t[0]))))) return std::nullopt;
        w["recovered"] = element_json(cg, rec);
      } catch (const Error& err) {
        w["error"] = err.what();
      }
      return w;
    });
    r.add(clause_from("ii:odot-recovery", ii));
  } else {
    r.add(verdict_clause("ii:odot-recovery", true, Json(), "trivial carrier"));
  }

  for (u64 seed : seeds) {
    const auto [odot2, bullet2] = quotient_tables(b, params, car, PullbackSection::random(g, k, seed), seed);
    std::optional<Json> w;
    for (u64 x = 0; x < N * N && !w; ++x)
      if (odot2[x] != q.odot[x] || bullet2[x] != q.bullet[x]) w = Json{{"a", x / N}, {"b", x % N}, {"seed", seed}};
    Clause cl = verdict_clause("iii:determinism(" + std::to_string(seed) + ")", !w, w.value_or(Json()),
                               "random section and shifted representatives");
    cl.checked = N * N;
    r.add(std::move(cl));
  }
  return r;
}

}  // namespace bracelab
