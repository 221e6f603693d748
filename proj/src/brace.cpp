#include "bracelab/brace.hpp"

#include <boost/multiprecision/cpp_int.hpp>

namespace bracelab {

Brace::Brace(PrimePowerGroup group, std::shared_ptr<const StarRule> rule)
    : group_(std::move(group)), rule_(std::move(rule)) {
  if (!rule_) throw Error(ErrorCode::invalid_argument, "brace needs a star rule");
}

Element Brace::circle(const Element& a, const Element& b) const {
  return group_.add(group_.add(a, b), star(a, b));
}

Element Brace::lambda(const Element& a, const Element& b) const { return group_.add(b, star(a, b)); }

Element Brace::circle_pow(const Element& a, u64 m) const {
  Element result = group_.zero();
  Element base = a;
  while (m > 0) {
    if (m & 1) result = circle(result, base);
    m >>= 1;
    if (m) base = circle(base, base);
  }
  return result;
}

Element Brace::circle_inv(const Element& a) const {
  // (A,∘) has order |A| = p^n, so a^{∘(|A|-1)} is the inverse.
  return circle_pow(a, group_.order() - 1);
}

AdditiveMap Brace::lambda_of(const Element& a) const {
  const int r = group_.rank();
  std::vector<Element> images;
  images.reserve(r);
  for (int j = 0; j < r; ++j) images.push_back(lambda(a, group_.generator(j)));
  AdditiveMap map(group_, images);
  for (int i = 0; i < r; ++i) {
    for (int j = i; j < r; ++j) {
      Element s = group_.add(group_.generator(i), group_.generator(j));
      if (lambda(a, s) != map.apply(s))
        throw Error(ErrorCode::not_a_brace,
                    "lambda_" + group_.format(a) + " is not additive on generators " + std::to_string(i) +
                        "," + std::to_string(j));
    }
  }
  return map;
}

// ---------------------------------------------------------------------------

Element RingRule::star(const PrimePowerGroup& g, const Element& a, const Element& b) const {
  Element r;
  if (s_ >= g.exponent(0)) return r;
  const u64 m = g.modulus(0);
  r.c[0] = mul_mod(mul_mod(a.c[0], b.c[0], m), g.ppow(s_), m);
  return r;
}

Element HeisenbergRule::star(const PrimePowerGroup& g, const Element& a, const Element& b) const {
  Element r;
  r.c[0] = mul_mod(a.c[1], b.c[1], g.modulus(0));
  return r;
}

StarTableRule::StarTableRule(const PrimePowerGroup& g, std::vector<u64> table)
    : order_(g.order()), table_(std::move(table)) {
  if (table_.size() != order_ * order_)
    throw Error(ErrorCode::invalid_argument, "star table must have |A|^2 = " +
                                                 std::to_string(order_ * order_) + " entries");
  for (u64 v : table_)
    if (v >= order_) throw Error(ErrorCode::out_of_range, "star table entry out of range");
}

Element StarTableRule::star(const PrimePowerGroup& g, const Element& a, const Element& b) const {
  return g.element_at(table_[g.index_of(a) * order_ + g.index_of(b)]);
}

LambdaTableRule::LambdaTableRule(const PrimePowerGroup& g, std::vector<Element> rows)
    : rank_(g.rank()), rows_(std::move(rows)) {
  if (rows_.size() != g.order() * static_cast<u64>(rank_))
    throw Error(ErrorCode::invalid_argument, "lambda table must have |A|·rank rows");
  for (u64 a = 0; a < g.order(); ++a) {
    for (int j = 0; j < rank_; ++j) {
      const Element& img = rows_[a * rank_ + j];
      if (!g.valid(img)) throw Error(ErrorCode::out_of_range, "lambda table image out of range");
      if (g.order_log(img) > g.exponent(j))
        throw Error(ErrorCode::invalid_argument, "lambda table image order incompatible with generator");
    }
  }
}

Element LambdaTableRule::star(const PrimePowerGroup& g, const Element& a, const Element& b) const {
  const u64 row = g.index_of(a) * rank_;
  Element img = g.zero();
  for (int j = 0; j < rank_; ++j) img = g.add(img, g.scale(rows_[row + j], b.c[j]));
  return g.sub(img, b);
}

Element ProductRule::star(const PrimePowerGroup&, const Element& a, const Element& b) const {
  const int r1 = left_.group().rank();
  const int r2 = right_.group().rank();
  Element a1, b1, a2, b2;
  for (int j = 0; j < r1; ++j) {
    a1.c[j] = a.c[j];
    b1.c[j] = b.c[j];
  }
  for (int j = 0; j < r2; ++j) {
    a2.c[j] = a.c[r1 + j];
    b2.c[j] = b.c[r1 + j];
  }
  Element s1 = left_.star(a1, b1), s2 = right_.star(a2, b2);
  Element r;
  for (int j = 0; j < r1; ++j) r.c[j] = s1.c[j];
  for (int j = 0; j < r2; ++j) r.c[r1 + j] = s2.c[j];
  return r;
}

Brace tabulate(const Brace& b) {
  const auto& g = b.group();
  const u64 n = g.order();
  if (n > kTableLimit) throw Error(ErrorCode::intractable, "star table for order " + std::to_string(n));
  std::vector<u64> table(n * n);
  for (u64 x = 0; x < n; ++x) {
    Element a = g.element_at(x);
    for (u64 y = 0; y < n; ++y) table[x * n + y] = g.index_of(b.star(a, g.element_at(y)));
  }
  return Brace(g, std::make_shared<StarTableRule>(g, std::move(table)));
}

Brace to_lambda_table(const Brace& b) {
  const auto& g = b.group();
  if (g.order() > kEnumerationLimit)
    throw Error(ErrorCode::intractable, "lambda table for order " + std::to_string(g.order()));
  std::vector<Element> rows;
  rows.reserve(g.order() * g.rank());
  for (u64 x = 0; x < g.order(); ++x) {
    Element a = g.element_at(x);
    for (int j = 0; j < g.rank(); ++j) rows.push_back(b.lambda(a, g.generator(j)));
  }
  return Brace(g, std::make_shared<LambdaTableRule>(g, std::move(rows)));
}

std::optional<BraceTables> BraceTables::build(const Brace& b) {
  const auto& g = b.group();
  const u64 n = g.order();
  if (n > kTableLimit) return std::nullopt;
  BraceTables t;
  t.n = n;
  t.add.resize(n * n);
  t.circle.resize(n * n);
  t.neg.resize(n);
  std::vector<Element> elems(n);
  for (u64 x = 0; x < n; ++x) elems[x] = g.element_at(x);
  for (u64 x = 0; x < n; ++x) {
    t.neg[x] = static_cast<std::uint32_t>(g.index_of(g.neg(elems[x])));
    for (u64 y = 0; y < n; ++y) {
      t.add[x * n + y] = static_cast<std::uint32_t>(g.index_of(g.add(elems[x], elems[y])));
      Element s = b.star(elems[x], elems[y]);
      if (!g.valid(s)) throw Error(ErrorCode::not_a_brace, "star value outside the group");
      t.circle[x * n + y] = static_cast<std::uint32_t>(g.index_of(g.add(g.add(elems[x], elems[y]), s)));
    }
  }
  return t;
}

// ---------------------------------------------------------------------------

Json element_json(const PrimePowerGroup& g, const Element& a) {
  Json arr = Json::array();
  for (int j = 0; j < g.rank(); ++j) arr.push_back(a.c[j]);
  return arr;
}

namespace {

Json witness_of(const PrimePowerGroup& g, std::initializer_list<std::pair<const char*, Element>> items) {
  Json w;
  for (const auto& [k, v] : items) w[k] = element_json(g, v);
  return w;
}

}  // namespace

Report validate_brace(const Brace& b, const SweepMode& mode) {
  const auto& g = b.group();
  const u64 n = g.order();
  Report report;
  report.title = "axioms";
  auto tables = BraceTables::build(b);

  Clause additive;
  additive.name = "additive-group";
  additive.note = "coordinate group " + g.describe();
  report.add(additive);

  // Identity: a∘0 = 0∘a = a.
  const SweepMode linear = n <= kEnumerationLimit ? SweepMode::exhaustive() : mode;
  report.add(clause_from("identity", sweep<1>({n}, linear, [&](const std::array<u64, 1>& i) -> std::optional<Json> {
                           Element a = g.element_at(i[0]);
                           if (b.circle(a, g.zero()) != a || b.circle(g.zero(), a) != a)
                             return witness_of(g, {{"a", a}});
                           return std::nullopt;
                         })));

  if (tables) {
    const auto& t = *tables;
    // Exhaustive runs first try a plain loop; the generic sweep (which reports
    // the smallest failing tuple) only runs when that loop finds a failure.
    const bool direct = mode.resolve(n * n * n).is_exhaustive();
    std::vector<std::uint32_t> lam(n * n);
    for (u64 a = 0; a < n; ++a)
      for (u64 c = 0; c < n; ++c) lam[a * n + c] = t.lambda(a, c);
    auto all_triples = [n](auto&& ok) {
      for (u64 a = 0; a < n; ++a)
        for (u64 x = 0; x < n; ++x)
          for (u64 y = 0; y < n; ++y)
            if (!ok(a, x, y)) return false;
      return true;
    };
    auto triple_clause = [&](const char* name, auto&& ok) {
      if (direct && all_triples(ok)) {
        SweepOutcome o;
        o.mode = SweepMode::exhaustive();
        o.checked = n * n * n;
        report.add(clause_from(name, o));
        return;
      }
      report.add(clause_from(name, sweep<3>({n, n, n}, mode, [&](const std::array<u64, 3>& i) -> std::optional<Json> {
                               if (ok(i[0], i[1], i[2])) return std::nullopt;
                               return witness_of(g, {{"a", g.element_at(i[0])},
                                                     {"b", g.element_at(i[1])},
                                                     {"c", g.element_at(i[2])}});
                             })));
    };
    triple_clause("associativity", [&](u64 a, u64 x, u64 c) { return t.circ(t.circ(a, x), c) == t.circ(a, t.circ(x, c)); });
    report.add(clause_from("inverses", sweep<1>({n}, mode.resolve(n * n).is_exhaustive()
                                                         ? SweepMode::exhaustive()
                                                         : mode,
                                                [&](const std::array<u64, 1>& i) -> std::optional<Json> {
                                                  const u64 a = i[0];
                                                  for (u64 y = 0; y < n; ++y)
                                                    if (t.circ(a, y) == 0 && t.circ(y, a) == 0) return std::nullopt;
                                                  return witness_of(g, {{"a", g.element_at(a)}});
                                                })));
    triple_clause("distributivity", [&](u64 a, u64 x, u64 y) {
      return t.sum(t.circ(a, t.sum(x, y)), a) == t.sum(t.circ(a, x), t.circ(a, y));
    });
    triple_clause("lambda-multiplicativity",
                  [&](u64 a, u64 x, u64 c) { return lam[t.circ(a, c) * n + x] == lam[a * n + lam[c * n + x]]; });
  } else {
    report.add(clause_from("associativity", sweep<3>({n, n, n}, mode, [&](const std::array<u64, 3>& i)
                                                                        -> std::optional<Json> {
                             Element a = g.element_at(i[0]), x = g.element_at(i[1]), c = g.element_at(i[2]);
                             if (b.circle(b.circle(a, x), c) != b.circle(a, b.circle(x, c)))
                               return witness_of(g, {{"a", a}, {"b", x}, {"c", c}});
                             return std::nullopt;
                           })));
    report.add(clause_from("inverses", sweep<1>({n}, mode, [&](const std::array<u64, 1>& i)
                                                               -> std::optional<Json> {
                             Element a = g.element_at(i[0]);
                             Element y = b.circle_inv(a);
                             if (!g.is_zero(b.circle(a, y)) || !g.is_zero(b.circle(y, a)))
                               return witness_of(g, {{"a", a}});
                             return std::nullopt;
                           })));
    report.add(clause_from("distributivity", sweep<3>({n, n, n}, mode, [&](const std::array<u64, 3>& i)
                                                                         -> std::optional<Json> {
                             Element a = g.element_at(i[0]), x = g.element_at(i[1]), y = g.element_at(i[2]);
                             if (g.add(b.circle(a, g.add(x, y)), a) != g.add(b.circle(a, x), b.circle(a, y)))
                               return witness_of(g, {{"a", a}, {"b", x}, {"c", y}});
                             return std::nullopt;
                           })));
    report.add(clause_from("lambda-multiplicativity",
                           sweep<3>({n, n, n}, mode, [&](const std::array<u64, 3>& i) -> std::optional<Json> {
                             Element a = g.element_at(i[0]), x = g.element_at(i[1]), c = g.element_at(i[2]);
                             if (b.lambda(b.circle(a, c), x) != b.lambda(a, b.lambda(c, x)))
                               return witness_of(g, {{"a", a}, {"b", x}, {"c", c}});
                             return std::nullopt;
                           })));
  }
  return report;
}

Brace BraceCertifier::certify(Brace b, const SweepMode& mode) {
  Report r = validate_brace(b, mode);
  for (const auto& c : r.clauses) {
    if (c.failed())
      throw Error(ErrorCode::not_a_brace, c.name + " fails; witness " + c.witness.dump());
  }
  b.validated_ = true;
  return b;
}

// ---------------------------------------------------------------------------

std::vector<Element> e_chain(const Brace& b, const Element& a, const Element& y, int jmax) {
  std::vector<Element> out;
  out.reserve(jmax);
  Element cur = y;
  for (int i = 0; i < jmax; ++i) {
    cur = b.star(a, cur);
    out.push_back(cur);
  }
  return out;
}

std::vector<Element> diagonal_chain(const Brace& b, const Element& a, int jmax) {
  std::vector<Element> out;
  out.reserve(jmax);
  if (jmax <= 0) return out;
  out.push_back(a);
  for (int i = 1; i < jmax; ++i) out.push_back(b.star(a, out.back()));
  return out;
}

Element lambda_minus_identity_power(const Brace& b, const Element& a, const Element& y, int m) {
  AdditiveMap shifted = b.lambda_of(a).minus_identity();
  Element cur = y;
  for (int i = 0; i < m; ++i) cur = shifted.apply(cur);
  return cur;
}

Lemma14Check verify_lemma14(const Brace& b, const Element& a, const Element& y, u64 j) {
  const auto& g = b.group();
  const unsigned m = g.max_exponent();
  Lemma14Check out;
  out.circle_power = b.circle_pow(a, j);
  out.star_power = b.star(out.circle_power, y);
  out.circle_sum = g.zero();
  out.star_sum = g.zero();
  Element diag = a;          // e_i(a)
  Element chain = b.star(a, y);  // e_i'(a, y)
  for (u64 i = 1; i <= j; ++i) {
    if (g.is_zero(diag) && g.is_zero(chain)) break;
    const u64 c = binom_reduced(j, i, g.p(), m);
    out.circle_sum = g.add(out.circle_sum, g.scale(diag, c));
    out.star_sum = g.add(out.star_sum, g.scale(chain, c));
    diag = b.star(a, diag);
    chain = b.star(a, chain);
  }
  out.holds = out.circle_power == out.circle_sum && out.star_power == out.star_sum;
  return out;
}

}  // namespace bracelab
