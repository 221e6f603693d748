// Acceptance run: one line per criterion, exit status 1 if any criterion fails.
// `bracelab_acceptance 6 10` runs a subset.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "bracelab/filtration.hpp"
#include "bracelab/flows.hpp"
#include "bracelab/generators.hpp"
#include "bracelab/prelie.hpp"
#include "bracelab/enumerate.hpp"

using namespace bracelab;

namespace {

struct Outcome {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      detail << " [failed: " << what << "]";
    }
  }
  void require_report(const Report& r, const std::string& what) {
    if (r.passed()) return;
    for (const auto& c : r.clauses)
      if (c.failed()) require(false, what + " / " + c.name + " witness " + c.witness.dump());
  }
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<void(Outcome&)> run;
};

Element z(const PrimePowerGroup& g, u64 v) { return g.element_at(v % g.order()); }

u64 exhaustive_count(const Report& r, const std::string& clause) {
  const Clause* c = r.find(clause);
  return c && c->mode.is_exhaustive() ? c->checked : 0;
}

void axioms(Outcome& o) {
  for (const auto& [name, b] : std::vector<std::pair<std::string, Brace>>{
           {"trivial(5,[4])", gen_trivial(5, {4})}, {"ring(5,4,1)", gen_ring_brace(5, 4, 1)}, {"heisenberg(5)", gen_heisenberg(5)}}) {
    const auto t0 = std::chrono::steady_clock::now();
    const Report r = validate_brace(b, SweepMode::exhaustive());
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require_report(r, name);
    o.require(s < 5, name + " under 5 s");
    o.detail << " " << name << " " << std::fixed;
    o.detail.precision(2);
    o.detail << s << "s;";
  }
  const Brace raw(PrimePowerGroup(5, {4}), std::make_shared<RingRule>(0));
  const Report bad = validate_brace(raw, SweepMode::exhaustive());
  const Clause& inv = bad.at("inverses");
  o.require(inv.failed(), "ring(5,4,0) rejected");
  if (inv.failed()) {
    const Element a = raw.group().from_coords(inv.witness.at("a").get<std::vector<u64>>());
    bool has_inverse = false;
    for (u64 y = 0; y < 625; ++y) has_inverse = has_inverse || raw.group().is_zero(raw.circle(a, z(raw.group(), y)));
    o.require(!has_inverse, "witness has no circle inverse");
    o.detail << " ring(5,4,0) witness a = " << raw.group().format(a);
  }
  bool threw = false;
  try {
    gen_ring_brace(5, 4, 0);
  } catch (const Error& e) {
    threw = e.code() == ErrorCode::not_a_brace;
  }
  o.require(threw, "gen_ring_brace(5,4,0) raises not-a-brace");
}

void circle_powers(Outcome& o) {
  const Brace b = gen_ring_brace(5, 4, 1);
  const auto& g = b.group();
  u64 checks = 0;
  for (u64 a = 0; a < 625; ++a)
    for (u64 y : {0, 1, 1 + 5 + 25 + 125, 2 + 3 * 5 + 4 * 125})
      for (u64 j = 1; j <= 25; ++j) {
        const auto r = verify_lemma14(b, z(g, a), z(g, y), j);
        if (!r.holds) o.require(false, "a=" + std::to_string(a) + " y=" + std::to_string(y) + " j=" + std::to_string(j));
        ++checks;
      }
  o.detail << " " << checks << " (a, y, j) triples, all coefficients 1";
}

void e_chain_check(Outcome& o) {
  const Brace b = gen_ring_brace(5, 4, 1);
  const auto& g = b.group();
  const auto chain = e_subgroup_chain(b);
  o.require(chain.size() >= 5, "E-chain reaches E_4");
  for (unsigned i = 0; i <= 4 && i < chain.size(); ++i) {
    o.require(same_set_clause("E", chain[i], Subgroup::p_power(g, i)).verdict == Verdict::pass,
              "E_" + std::to_string(i) + " = 5^" + std::to_string(i) + "A");
    o.require(!check_ideal(b, Subgroup::p_power(g, i), SweepMode::exhaustive(), "ideal").failed(),
              "5^" + std::to_string(i) + "A is an ideal");
  }
  o.detail << " E_i = 5^iA and ideals for i = 0..4";
}

void lattice(Outcome& o) {
  const Report r5 = verify_ideal_lattice(gen_ring_brace(5, 4, 1), SweepMode::exhaustive());
  o.require_report(r5, "ring(5,4,1) exhaustive");
  const Report r7 = verify_ideal_lattice(gen_ring_brace(7, 6, 1), SweepMode::automatic(kDefaultSeed, 100000));
  o.require_report(r7, "ring(7,6,1)");
  u64 least = ~u64{0};
  for (const auto& c : r7.clauses)
    if (c.verdict == Verdict::pass && !c.mode.is_exhaustive()) least = std::min(least, c.checked);
  if (least != ~u64{0}) o.require(least >= 100000, "sampled clauses use at least 1e5 tuples");
  o.detail << " " << r5.clauses.size() << " clauses (5-adic), " << r7.clauses.size() << " clauses (7-adic)";
}

void properties(Outcome& o) {
  for (const auto& [name, b] : std::vector<std::pair<std::string, Brace>>{{"ring(5,4,1)", gen_ring_brace(5, 4, 1)},
                                                                          {"ring(7,6,1)", gen_ring_brace(7, 6, 1)}}) {
    o.require(check_descent(b, DescentMode::property1prime, std::nullopt, SweepMode::exhaustive()).passed(), name + " 1'");
    o.require(check_descent(b, DescentMode::property1doubleprime, std::nullopt, SweepMode::exhaustive()).passed(),
              name + " 1''");
  }
  const PropertyReport h = check_descent(gen_heisenberg(5), DescentMode::property1prime, std::nullopt, SweepMode::exhaustive());
  const Clause& left = h.report.at("left-descent");
  o.require(left.failed(), "heisenberg(5) fails 1'");
  o.require(left.witness.value("a", Json()) == Json::array({0, 1}) && left.witness.value("b", Json()) == Json::array({0, 1}),
            "witness ((0,1),(0,1))");

  std::vector<Brace> corpus{gen_trivial(5, {4}), gen_ring_brace(5, 4, 1), gen_ring_brace(7, 6, 1), gen_heisenberg(5),
                            gen_heisenberg(7), gen_trivial(7, {2, 2})};
  for (u64 draw = 0; draw < 20; ++draw) {
    const u64 p = draw % 3 == 0 ? 11 : (draw % 3 == 1 ? 5 : 7);
    const unsigned alpha = 1 + static_cast<unsigned>(mix64(draw + 1) % 5);
    const unsigned s = 1 + static_cast<unsigned>(mix64(draw + 77) % alpha);
    corpus.push_back(gen_ring_brace(p, alpha, s));
  }
  u64 applicable = 0;
  for (const auto& b : corpus) {
    if (!b.group().uniform()) continue;
    const bool one = check_descent(b, DescentMode::property1prime).passed();
    const bool two = check_descent(b, DescentMode::property1doubleprime).passed();
    applicable += one;
    o.require(!one || two, "1' implies 1'' on " + b.group().describe() + " (" + b.rule().kind() + ")");
  }
  o.detail << " uniform 1' => 1'' on " << applicable << " of " << corpus.size() << " braces with 1'";
}

void quotient_ring(Outcome& o) {
  const Brace b = gen_ring_brace(7, 6, 1);
  const BuildParams params = BuildParams::make(b.group(), 1u);
  QuotientPreLieOptions opts;
  opts.comparison_seeds = {1, 2, 3};
  const QuotientPreLie q = build_quotient_prelie(b, params, opts);
  o.require_report(q.checks, "build");
  o.require(q.size() == 2401, "2401 cosets");
  const u64 one = q.carrier.class_of(z(b.group(), 1));
  o.require(q.bullet_at(one, one) == q.carrier.class_of(z(b.group(), 42)), "[1]•[1] = 42");
  for (u64 seed : {1, 2, 3}) {
    const Clause* c = q.checks.find("section-independence(random:" + std::to_string(seed) + ")");
    o.require(c && c->verdict == Verdict::pass && c->checked == 2401 * 2401,
              "random section " + std::to_string(seed) + " gives identical tables");
  }
  const Report ax = verify_prelie_axioms(q.ring(), SweepMode::automatic(kDefaultSeed, 1000000));
  o.require_report(ax, "pre-Lie axioms");
  const Clause& id = ax.at("pre-lie-identity");
  o.require(id.checked == 1000000, "identity on 1e6 triples");
  o.require(ax.at("left-additivity").mode.is_exhaustive() && ax.at("right-additivity").mode.is_exhaustive(),
            "bi-additivity exhaustive on generators");
  o.detail << " 2401 cosets, [1]•[1] = " << q.bullet_at(one, one) << ", identity on " << id.checked << " triples";
}

void fmap(Outcome& o) {
  for (const auto& [b, cosets] : std::vector<std::pair<Brace, u64>>{{gen_ring_brace(7, 6, 1), 2401}, {gen_ring_brace(5, 4, 1), 25}}) {
    const BuildParams params = BuildParams::make(b.group());
    const PullbackSection s(b.group(), params.k);
    const FMap f = f_map(b, params, s, SweepMode::exhaustive());
    o.require(f.carrier.size() == cosets, "coset count");
    std::set<std::uint32_t> image(f.image.begin(), f.image.end());
    o.require(image.size() == cosets, "f bijective on " + std::to_string(cosets) + " cosets");
    o.require_report(verify_f_injective(b, params, s, SweepMode::exhaustive()), "f-map report");
  }
  o.detail << " bijections on 2401 and 25 cosets";
}

void nilpotency(Outcome& o) {
  std::vector<Brace> corpus{gen_ring_brace(5, 4, 1), gen_ring_brace(7, 6, 1), gen_trivial(5, {4}), gen_trivial(7, {6}),
                            gen_heisenberg(5), gen_heisenberg(7),
                            gen_direct_product(gen_ring_brace(5, 4, 1), gen_trivial(5, {1})),
                            gen_ring_brace(7, 5, 2), gen_ring_brace(11, 4, 1)};
  for (const auto& b : corpus) {
    const BuildParams params = BuildParams::make(b.group());
    const QuotientPreLie q = build_quotient_prelie(b, params);
    const int index = left_nilpotency_index(q.ring());
    const std::string name = b.group().describe() + " (" + b.rule().kind() + ")";
    o.require(index >= 2 && index <= static_cast<int>(params.n) + 1, "index <= n+1 on " + name);
    o.require_report(nilpotency_report(b, q), name);
  }
  const Brace r = gen_ring_brace(5, 4, 1);
  const int idx = left_nilpotency_index(build_quotient_prelie(r, BuildParams::make(r.group())).ring());
  o.require(idx == 3, "index 3 for ring(5,4,1)");
  o.detail << " " << corpus.size() << " corpus rings, ring(5,4,1) index " << idx;
}

void roundtrip(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const Brace b5 = gen_ring_brace(5, 4, 1);
  const Report r5 = verify_flows_roundtrip(b5, BuildParams::make(b5.group()), SweepMode::exhaustive());
  o.require_report(r5, "B = 5A");
  o.require(exhaustive_count(r5, "roundtrip") == 125 * 125, "all 125^2 pairs");
  o.require(exhaustive_count(r5, "dot-scaling") == 125 * 125, "dot = 4·passage on all pairs");
  const Brace b7 = gen_ring_brace(7, 6, 1);
  const BuildParams p7 = BuildParams::make(b7.group());
  const Report r7 = verify_flows_roundtrip(b7, p7, SweepMode::sampled(kDefaultSeed, 100000));
  o.require_report(r7, "B = 7A");
  o.require(r7.at("roundtrip").checked == 100000, "1e5 sampled pairs");
  const double roundtrip_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  o.require(roundtrip_seconds < 120, "roundtrips within 120 s");
  // dot = 6·passage as full tables on B = 7A
  const PreLieRing P = passage_product(b7, p7);
  const Subgroup& B = P.domain();
  u64 mismatches = 0;
  for (u64 x = 0; x < B.size(); ++x)
    for (u64 y = 0; y < B.size(); ++y) {
      const Element ex = B.element_at(x), ey = B.element_at(y);
      mismatches += !(dot_product(b7, p7, ex, ey) == b7.group().scale(P.mul(ex, ey), 6));
    }
  o.require(mismatches == 0, "dot = 6·passage on all of B x B");
  o.detail << " 15625 + 1e5 roundtrip pairs in " << static_cast<int>(roundtrip_seconds) << " s, " << B.size() * B.size()
           << " dot/passage pairs";
}

void recovery(Outcome& o) {
  const Brace b = gen_ring_brace(7, 6, 1);
  const Report r = verify_main_recovery(b, BuildParams::make(b.group(), 1u), SweepMode::automatic(), {2, 3, 5});
  o.require_report(r, "ring(7,6,1)");
  o.require(exhaustive_count(r, "i:q-prime-bridge") == 2401ULL * 2401, "(i) on all pairs");
  o.require(exhaustive_count(r, "ii:odot-recovery") == 2401ULL * 2401, "(ii) on all pairs");
  for (u64 s : {2, 3, 5}) o.require(r.at("iii:determinism(" + std::to_string(s) + ")").verdict == Verdict::pass, "(iii)");
  const Brace b5 = gen_ring_brace(5, 4, 1);
  const Report r5 = verify_main_recovery(b5, BuildParams::make(b5.group()), SweepMode::exhaustive());
  o.require_report(r5, "ring(5,4,1)");
  bool flagged = false;
  for (const auto& n : r5.notices) flagged = flagged || n.rfind("degenerate-depth", 0) == 0;
  o.require(flagged, "p = 5 flagged degenerate");
  o.detail << " 2401^2 pairs for (i) and (ii), 3 reseeded rebuilds; p = 5 degenerate flagged";
}

void enumeration(Outcome& o) {
  const Enumeration e = enumerate_small(5, {1});
  o.require(e.complete && e.count == 1, "exactly 1 brace on Z/5");
  const Enumeration a = enumerate_small(3, {1, 1}), b = enumerate_small(3, {1, 1});
  bool same = a.complete && b.complete && a.count == b.count && a.nodes == b.nodes;
  for (size_t i = 0; same && i < a.braces.size(); ++i) {
    const auto& g = a.braces[i].group();
    for (u64 x = 0; x < g.order(); ++x)
      for (u64 y = 0; y < g.order(); ++y)
        same = same && a.braces[i].star(g.element_at(x), g.element_at(y)) == b.braces[i].star(g.element_at(x), g.element_at(y));
  }
  o.require(same, "identical double run on C_3 + C_3");
  o.detail << " Z/5: " << e.count << " brace; C_3 + C_3: " << a.count << " lambda tables twice";
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {1, "axioms", 15, axioms},
      {2, "circle-power expansion", 30, circle_powers},
      {3, "E-chain equals p-power chain", 60, e_chain_check},
      {4, "ideal lattice", 120, lattice},
      {5, "descent properties", 600, properties},
      {6, "quotient pre-Lie ring", 300, quotient_ring},
      {7, "f-map bijection", 60, fmap},
      {8, "left nilpotency", 600, nilpotency},
      {9, "flows roundtrip", 900, roundtrip},
      {10, "recovery identities", 600, recovery},
      {11, "enumeration oracle", 60, enumeration},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::stoi(argv[i]));
  bool all_ok = true;
  for (const auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      c.run(o);
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (s > c.budget_seconds) o.require(false, "time budget " + std::to_string(static_cast<int>(c.budget_seconds)) + " s");
    all_ok = all_ok && o.ok;
    std::printf("criterion %2d %s  %-30s %7.1fs %s\n", c.id, o.ok ? "PASS" : "FAIL", c.title.c_str(), s,
                o.detail.str().c_str());
    std::fflush(stdout);
  }
  return all_ok ? 0 : 1;
}
