#include <set>

#include "bracelab/filtration.hpp"
#include "bracelab/generators.hpp"
#include "doctest.h"

using namespace bracelab;

namespace {

bool same(const Subgroup& s, const Subgroup& t) { return s.same_set(t); }

// Membership oracle for p^i Z/p^alpha.
Subgroup multiples(const PrimePowerGroup& g, unsigned i) { return Subgroup::p_power(g, i); }

Subgroup span_of(const PrimePowerGroup& g, const std::vector<Element>& xs) {
  SpanBuilder s(g);
  for (const auto& x : xs) s.add(x);
  return s.finish(Subgroup::Tag::custom);
}

}  // namespace

TEST_SUITE("filtration") {
  TEST_CASE("E-chains") {
    const Brace t = gen_trivial(5, {4});
    const auto et = e_subgroup_chain(t);
    REQUIRE(et.size() >= 5);
    for (unsigned i = 0; i <= 4; ++i) CHECK(same(et[i], multiples(t.group(), i)));

    const Brace b = gen_ring_brace(5, 4, 1);
    const auto eb = e_subgroup_chain(b);
    REQUIRE(eb.size() >= 5);
    for (unsigned i = 0; i <= 4; ++i) CHECK(same(eb[i], multiples(b.group(), i)));
    CHECK(eb[4].size() == 1);
    for (size_t i = 0; i + 1 < eb.size(); ++i) CHECK(eb[i + 1].subset_of(eb[i]));
  }

  TEST_CASE("star-power chains") {
    const Brace t = gen_trivial(5, {2});
    CHECK(star_power_chain(t).at(2).size() == 1);

    const Brace b = gen_ring_brace(5, 4, 1);
    const StarChain c = star_power_chain(b);
    CHECK(c.reached_zero);
    for (unsigned j = 1; j <= 5; ++j) CHECK(same(c.at(j), multiples(b.group(), j - 1)));

    const Brace h = gen_heisenberg(5);
    const auto& g = h.group();
    const StarChain ch = star_power_chain(h);
    const std::vector<u64> x{1, 0};
    CHECK(same(ch.at(2), span_of(g, {g.from_coords(x)})));
    CHECK(ch.at(3).size() == 1);
    for (unsigned j = 1; j < ch.terms.size(); ++j) CHECK(ch.at(j + 1).subset_of(ch.at(j)));
  }

  TEST_CASE("Q chains") {
    const Brace b = gen_ring_brace(5, 4, 1);
    const auto& g = b.group();
    CHECK(same(q_chain(b, 0, 2), Subgroup::annihilator(g, 2)));
    CHECK(same(q_chain(b, 1, 2), multiples(g, 3)));
    // oracle: span of a*x over all a and x in ann(25)
    std::vector<Element> prods;
    for (u64 a = 0; a < 625; ++a)
      for (u64 x = 0; x < 625; x += 25) prods.push_back(b.star(g.element_at(a), g.element_at(x)));
    CHECK(same(q_chain(b, 1, 2), span_of(g, prods)));
    const Brace t = gen_trivial(5, {3});
    CHECK(q_chain(t, 1, 2).size() == 1);
    CHECK(q_chain(t, 3, 1).size() == 1);
  }

  TEST_CASE("descent checks") {
    const Brace t = gen_trivial(7, {2, 1});
    for (auto m : {DescentMode::property1, DescentMode::property1prime, DescentMode::property1doubleprime,
                   DescentMode::engel})
      CHECK(check_descent(t, m).passed());

    const Brace b = gen_ring_brace(5, 4, 1);
    const PropertyReport one = check_descent(b, DescentMode::property1prime);
    CHECK(one.depth == 1);
    CHECK(one.passed());
    CHECK(check_descent(b, DescentMode::property1doubleprime).passed());
    CHECK(check_descent(b, DescentMode::property1, std::nullopt, SweepMode::exhaustive()).passed());

    const Brace h = gen_heisenberg(5);
    const PropertyReport hp = check_descent(h, DescentMode::property1prime, std::nullopt, SweepMode::exhaustive());
    REQUIRE_FALSE(hp.passed());
    const Clause& left = hp.report.at("left-descent");
    CHECK(left.witness.at("a") == Json::array({0, 1}));
    CHECK(left.witness.at("b") == Json::array({0, 1}));

    CHECK_THROWS_AS(check_descent(gen_trivial(3, {1}), DescentMode::property1prime), Error);
    CHECK(default_depth(DescentMode::property1, 7) == 3);
    CHECK(default_depth(DescentMode::property1prime, 13) == 3);
    CHECK(parse_descent_mode("1''") == DescentMode::property1doubleprime);
    CHECK(to_string(DescentMode::property1prime) == "property-1'");
  }

  TEST_CASE("sampled and exhaustive descent agree with a naive sweep over all pairs") {
    for (const Brace& b : {gen_ring_brace(7, 2, 1), gen_heisenberg(7), gen_ring_brace(5, 3, 2)}) {
      const auto& g = b.group();
      const int m = default_depth(DescentMode::property1, b.p());
      bool naive = true;
      for (u64 a = 0; a < g.order(); ++a)
        for (u64 y = 0; y < g.order(); ++y)
          naive = naive && g.in_p_power(e_chain(b, g.element_at(a), g.element_at(y), m).back(), 1);
      for (u64 a = 0; a < g.order(); ++a)
        naive = naive && g.in_p_power(diagonal_chain(b, g.element_at(a), m + 1).back(), 1);
      CHECK(check_descent(b, DescentMode::property1, m, SweepMode::exhaustive()).passed() == naive);
    }
  }

  TEST_CASE("ideal lattice") {
    CHECK(verify_ideal_lattice(gen_trivial(5, {2, 1})).passed());
    const Report r = verify_ideal_lattice(gen_ring_brace(5, 4, 1), SweepMode::exhaustive());
    CHECK(r.passed());
    CHECK(r.find("b:e-chain(2)") != nullptr);
  }

  TEST_CASE("uniform report") {
    const Report r = uniform_report(gen_ring_brace(5, 4, 1), 1);
    CHECK(r.passed());
    const Report s = uniform_report(gen_ring_brace(7, 6, 1), 1);
    CHECK(s.passed());
    CHECK(s.at("c:annihilator-4k").verdict == Verdict::pass);
    const Brace t = gen_trivial(5, {3, 2});
    const Report u = uniform_report(t, 1, 2);
    CHECK(u.passed());
    CHECK(u.at("a:annihilator-is-p-power").verdict == Verdict::skipped);
    CHECK(u.at("d:quotient-type(2)").verdict == Verdict::pass);
  }

  TEST_CASE("uniform groups: 1' implies 1'' on random ring braces") {
    for (u64 draw = 0; draw < 20; ++draw) {
      const u64 p = draw % 2 ? 7 : 5;
      const unsigned alpha = 1 + static_cast<unsigned>(mix64(draw) % 4);
      const unsigned s = 1 + static_cast<unsigned>(mix64(draw + 100) % 3);
      const Brace b = gen_ring_brace(p, alpha, s);
      CAPTURE(p);
      CAPTURE(alpha);
      CAPTURE(s);
      const bool one = check_descent(b, DescentMode::property1prime).passed();
      const bool two = check_descent(b, DescentMode::property1doubleprime).passed();
      CHECK((!one || two));
    }
  }
}
