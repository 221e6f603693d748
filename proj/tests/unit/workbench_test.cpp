#include <set>

#include "bracelab/documents.hpp"
#include "bracelab/enumerate.hpp"
#include "bracelab/flows.hpp"
#include "bracelab/generators.hpp"
#include "bracelab/suite.hpp"
#include "doctest.h"

using namespace bracelab;

namespace {

std::vector<u64> star_table(const Brace& b) {
  const auto& g = b.group();
  std::vector<u64> t;
  for (u64 x = 0; x < g.order(); ++x)
    for (u64 y = 0; y < g.order(); ++y) t.push_back(g.index_of(b.star(g.element_at(x), g.element_at(y))));
  return t;
}

// Brute-force oracle on Z/p: λ_a is multiplication by a unit u_a, so a brace
// is a map a ↦ u_a; count the maps whose circle passes every axiom.
u64 cyclic_prime_oracle(u64 p) {
  const PrimePowerGroup g(p, {1});
  u64 total = 1;
  for (u64 i = 0; i < p; ++i) total *= p - 1;
  u64 found = 0;
  for (u64 code = 0; code < total; ++code) {
    std::vector<u64> unit(p);
    u64 c = code;
    for (u64 a = 0; a < p; ++a) {
      unit[a] = 1 + c % (p - 1);
      c /= p - 1;
    }
    std::vector<u64> table(p * p);
    for (u64 a = 0; a < p; ++a)
      for (u64 b = 0; b < p; ++b) table[a * p + b] = (unit[a] * b + p - b) % p;
    found += validate_brace(Brace(g, std::make_shared<StarTableRule>(g, table)), SweepMode::exhaustive()).passed();
  }
  return found;
}

Json ring_doc() { return Json::parse(R"({"format":"brace-v1","p":5,"exponents":[4],"op":{"kind":"ring","s":1}})"); }

}  // namespace

TEST_SUITE("workbench") {
  TEST_CASE("generators validate their output") {
    CHECK(gen_trivial(5, {1}).group().order() == 5);
    CHECK(gen_trivial(7, {6}).validated());
    CHECK(gen_ring_brace(7, 6, 1).validated());
    CHECK(gen_heisenberg(7).group().order() == 49);
    CHECK_THROWS_AS(gen_heisenberg(2), Error);
    const Brace prod = gen_direct_product(gen_ring_brace(5, 4, 1), gen_trivial(5, {1}));
    CHECK(prod.group().order() == 3125);
    CHECK(prod.validated());
    CHECK_THROWS_AS(gen_direct_product(gen_trivial(5, {1}), gen_trivial(7, {1})), Error);
    const Brace tt = gen_direct_product(gen_trivial(3, {1}), gen_trivial(3, {2}));
    for (u64 x = 0; x < 27; ++x)
      for (u64 y = 0; y < 27; ++y) CHECK(tt.group().is_zero(tt.star(tt.group().element_at(x), tt.group().element_at(y))));
  }

  TEST_CASE("direct products keep property 1'") {
    const Brace prod = gen_direct_product(gen_ring_brace(5, 4, 1), gen_trivial(5, {1}));
    CHECK(check_descent(prod, DescentMode::property1prime).passed());
    const Brace mixed = gen_direct_product(gen_ring_brace(5, 2, 1), gen_heisenberg(5));
    CHECK_FALSE(check_descent(mixed, DescentMode::property1prime).passed());
  }

  TEST_CASE("brace-v1 round trips are byte-identical") {
    std::vector<Brace> braces{gen_trivial(5, {2, 1}), gen_ring_brace(5, 4, 1), gen_heisenberg(5),
                              tabulate(gen_ring_brace(5, 2, 1)), to_lambda_table(gen_heisenberg(3)),
                              gen_direct_product(gen_ring_brace(3, 2, 1), gen_trivial(3, {1}))};
    auto ring = std::make_shared<PreLieRing>(build_quotient_prelie(gen_ring_brace(7, 4, 1),
                                                                   BuildParams::make(PrimePowerGroup(7, {4})))
                                                 .ring());
    braces.push_back(brace_from_prelie(std::make_shared<FlowContext>(ring)));
    for (const Brace& b : braces) {
      const std::string text = canonical_text(save_brace(b));
      const Brace back = load_brace(Json::parse(text));
      CHECK(canonical_text(save_brace(back)) == text);
      CHECK(star_table(back) == star_table(b));
      const Json doc = Json::parse(text);
      auto it = doc.begin();
      CHECK(it.key() == "format");
      CHECK((++it).key() == "p");
      CHECK((++it).key() == "exponents");
      CHECK((++it).key() == "op");
    }
    CHECK(canonical_text(save_brace(load_brace(ring_doc()))) ==
          "{\"format\":\"brace-v1\",\"p\":5,\"exponents\":[4],\"op\":{\"kind\":\"ring\",\"s\":1}}\n");
  }

  TEST_CASE("star tables are row-major with the left operand as row") {
    const Brace h = gen_heisenberg(3);
    const Json doc = save_brace(tabulate(h));
    const auto& g = h.group();
    const auto& table = doc["op"]["table"];
    REQUIRE(table.size() == 81);
    const std::vector<u64> a{0, 1}, b{0, 2};
    const u64 ia = g.index_of(g.from_coords(a)), ib = g.index_of(g.from_coords(b));
    CHECK(table[ia * 9 + ib].get<u64>() == g.index_of(h.star(g.from_coords(a), g.from_coords(b))));
  }

  TEST_CASE("loading rejects malformed or invalid documents") {
    Json bad = ring_doc();
    bad["format"] = "brace-v2";
    CHECK_THROWS_AS(load_brace(bad), Error);
    bad = ring_doc();
    bad["op"]["s"] = 0;
    try {
      load_brace(bad);
      FAIL("expected not_a_brace");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::not_a_brace);
    }
    bad = ring_doc();
    bad["op"] = Json{{"kind", "star_table"}, {"table", Json::array({0, 0, 0})}};
    CHECK_THROWS_AS(load_brace(bad), Error);
    bad["op"] = Json{{"kind", "mystery"}};
    CHECK_THROWS_AS(load_brace(bad), Error);
    // a table that is not left-distributive
    Json t = Json::parse(R"({"format":"brace-v1","p":3,"exponents":[1],"op":{"kind":"star_table","table":[0,0,0,0,1,0,0,0,0]}})");
    CHECK_THROWS_AS(load_brace(t), Error);
    CHECK_NOTHROW(parse_brace(t));
  }

  TEST_CASE("enumeration on Z/5 matches the brute-force oracle") {
    const Enumeration e = enumerate_small(5, {1});
    CHECK(e.complete);
    CHECK(e.count == 1);
    CHECK(cyclic_prime_oracle(5) == 1);
    CHECK(enumerate_small(3, {1}).count == cyclic_prime_oracle(3));
    CHECK(enumerate_small(7, {1}).count == cyclic_prime_oracle(7));
    const auto& b = e.braces.at(0);
    for (u64 x = 0; x < 5; ++x)
      for (u64 y = 0; y < 5; ++y) CHECK(b.group().is_zero(b.star(b.group().element_at(x), b.group().element_at(y))));
  }

  TEST_CASE("enumeration on C_3 + C_3: trivial brace plus the conjugates of the Heisenberg brace") {
    const Enumeration e = enumerate_small(3, {1, 1});
    REQUIRE(e.complete);
    std::set<std::vector<u64>> found;
    for (const auto& b : e.braces) {
      CHECK(validate_brace(b, SweepMode::exhaustive()).passed());
      found.insert(star_table(b));
    }
    CHECK(found.size() == e.count);

    // oracle: conjugate the Heisenberg star by every invertible matrix over F_3
    const Brace h = gen_heisenberg(3);
    const auto& g = h.group();
    std::set<std::vector<u64>> expected{std::vector<u64>(81, 0)};
    for (u64 m = 0; m < 81; ++m) {
      const u64 a = m % 3, b = m / 3 % 3, c = m / 9 % 3, d = m / 27;
      if ((a * d + 9 - b * c) % 3 == 0) continue;
      auto phi = [&](const Element& v) {
        const std::vector<u64> w{(a * v.c[0] + b * v.c[1]) % 3, (c * v.c[0] + d * v.c[1]) % 3};
        return g.from_coords(w);
      };
      std::vector<Element> inv(9);
      for (u64 x = 0; x < 9; ++x) inv[g.index_of(phi(g.element_at(x)))] = g.element_at(x);
      std::vector<u64> table;
      for (u64 x = 0; x < 9; ++x)
        for (u64 y = 0; y < 9; ++y) table.push_back(g.index_of(phi(h.star(inv[x], inv[y]))));
      expected.insert(table);
    }
    CHECK(found == expected);
  }

  TEST_CASE("enumeration is deterministic and honours its guards") {
    const Enumeration a = enumerate_small(3, {1, 1}), b = enumerate_small(3, {1, 1});
    REQUIRE(a.count == b.count);
    CHECK(a.nodes == b.nodes);
    for (size_t i = 0; i < a.braces.size(); ++i) CHECK(star_table(a.braces[i]) == star_table(b.braces[i]));
    const Enumeration cut = enumerate_small(5, {1, 1}, 10);
    CHECK_FALSE(cut.complete);
    CHECK(cut.count < enumerate_small(5, {1, 1}).count);
    CHECK_THROWS_AS(enumerate_small(11, {1}), Error);
    CHECK_THROWS_AS(enumerate_small(3, {3}), Error);
  }

  TEST_CASE("suites") {
    const SuiteResult t = run_suite(gen_trivial(5, {4}), "all");
    CHECK(t.passed());
    CHECK(t.exit_code() == 0);

    const SuiteResult h = run_suite(gen_heisenberg(5), "properties");
    CHECK_FALSE(h.passed());
    CHECK(h.exit_code() == 1);
    bool witnessed = false;
    for (const auto& r : h.reports)
      if (r.title.rfind("property-1'", 0) == 0 && r.title.rfind("property-1''", 0) != 0)
        witnessed = r.at("left-descent").witness.at("a") == Json::array({0, 1});
    CHECK(witnessed);

    CHECK_THROWS_AS(run_suite(gen_trivial(5, {1}), "nonsense"), Error);
    CHECK_THROWS_AS(run_suite(ring_doc(), "nonsense"), Error);

    const SuiteResult r1 = run_suite(ring_doc(), "all"), r2 = run_suite(ring_doc(), "all");
    CHECK(r1.passed());
    CHECK(r1.to_json(false).dump() == r2.to_json(false).dump());

    const SuiteResult small = run_suite(gen_trivial(3, {1, 1}), "all");
    CHECK(small.passed());
  }
}
