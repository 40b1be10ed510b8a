#include <doctest.h>

#include <set>

#include "dspace/corpus.hpp"
#include "dspace/ideal.hpp"
#include "dspace/poset.hpp"

using namespace dspace;

namespace {

Poset c2_ab() { return Poset::explicit_finite(FinitePoset::from_pairs({"a", "b"}, {{0, 1}})); }

Poset omega_top() { return Poset::adjoin_top(Poset::omega()); }

// Presented posets exercised by the sampled property tests.
std::vector<Poset> presented_corpus() {
  return {Poset::omega(),
          omega_top(),
          Poset::adjoin_top(omega_top()),
          Poset::adjoin_top(Poset::flat_nat()),
          Poset::dyadic(),
          Poset::lift(Poset::omega()),
          Poset::sum(Poset::omega(), Poset::chain(2)),
          Poset::sum(omega_top(), Poset::omega()),
          Poset::product({omega_top(), omega_top()}),
          Poset::product({Poset::omega(), Poset::chain(3)}),
          Poset::powerbasis(Theory::lower, Poset::omega()),
          Poset::powerbasis(Theory::upper, Poset::omega()),
          Poset::powerbasis(Theory::convex, Poset::omega()),
          Poset::powerbasis(Theory::convex, Poset::product({Poset::omega(), Poset::chain(2)}))};
}

}  // namespace

TEST_CASE("explicit two-chain has three order pairs") {
  Poset p = c2_ab();
  CHECK(p.finite());
  CHECK(p.size() == 2);
  int pairs = 0;
  for (auto& x : p.elements())
    for (auto& y : p.elements()) pairs += p.leq(x, y);
  CHECK(pairs == 3);
  CHECK(p.show(p.parse("b")) == "b");
}

TEST_CASE("omega enumerates the naturals in order") {
  Poset w = Poset::omega();
  CHECK_FALSE(w.finite());
  auto pre = w.prefix(4);
  REQUIRE(pre.size() == 4);
  for (std::int64_t i = 0; i < 4; ++i) CHECK(pre[i] == Elem(i));
  CHECK(w.leq(Elem(3), Elem(7)));
  CHECK_FALSE(w.leq(Elem(7), Elem(3)));
}

TEST_CASE("flat naturals with a top") {
  Poset p = Poset::adjoin_top(Poset::flat_nat());
  Elem two = p.parse("2"), three = p.parse("3"), top = p.parse("⊤");
  CHECK(p.leq(two, top));
  CHECK_FALSE(p.leq(two, three));
  CHECK_FALSE(p.leq(top, two));
}

TEST_CASE("partial order checks") {
  CHECK(check_partial_order(Poset::chain(2), 2).ok());
  CHECK_FALSE(check_partial_order(Poset::chain(2), 2).has_bounded());

  FinitePoset bad({"a", "b"}, {1, 1, 1, 1});
  Report r = check_partial_order(bad);
  REQUIRE_FALSE(r.ok());
  CHECK(r.first_failure()->name == "antisymmetric");
  CHECK(r.first_failure()->counterexample == json({"a", "b"}));

  Report w = check_partial_order(Poset::omega(), 50);
  CHECK(w.ok());
  CHECK(w.has_bounded());
}

TEST_CASE("monotone map checks") {
  Poset c = c2_ab();
  CHECK(is_monotone(MonotoneMap::identity(c), 2).ok());
  auto swap = MonotoneMap::table(c, c, {Elem(1), Elem(0)}, "swap");
  Report r = is_monotone(swap, 2);
  REQUIRE_FALSE(r.ok());
  CHECK(r.first_failure()->counterexample == json({"a", "b"}));
  MonotoneMap succ{Poset::omega(), Poset::omega(), [](const Elem& x) { return Elem(x.tag + 1); }, "succ"};
  Report s = is_monotone(succ, 100);
  CHECK(s.ok());
  CHECK(s.checks().back().verdict == Verdict::bounded);
  CHECK(s.checks().back().bound == 100);
}

TEST_CASE("principal and generated ideal membership") {
  PosetCarrier w(Poset::omega());
  CHECK(ideal_member(w, ideal::principal(Elem(3)), Elem(2)).value);
  CHECK_FALSE(ideal_member(w, ideal::principal(Elem(3)), Elem(5)).value);
  CHECK(ideal_member(w, ideal::generated(Elem(0)), Elem(10)).value);
  CHECK_THROWS_AS(ideal_member(w, ideal::principal(Elem(3)), Elem(-1)), std::domain_error);
}

TEST_CASE("posets up to isomorphism: 1, 2, 5, 16") {
  CHECK(posets_up_to_iso(1).size() == 1);
  CHECK(posets_up_to_iso(2).size() == 2);
  CHECK(posets_up_to_iso(3).size() == 5);
  CHECK(posets_up_to_iso(4).size() == 16);
  auto all = posets_up_to(4);
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) CHECK_FALSE(find_order_iso(all[i], all[j]));
}

TEST_CASE("constructors over all small posets") {
  auto small = posets_up_to(3);
  for (const auto& ta : small) {
    Poset a = Poset::explicit_finite(ta);
    CHECK(check_partial_order(a, 64).ok());
    Poset l = Poset::lift(a);
    CHECK(l.size() == a.size() + 1);
    for (auto& x : l.elements()) CHECK(l.leq(Elem(0), x));
    for (const auto& tb : small) {
      Poset b = Poset::explicit_finite(tb);
      Poset prod = Poset::product({a, b});
      Poset s = Poset::sum(a, b);
      REQUIRE(prod.size() == a.size() * b.size());
      REQUIRE(s.size() == a.size() + b.size());
      auto pe = prod.elements();
      CHECK(std::set<Elem>(pe.begin(), pe.end()).size() == pe.size());
      for (auto& x : pe)
        for (auto& y : pe)
          CHECK(prod.leq(x, y) == (a.leq(x[0], y[0]) && b.leq(x[1], y[1])));
      for (auto& x : s.elements())
        for (auto& y : s.elements())
          if (x.tag != y.tag) CHECK_FALSE(s.leq(x, y));
    }
  }
}

TEST_CASE("presented prefixes are injective members and partially ordered") {
  for (const auto& p : presented_corpus()) {
    CAPTURE(p.describe());
    auto pre = p.prefix(60);
    CHECK(pre.size() == 60);
    std::set<Elem> seen(pre.begin(), pre.end());
    CHECK(seen.size() == pre.size());
    for (auto& x : pre) CHECK(p.contains(x));
    CHECK(check_partial_order(p, 40).ok());
    for (auto& x : pre) CHECK(p.parse(p.show(x), 200) == x);
  }
}

TEST_CASE("dyadic enumeration is level order") {
  Poset d = Poset::dyadic();
  std::vector<std::string> shown;
  for (auto& x : d.prefix(7)) shown.push_back(d.show(x));
  CHECK(shown == std::vector<std::string>{"0", "1", "1/2", "1/4", "3/4", "1/8", "3/8"});
}

TEST_CASE("chain rules agree with member sampling") {
  // Oracle: evaluate the chain directly on a long member prefix.
  const std::size_t members = 200;
  for (const auto& p : presented_corpus()) {
    CAPTURE(p.describe());
    auto pts = p.prefix(40);
    auto cs = p.chains(16);
    for (const auto& c : cs) {
      REQUIRE(p.valid_chain(c));
      std::vector<Elem> ms;
      for (std::size_t n = 0; n < members; ++n) ms.push_back(p.chain_member(c, n));
      for (std::size_t n = 0; n + 1 < ms.size(); ++n) CHECK(p.leq(ms[n], ms[n + 1]));
      for (const auto& a : pts) {
        bool below_some = false, above_all = true;
        for (const auto& m : ms) {
          below_some = below_some || p.leq(a, m);
          above_all = above_all && p.leq(m, a);
        }
        CHECK(p.chain_down_contains(c, a) == below_some);
        CHECK(p.chain_below(c, a) == above_all);
      }
      if (auto s = p.chain_sup(c)) {
        CHECK(p.chain_below(c, *s));
        for (const auto& u : pts)
          if (p.chain_below(c, u)) CHECK(p.leq(*s, u));
      }
      for (const auto& d : cs) {
        auto r = p.chain_included(c, d);
        if (!r) continue;
        bool incl = true;
        for (std::size_t n = 0; n < 40; ++n) incl = incl && p.chain_down_contains(d, ms[n]);
        CHECK(*r == incl);
      }
    }
  }
}

TEST_CASE("powerbasis normal forms") {
  Poset c2 = c2_ab();
  CHECK(Poset::powerbasis(Theory::lower, c2).size() == 2);
  CHECK(Poset::powerbasis(Theory::upper, c2).size() == 2);
  CHECK(Poset::powerbasis(Theory::convex, c2).size() == 3);
  Poset ab = Poset::antichain(2);
  CHECK(Poset::powerbasis(Theory::lower, ab).size() == 3);
  Poset lw = Poset::powerbasis(Theory::lower, Poset::omega());
  for (auto& x : lw.prefix(20)) CHECK(x.parts.size() == 1);
}

TEST_CASE("scott compactness") {
  Poset w1 = omega_top();
  CHECK(w1.scott_supported());
  CHECK(w1.scott_compact(w1.parse("3")));
  CHECK_FALSE(w1.scott_compact(w1.parse("⊤")));
  Poset w2 = Poset::adjoin_top(w1);
  CHECK_FALSE(w2.scott_compact(w2.parse("⊤")));
  CHECK(w2.scott_compact(w2.parse("⊤'")));
  Poset nt = Poset::adjoin_top(Poset::flat_nat());
  CHECK(nt.scott_compact(nt.parse("⊤")));
  CHECK_FALSE(Poset::dyadic().scott_supported());
  CHECK_FALSE(Poset::adjoin_top(Poset::sum(Poset::omega(), Poset::omega())).scott_supported());
}

TEST_CASE("poset JSON round trip and errors") {
  for (const auto& p : presented_corpus()) CHECK(Poset::from_json(p.to_json()).describe() == p.describe());
  Poset c2 = c2_ab();
  CHECK(Poset::from_json(c2.to_json()).describe() == c2.describe());
  CHECK(Poset::from_json(json{{"kind", "chain"}, {"n", 2}}).size() == 2);
  CHECK_THROWS_WITH_AS(Poset::from_json(json{{"kind", "lift"}, {"of", {{"kind", "bogus"}}}}),
                       doctest::Contains("poset(lift).of"), std::invalid_argument);
  CHECK_THROWS_AS(Poset::from_json(json{{"kind", "omega"}, {"extra", 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Poset::from_json(json{{"kind", "explicit"},
                                        {"elements", {"a", "b"}},
                                        {"leq", {{"a", "b"}, {"b", "a"}}}}),
                  std::invalid_argument);
}
