#include <doctest.h>

#include "dspace/corpus.hpp"
#include "dspace/nab.hpp"

using namespace dspace;

namespace {

Poset omega_top() { return Poset::adjoin_top(Poset::omega()); }
Nab dyadic_nab() { return Nab::of_rule(Poset::dyadic(), PrecRule::interval); }

std::vector<std::pair<std::size_t, std::size_t>> order_pairs(const FinitePoset& p) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p.leq(i, j)) out.push_back({i, j});
  return out;
}

const Check* find(const Report& r, const std::string& name) {
  for (const auto& c : r.checks())
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("finite down-sets of constructor posets") {
  auto d = finite_down(Poset::omega(), Elem(3));
  REQUIRE(d);
  CHECK(d->size() == 4);
  Poset p = Poset::product({Poset::omega(), Poset::lift(Poset::chain(2))});
  Elem z = Elem(0, {Elem(2), Elem(1, {Elem(1)})});
  auto pd = finite_down(p, z);
  REQUIRE(pd);
  // Oracle: filter a long prefix.
  std::size_t count = 0;
  for (auto& e : p.prefix(400)) count += p.leq(e, z);
  CHECK(pd->size() == count);
  CHECK_FALSE(finite_down(omega_top(), omega_top().parse("⊤")));
  CHECK_FALSE(finite_down(Poset::dyadic(), Poset::dyadic().parse("1/2")));
  CHECK(finite_down(Poset::dyadic(), Poset::dyadic().parse("0"))->size() == 1);
}

TEST_CASE("dyadic basis passes every axiom with witnesses") {
  Report r = check_nab(dyadic_nab(), 64);
  CHECK_MESSAGE(r.ok(), r.to_text());
  const Check* in = find(r, "interpolation");
  REQUIRE(in);
  CHECK(in->verdict == Verdict::bounded);
  CHECK(in->detail.find("witness found") != std::string::npos);
  CHECK(find(r, "separation")->detail.find("witness found") != std::string::npos);
}

TEST_CASE("strict order on the dyadics fails interpolation below zero") {
  Report r = check_nab(Nab::of_rule(Poset::dyadic(), PrecRule::strict), 32);
  REQUIRE_FALSE(r.ok());
  const Check* in = find(r, "interpolation");
  REQUIRE(in);
  CHECK(in->verdict == Verdict::fail);
  CHECK(in->counterexample["z"] == "0");
  CHECK(in->counterexample["M"] == json::array());
}

TEST_CASE("two-chain with a single strict pair fails interpolation") {
  Report r = check_nab(Nab::of_table(FinitePoset::chain(2), {{0, 1}}));
  const Check* in = find(r, "interpolation");
  REQUIRE(in);
  CHECK(in->verdict == Verdict::fail);
}

TEST_CASE("on finite posets the only normal abstract basis is the order itself") {
  // Exhaustive over every relation contained in ≤ on posets with at most 3 elements.
  for (const auto& fp : posets_up_to(3)) {
    auto ord = order_pairs(fp);
    REQUIRE(ord.size() < 16);
    for (std::uint32_t s = 0; s < (1u << ord.size()); ++s) {
      std::vector<std::pair<std::size_t, std::size_t>> rel;
      for (std::size_t i = 0; i < ord.size(); ++i)
        if (s >> i & 1) rel.push_back(ord[i]);
      Report r = check_nab(Nab::of_table(fp, rel));
      CHECK_FALSE(r.has_bounded());
      CHECK(r.ok() == (rel.size() == ord.size()));
    }
  }
}

TEST_CASE("omega with the strict order is not a normal abstract basis") {
  Nab w = Nab::of_rule(Poset::omega(), PrecRule::strict);
  Report r = check_nab(w, 32);
  const Check* in = find(r, "interpolation");
  REQUIRE(in);
  CHECK(in->verdict == Verdict::fail);
  CHECK_THROWS_WITH_AS(nab_space(w), doctest::Contains("interpolation"), std::invalid_argument);
}

TEST_CASE("induced space of the dyadic basis") {
  auto s = nab_space(dyadic_nab());
  Bound b{24};
  Classification cl = classify(*s, b);
  CHECK(cl.kind == SpaceClass::continuous);
  auto pts = s->sample(12);
  for (const auto& x : pts)
    for (const auto& y : pts) {
      CAPTURE(s->show(x));
      CAPTURE(s->show(y));
      CHECK(way_below(*s, x, y, b).verdict == dyadic_nab().prec(x, y));
    }
  CHECK(check_specialization(*s, b).ok());
}

TEST_CASE("finite bases with the order give the Alexandrov space") {
  for (const auto& fp : posets_up_to(3)) {
    Nab a = Nab::of_table(fp, order_pairs(fp));
    auto s = nab_space(a);
    auto alex = make_poset_space(Poset::explicit_finite(fp), TopologyKind::alexandrov);
    for (const auto& x : s->sample(8))
      for (const auto& y : s->sample(8)) {
        CHECK(way_below(*s, x, y).verdict == way_below(*alex, x, y).verdict);
        Subset up = Subset::up(*s, x);
        CHECK(is_open(*s, up).value);
      }
    CHECK(roundtrip_nab_space(a).ok());
  }
}

TEST_CASE("space to basis") {
  auto w1 = make_poset_space(omega_top(), TopologyKind::scott);
  Bound b{24};
  Nab n = Nab::of_space(w1, b);
  Elem top = omega_top().parse("⊤");
  CHECK_FALSE(n.prec(top, top));
  CHECK(n.prec(omega_top().parse("3"), top));
  CHECK(n.prec(omega_top().parse("3"), omega_top().parse("3")));
  CHECK(check_nab(n, 24).ok());
  Report rt = roundtrip_space_nab(w1, b);
  CHECK_MESSAGE(rt.ok(), rt.to_text());

  for (const auto& fp : posets_up_to(3)) {
    auto x = make_poset_space(Poset::explicit_finite(fp), TopologyKind::alexandrov);
    Nab f = Nab::of_space(x);
    for (const auto& p : x->sample(4))
      for (const auto& q : x->sample(4)) CHECK(f.prec(p, q) == x->leq(p, q));
    Report r = roundtrip_space_nab(x);
    CHECK(r.ok());
    CHECK_FALSE(r.has_bounded());
  }
  Poset nt = Poset::adjoin_top(Poset::flat_nat());
  CHECK_THROWS_WITH_AS(Nab::of_space(make_poset_space(nt, TopologyKind::upper)), doctest::Contains("not_directed"),
                       std::invalid_argument);
}

TEST_CASE("dyadic basis round trip") {
  Report r = roundtrip_nab_space(dyadic_nab(), Bound{16});
  CHECK_MESSAGE(r.ok(), r.to_text());
}

TEST_CASE("normal maps") {
  Nab d = dyadic_nab();
  CHECK(check_normal_map([](const Elem& e) { return e; }, d, d, 32).ok());
  Elem one = Poset::dyadic().parse("1");
  Report c = check_normal_map([one](const Elem&) { return one; }, d, d, 32);
  REQUIRE_FALSE(c.ok());
  CHECK(c.first_failure()->name == "preserves ≺");

  // Doubling on (ω, <): y = 0 ≺ f(1) = 2 needs z < 1 with 0 < 2z.
  Nab w = Nab::of_rule(Poset::omega(), PrecRule::strict);
  Report dbl = check_normal_map([](const Elem& e) { return Elem(2 * e.tag); }, w, w, 32);
  CHECK(find(dbl, "preserves ≤")->verdict != Verdict::fail);
  CHECK(find(dbl, "preserves ≺")->verdict != Verdict::fail);
  const Check* lift = find(dbl, "y ≺ f(x) ⇒ ∃z ≺ x. y ≺ f(z)");
  REQUIRE(lift);
  CHECK(lift->verdict == Verdict::fail);
  CHECK(lift->counterexample == json({{"x", "1"}, {"y", "0"}}));
}

TEST_CASE("normal maps are the way-below preserving continuous maps") {
  auto ps = posets_up_to(3);
  for (const auto& fa : ps)
    for (const auto& fb : ps) {
      Nab a = Nab::of_table(fa, order_pairs(fa)), b = Nab::of_table(fb, order_pairs(fb));
      NabSpace sa(a), sb(b);
      // Every function, monotone or not.
      std::size_t total = 1;
      for (std::size_t i = 0; i < fa.size(); ++i) total *= fb.size();
      for (std::size_t code = 0; code < total; ++code) {
        std::vector<std::size_t> f(fa.size());
        for (std::size_t i = 0, c = code; i < fa.size(); ++i, c /= fb.size()) f[i] = c % fb.size();
        PointMap pf = [&](const Elem& e) { return Elem(static_cast<std::int64_t>(f[e.tag])); };
        CHECK(check_normal_map(pf, a, b).ok() == check_wb_continuous(pf, sa, sb).ok());
      }
    }
}

TEST_CASE("finite exponentials") {
  FinitePoset c2 = FinitePoset::chain(2);
  FiniteMapSpace e = con_exponential(c2, c2);
  CHECK(e.maps.size() == 3);
  CHECK(find_order_iso(e.order, FinitePoset::chain(3)));
  Report r = check_con_exponential(e);
  CHECK_MESSAGE(r.ok(), r.to_text());
  CHECK_FALSE(r.has_bounded());

  for (const auto& y : posets_up_to(3)) {
    FiniteMapSpace p = con_exponential(FinitePoset::chain(1), y);
    CHECK(find_order_iso(p.order, y));
  }
  for (const auto& x : posets_up_to(3))
    for (const auto& y : posets_up_to(3)) {
      Report q = check_con_exponential(con_exponential(x, y));
      CHECK(q.ok());
      CHECK_FALSE(q.has_bounded());
    }
}

TEST_CASE("ev and curry") {
  FinitePoset c2 = FinitePoset::chain(2);
  // f(z, x) = x: every f_z is the identity, so f̄ is constant.
  Report p = eval_and_curry(c2, c2, c2, {0, 1, 0, 1});
  CHECK_MESSAGE(p.ok(), p.to_text());
  CHECK(eval_and_curry(c2, c2, c2, {1, 1, 1, 1}).ok());
  Report bad = eval_and_curry(c2, c2, c2, {1, 0, 1, 0});
  REQUIRE_FALSE(bad.ok());
  CHECK(bad.first_failure()->name == "f is a way-below preserving continuous map");

  auto ps = posets_up_to(2);
  for (const auto& z : ps)
    for (const auto& x : ps)
      for (const auto& y : ps) {
        FinitePoset zx = finite_product(z, x);
        for (const auto& f : monotone_maps(zx, y)) {
          Report r = eval_and_curry(z, x, y, f);
          CHECK(r.ok());
          CHECK_FALSE(r.has_bounded());
        }
      }
}

TEST_CASE("basis JSON") {
  Nab a = Nab::from_json({{"base", {{"kind", "dyadic"}}}, {"prec", "interval"}});
  CHECK(a.rule() == PrecRule::interval);
  Nab t = Nab::from_json({{"base", {{"kind", "chain"}, {"n", 2}}}, {"prec", {{"pairs", json::array({json::array({"0", "1"})})}}}});
  CHECK(t.rule() == PrecRule::table);
  CHECK_THROWS_AS(Nab::from_json({{"base", {{"kind", "omega"}}}, {"prec", "interval"}}), std::invalid_argument);
  CHECK_THROWS_WITH_AS(Nab::from_json({{"base", {{"kind", "chain"}, {"n", 2}}}, {"prec", {{"pairs", json::array({json::array({"0", "9"})})}}}}),
                       doctest::Contains("pairs[0]"), std::invalid_argument);
}
