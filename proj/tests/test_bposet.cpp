#include <doctest.h>

#include "dspace/bposet.hpp"
#include "dspace/corpus.hpp"

using namespace dspace;

namespace {

Poset omega_top() { return Poset::adjoin_top(Poset::omega()); }
CarrierPtr omega_carrier() { return std::make_shared<PosetCarrier>(Poset::omega()); }
Elem nat_chain() { return Poset::omega().chains(4).front(); }
BPoset omega_pi() { return BPoset::listed(omega_carrier(), {}, "(ω, PI)"); }
BPoset omega_id() { return BPoset::listed(omega_carrier(), {ideal::generated(nat_chain())}, "(ω, ID)"); }
FinitePoset c2() { return FinitePoset::chain(2); }

BPoset finite_bposet(const FinitePoset& fp) {
  return BPoset::listed(std::make_shared<PosetCarrier>(Poset::explicit_finite(fp)), {}, "finite");
}

// Oracle: the ideal D ≪ E in H(P) iff D ⊆ ↓a for some a ∈ E.
bool wb_rule(const Carrier& c, const Elem& d, const Elem& e, const std::vector<Elem>& pts) {
  for (const auto& a : pts)
    if (ideal_member(c, e, a).value && ideal_subset(c, d, ideal::principal(a)).value) return true;
  return false;
}

std::vector<FiniteBPoset> small_tests() {
  std::vector<FiniteBPoset> out;
  for (const auto& fp : posets_up_to(3)) out.push_back(finite_pi(fp));
  return out;
}

}  // namespace

TEST_CASE("check_bposet examples") {
  CHECK(check_bposet(omega_id()).ok());
  CHECK(check_bposet(finite_bposet(c2())).ok());
  auto ab = std::make_shared<PosetCarrier>(Poset::antichain(2));
  BPoset bad = BPoset::listed(ab, {ideal::finite_set({Elem(0), Elem(1)})});
  Report r = check_bposet(bad);
  REQUIRE_FALSE(r.ok());
  CHECK(r.first_failure()->name.find("directed") != std::string::npos);
}

TEST_CASE("listed ideals are normalized and deduplicated") {
  auto c = std::make_shared<PosetCarrier>(Poset::explicit_finite(c2()));
  BPoset p = BPoset::listed(c, {ideal::finite_set({Elem(0), Elem(1)})});
  CHECK(p.extra().empty());
  CHECK(p.raw().size() == 1);
  BPoset q = BPoset::listed(omega_carrier(), {ideal::generated(nat_chain()), ideal::generated(nat_chain())});
  CHECK(q.extra().size() == 1);
  CHECK(q.has_ideal(ideal::principal(Elem(7))));
  CHECK_FALSE(omega_pi().has_ideal(ideal::generated(nat_chain())));
}

TEST_CASE("finite ideals are exactly the principal ones") {
  // In a finite poset every directed lower set has a top element.
  for (const auto& fp : posets_up_to(4)) {
    auto all = finite_ideals(fp);
    CHECK(all == finite_pi(fp).ideals);
  }
  FinitePoset big = FinitePoset::chain(20);
  CHECK(finite_ideals(big).size() == 20);
  FinitePoset wide = FinitePoset::antichain(18);
  CHECK(finite_ideals(wide).size() == 18);
}

TEST_CASE("G on examples") {
  for (const auto& fp : posets_up_to(3)) {
    BPoset g = functor_G(make_poset_space(Poset::explicit_finite(fp), TopologyKind::alexandrov));
    CHECK(g.extra().empty());
    CHECK(g.base().sample(16).size() == fp.size());
  }
  BPoset gs = functor_G(make_poset_space(omega_top(), TopologyKind::scott));
  REQUIRE(gs.extra().size() == 1);
  CHECK_FALSE(gs.base().contains(omega_top().parse("⊤")));
  CHECK(ideal_member(gs.base(), gs.extra()[0], omega_top().parse("30")).value);
  BPoset ga = functor_G(make_poset_space(omega_top(), TopologyKind::alexandrov));
  CHECK(ga.extra().empty());
  CHECK(ga.base().contains(omega_top().parse("⊤")));
  Poset nt = Poset::adjoin_top(Poset::flat_nat());
  CHECK_THROWS_WITH_AS(functor_G(make_poset_space(nt, TopologyKind::upper)), doctest::Contains("algebraic"),
                       std::invalid_argument);
}

TEST_CASE("H on examples") {
  auto h = functor_H(omega_id());
  Classification cl = classify(*h, Bound{32});
  CHECK(cl.kind == SpaceClass::algebraic);
  for (const auto& k : cl.compacts) CHECK(ideal::is_principal(k));
  Elem top = ideal::generated(nat_chain());
  CHECK(h->contains(top));
  for (const auto& d : h->sample(20)) CHECK(h->leq(d, top));
  CHECK_FALSE(way_below(*h, top, top, Bound{32}).verdict);

  auto hp = functor_H(omega_pi());
  CHECK_FALSE(hp->contains(top));
  for (const auto& fp : posets_up_to(3)) {
    auto hf = functor_H(finite_bposet(fp));
    Classification c = classify(*hf);
    CHECK(c.kind == SpaceClass::algebraic);
    CHECK(c.exact);
    CHECK(c.compacts.size() == fp.size());
  }
}

TEST_CASE("way-below on H agrees with the rule") {
  std::vector<BPoset> corpus{omega_pi(), omega_id()};
  for (const auto& fp : posets_up_to(3)) corpus.push_back(finite_bposet(fp));
  Bound b{24};
  for (const auto& p : corpus) {
    auto h = functor_H(p);
    auto pts = p.base().sample(40);
    auto ds = h->sample(12);
    for (const auto& d : ds)
      for (const auto& e : ds) {
        CAPTURE(h->show(d));
        CAPTURE(h->show(e));
        CHECK(way_below(*h, d, e, b).verdict == wb_rule(p.base(), d, e, pts));
      }
  }
}

TEST_CASE("roundtrips on finite posets") {
  for (const auto& fp : posets_up_to(4)) {
    CAPTURE(fp.names());
    Report a = roundtrip_bposet(finite_bposet(fp));
    CHECK(a.ok());
    CHECK_FALSE(a.has_bounded());
    Report s = roundtrip_space(make_poset_space(Poset::explicit_finite(fp), TopologyKind::alexandrov));
    CHECK(s.ok());
    CHECK_FALSE(s.has_bounded());
  }
}

TEST_CASE("roundtrips on omega with its chain ideal") {
  Bound b{24};
  Report a = roundtrip_bposet(omega_id(), b);
  CHECK_MESSAGE(a.ok(), a.to_text());
  Report s = roundtrip_space(make_poset_space(omega_top(), TopologyKind::scott), b);
  CHECK_MESSAGE(s.ok(), s.to_text());
  CHECK(roundtrip_bposet(omega_pi(), b).ok());
}

TEST_CASE("b-maps") {
  auto id = [](const Elem& e) { return e; };
  CHECK(check_bmap(omega_id(), omega_id(), id).ok());
  CHECK(check_bmap(omega_pi(), omega_id(), id).ok());
  Report r = check_bmap(omega_id(), omega_pi(), id);
  REQUIRE_FALSE(r.ok());
  CHECK(r.first_failure()->name == "↓f(D) ∈ I(B)");
  // Constant maps send every ideal to a principal one.
  CHECK(check_bmap(omega_id(), omega_pi(), [](const Elem&) { return Elem(3); }).ok());
  Report m = check_bmap(omega_pi(), omega_pi(), [](const Elem& e) { return Elem(e.tag % 2); });
  CHECK(m.first_failure()->name == "monotone");
}

TEST_CASE("H is a functor on finite b-posets") {
  auto ps = posets_up_to(3);
  for (const auto& fa : ps)
    for (const auto& fb : ps) {
      BPoset p = finite_bposet(fa), q = finite_bposet(fb);
      for (const auto& f : monotone_maps(fa, fb)) {
        PointMap pf = [&](const Elem& e) { return Elem(static_cast<std::int64_t>(f[e.tag])); };
        PointMap hf = functor_H_map(p, q, pf);
        for (std::size_t i = 0; i < fa.size(); ++i) {
          Elem d = ideal::principal(Elem(static_cast<std::int64_t>(i)));
          CHECK(hf(d) == ideal::principal(pf(Elem(static_cast<std::int64_t>(i)))));
        }
        PointMap hid = functor_H_map(p, p, [](const Elem& e) { return e; });
        for (std::size_t i = 0; i < fa.size(); ++i) {
          Elem d = ideal::principal(Elem(static_cast<std::int64_t>(i)));
          CHECK(hid(d) == d);
        }
        for (const auto& g : monotone_maps(fb, fa)) {
          PointMap pg = [&](const Elem& e) { return Elem(static_cast<std::int64_t>(g[e.tag])); };
          PointMap hg = functor_H_map(q, p, pg);
          PointMap hgf = functor_H_map(p, p, [&](const Elem& e) { return pg(pf(e)); });
          for (std::size_t i = 0; i < fa.size(); ++i) {
            Elem d = ideal::principal(Elem(static_cast<std::int64_t>(i)));
            CHECK(hgf(d) == hg(hf(d)));
          }
        }
      }
    }
}

TEST_CASE("products of b-posets") {
  FiniteBPoset c = finite_pi(c2());
  FiniteBPoset cc = finite_bproduct(c, c);
  CHECK(cc.ideals == finite_pi(cc.base).ideals);
  auto tests = small_tests();
  for (const auto& fa : posets_up_to(3))
    for (const auto& fb : posets_up_to(2)) {
      Report r = check_finite_product_laws(finite_pi(fa), finite_pi(fb), tests);
      CHECK_MESSAGE(r.ok(), r.to_text());
    }

  Bound b{16};
  BPoset p = BPoset::product(omega_id(), omega_id(), b);
  // Expected: ↓m × ω, ω × ↓n and ω × ω beyond the principal ideals.
  Elem all = ideal::generated(nat_chain());
  CHECK(p.has_ideal(ideal::generated(Elem(0, {Elem(0, {nat_chain()}), Elem(0, {nat_chain()})}))));
  CHECK(p.has_ideal(ideal::generated(Elem(0, {Elem(1, {Elem(3)}), Elem(0, {nat_chain()})}))));
  CHECK(p.has_ideal(ideal::generated(Elem(0, {Elem(0, {nat_chain()}), Elem(1, {Elem(5)})}))));
  CHECK(p.has_ideal(ideal::principal(Elem(0, {Elem(2), Elem(4)}))));
  BPoset pq = BPoset::product(omega_id(), omega_pi(), b);
  CHECK_FALSE(pq.has_ideal(ideal::generated(Elem(0, {Elem(1, {Elem(3)}), Elem(0, {nat_chain()})}))));
  CHECK(pq.has_ideal(ideal::generated(Elem(0, {Elem(0, {nat_chain()}), Elem(1, {Elem(3)})}))));
  CHECK(check_bposet(p, 32).ok());
  (void)all;
}

TEST_CASE("exponentials of b-posets") {
  FiniteBPoset c = finite_pi(c2());
  FiniteExponential e = finite_exponential(c, c);
  CHECK(e.exp.base.size() == 3);
  CHECK(e.exp.ideals == finite_pi(e.exp.base).ideals);
  // Base order is a chain: exactly 6 comparable pairs.
  int pairs = 0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) pairs += e.exp.base.leq(i, j);
  CHECK(pairs == 6);

  auto tests = small_tests();
  for (const auto& fa : posets_up_to(2))
    for (const auto& fb : posets_up_to(2)) {
      FiniteBPoset p = finite_pi(fa), q = finite_pi(fb);
      Report r = check_finite_exponential_laws(p, q, tests);
      CHECK_MESSAGE(r.ok(), r.to_text());
      FiniteExponential x = finite_exponential(p, q);
      CHECK(x.exp.ideals == finite_ideals(x.exp.base));
    }
}

TEST_CASE("reflection and sobrification") {
  Bound b{24};
  BPoset r = reflect(omega_pi(), b);
  REQUIRE(r.extra().size() == 1);
  CHECK(r.has_ideal(ideal::generated(nat_chain())));
  for (const auto& fp : posets_up_to(3)) {
    auto c = std::make_shared<PosetCarrier>(Poset::explicit_finite(fp));
    CHECK(reflect(BPoset::listed(c, {})).extra().empty());
  }
  CHECK(check_reflection(omega_pi(), omega_id(), [](const Elem& e) { return e; }, b).ok());

  auto w1 = make_poset_space(omega_top(), TopologyKind::scott);
  for (const auto& p : {omega_pi(), omega_id()}) {
    auto s = sobrification(p, b);
    Report iso = roundtrip_space(w1, b);
    CHECK(iso.ok());
    // The space of ideals has exactly one non-compact point, above every principal ideal.
    Classification cl = classify(*s, b);
    CHECK(cl.kind == SpaceClass::algebraic);
    Elem top = ideal::generated(nat_chain());
    CHECK(s->contains(top));
    CHECK_FALSE(way_below(*s, top, top, b).verdict);
    for (const auto& d : s->sample(16))
      if (!(d == top)) CHECK(way_below(*s, d, d, b).verdict);
  }
}

TEST_CASE("basis-isomorphic pair") {
  Report r = basis_isomorphic_pair(Bound{32});
  CHECK_MESSAGE(r.ok(), r.to_text());
}

TEST_CASE("maps from the naturals to the two-chain") {
  Report r = nat_to_two_exponential(Bound{32});
  CHECK_MESSAGE(r.ok(), r.to_text());
}

TEST_CASE("b-poset JSON") {
  json j = {{"base", {{"kind", "omega"}}}, {"ideals", json::array({{{"chain", "0"}}})}};
  BPoset p = BPoset::from_json(j);
  CHECK(p.extra().size() == 1);
  CHECK(BPoset::from_json({{"base", {{"kind", "omega"}}}, {"ideals", "ID"}}).extra().size() >= 1);
  CHECK(BPoset::from_json({{"base", {{"kind", "omega"}}}, {"ideals", "PI"}}).extra().empty());
  CHECK_THROWS_AS(BPoset::from_json({{"base", {{"kind", "omega"}}}, {"bogus", 1}}), std::invalid_argument);
  CHECK_THROWS_WITH_AS(BPoset::from_json({{"base", {{"kind", "omega"}}}, {"ideals", json::array({1})}}),
                       doctest::Contains("bposet.ideals[0]"), std::invalid_argument);
}
