#include <doctest.h>

#include "dspace/corpus.hpp"
#include "dspace/ideal_space.hpp"

using namespace dspace;

namespace {

Poset omega_top() { return Poset::adjoin_top(Poset::omega()); }
SpacePtr omega_top_scott() { return make_poset_space(omega_top(), TopologyKind::scott); }
SpacePtr omega_alex() { return make_poset_space(Poset::omega(), TopologyKind::alexandrov); }
Elem nat_chain(const Space& x) { return x.chains(8).front(); }

}  // namespace

TEST_CASE("topological ideals from families") {
  auto w = omega_top_scott();
  Poset p = omega_top();
  auto t = make_topological_ideal(*w, DirectedFamily::of_chain(nat_chain(*w)));
  CHECK(t.sup == p.parse("⊤"));
  CHECK(ideal::kind_of(t.body) == ideal::Kind::generated);
  CHECK(ideal_member(*w, t.body, p.parse("40")).value);
  CHECK_FALSE(ideal_member(*w, t.body, p.parse("⊤")).value);

  auto s = make_topological_ideal(*w, DirectedFamily::of_set({p.parse("4")}));
  CHECK(s.body == ideal::principal(p.parse("4")));
  CHECK(s.sup == p.parse("4"));

  Poset nt = Poset::adjoin_top(Poset::flat_nat());
  auto up = make_poset_space(nt, TopologyKind::upper);
  CHECK_THROWS_WITH_AS(make_topological_ideal(*up, DirectedFamily::of_set({nt.parse("1"), nt.parse("2")})),
                       doctest::Contains("not directed"), std::invalid_argument);
  auto wa = omega_alex();
  CHECK_THROWS_WITH_AS(make_topological_ideal(*wa, DirectedFamily::of_chain(nat_chain(*wa))),
                       doctest::Contains("not an ideal net"), std::invalid_argument);
}

TEST_CASE("inventories of small examples") {
  CHECK(it_space(omega_alex())->inventory().empty());
  Poset nt = Poset::adjoin_top(Poset::flat_nat());
  CHECK(it_space(make_poset_space(nt, TopologyKind::upper))->inventory().empty());
  for (const auto& fp : posets_up_to(4)) {
    auto it = it_space(make_poset_space(Poset::explicit_finite(fp), TopologyKind::alexandrov));
    Report r = check_principal_iso(*it);
    CHECK(r.ok());
    CHECK_FALSE(r.has_bounded());
    CHECK(check_ideal_completion(*it).ok());
  }
}

TEST_CASE("I_T of omega plus one is omega plus two") {
  auto w = omega_top_scott();
  auto it = it_space(w);
  Poset p = omega_top();
  REQUIRE(it->inventory().size() == 1);
  Elem nat = it->inventory()[0].body;
  Elem top = ideal::principal(p.parse("⊤"));
  CHECK(it->sup(nat) == p.parse("⊤"));
  CHECK(it->sup(top) == p.parse("⊤"));
  CHECK(it->leq(nat, top));
  CHECK_FALSE(it->leq(top, nat));
  for (std::int64_t n = 0; n < 30; ++n) {
    Elem pn = ideal::principal(p.parse(std::to_string(n)));
    CHECK(it->leq(pn, nat));
    CHECK_FALSE(it->leq(nat, pn));
  }
  CHECK(check_ideal_completion(*it).ok());
  CHECK_FALSE(check_principal_iso(*it).ok());

  auto cl = classify(*it);
  CHECK(cl.kind == SpaceClass::algebraic);
  for (const auto& k : cl.compacts) CHECK(ideal::is_principal(k));
  bool nat_compact = false;
  for (const auto& k : cl.compacts) nat_compact = nat_compact || k == nat;
  CHECK_FALSE(nat_compact);
  // Every principal ideal is compact.
  for (const auto& a : it->sample(40))
    if (ideal::is_principal(a)) CHECK(way_below(*it, a, a).verdict);
}

TEST_CASE("ID(omega) is not reached by I_T(omega)") {
  auto it = it_space(omega_alex());
  Report r = check_ideal_completion(*it);
  REQUIRE_FALSE(r.ok());
  CHECK(r.first_failure()->detail.find("not an ideal net") != std::string::npos);
}

TEST_CASE("sup and way-below maps") {
  auto w = omega_top_scott();
  auto it = it_space(w);
  Poset p = omega_top();
  for (auto& x : w->sample(20)) CHECK(it->sup(ideal::principal(x)) == x);
  CHECK(wb_ideal(*it, p.parse("⊤")) == it->inventory()[0].body);
  CHECK(wb_ideal(*it, p.parse("3")) == ideal::principal(p.parse("3")));
  json cx;
  CHECK(is_continuous(*it, *w, [&](const Elem& a) { return it->sup(a); }, Bound{}, &cx).value);

  Poset nt = Poset::adjoin_top(Poset::flat_nat());
  auto up = it_space(make_poset_space(nt, TopologyKind::upper));
  CHECK_THROWS_WITH_AS(wb_ideal(*up, nt.parse("⊤")), doctest::Contains("undefined"), std::domain_error);
}

TEST_CASE("adjunction between the way-below map and sup") {
  Report r = check_adjunction(omega_top_scott());
  CHECK(r.ok());
  for (const auto& fp : posets_up_to(3)) {
    Report f = check_adjunction(make_poset_space(Poset::explicit_finite(fp), TopologyKind::alexandrov));
    CHECK(f.ok());
    CHECK_FALSE(f.has_bounded());
  }
  Poset nt = Poset::adjoin_top(Poset::flat_nat());
  CHECK_FALSE(check_adjunction(make_poset_space(nt, TopologyKind::upper)).ok());
}

TEST_CASE("replacing the way-below map by the principal map breaks the adjunction") {
  Report r = check_adjunction(omega_top_scott(), Bound{}, [](const Elem& x) { return ideal::principal(x); });
  REQUIRE_FALSE(r.ok());
  const Check* f = r.first_failure();
  CHECK(f->name == "⇓x ⊆ A ⇔ x ⊑ sup A");
  CHECK(f->counterexample["x"] == "⊤");
}

TEST_CASE("ideal completion commutes with products") {
  auto c2 = make_poset_space(Poset::chain(2), TopologyKind::alexandrov);
  Report fin = it_product_check(c2, c2);
  CHECK(fin.ok());
  CHECK_FALSE(fin.has_bounded());
  CHECK(it_product_check(omega_alex(), omega_alex()).ok());
  CHECK(it_product_check(omega_top_scott(), omega_top_scott(), Bound{24}).ok());
}
