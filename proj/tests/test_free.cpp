#include <doctest.h>

#include <chrono>

#include "dspace/corpus.hpp"
#include "dspace/free.hpp"
#include "dspace/oracle.hpp"

using namespace dspace;

namespace {

FinitePoset c2() { return FinitePoset::from_pairs({"a", "b"}, {{0, 1}}); }
FinitePoset anti2() { return FinitePoset::from_pairs({"a", "b"}, {}); }

FiniteAlgebra c2_with(bool use_max) {
  std::vector<std::size_t> t = use_max ? std::vector<std::size_t>{0, 1, 1, 1} : std::vector<std::size_t>{0, 0, 0, 1};
  return FiniteAlgebra(semilattice_theory().sig, c2(), {t});
}

const Check* find(const Report& r, const std::string& name) {
  for (const auto& c : r.checks())
    if (c.name == name) return &c;
  return nullptr;
}

}  // namespace

TEST_CASE("terms and theories") {
  AlgebraTheory e = power_theory(Theory::lower);
  CHECK(e.laws.size() == 6);
  CHECK(e.show(e.laws.back()) == "x ≤ x+y");
  CHECK(e.show(e.laws[3]) == "(x+y)+z ≤ x+(y+z)");
  AlgebraTheory back = AlgebraTheory::from_json(e.to_json());
  CHECK(back.to_json() == e.to_json());
  CHECK(AlgebraTheory::from_json("upper").name == "upper");

  Signature s = Signature::from_json(json::parse(R"([{"symbol":"e","arity":0},{"symbol":"f","arity":3}])"));
  std::vector<std::string> vars;
  Elem t = parse_term(s, "(f x e (f y y x))", vars);
  CHECK(vars == std::vector<std::string>{"x", "y"});
  CHECK(term::depth(t) == 2);
  CHECK(term::arity(t) == 2);
  CHECK(show_term(s, t, vars) == "f(x,e,f(y,y,x))");
  CHECK_THROWS_WITH_AS(parse_term(s, "(f x)", vars), doctest::Contains("takes 3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_term(s, "(g x)", vars), std::invalid_argument);
  CHECK_THROWS_AS(parse_term(s, "(f x e e", vars), std::invalid_argument);
  CHECK_THROWS_AS(Signature::from_json(json::parse(R"([{"symbol":"f","arity":1},{"symbol":"f","arity":2}])")),
                  std::invalid_argument);
  json bad = {{"signature", s.to_json()}, {"inequalities", json::array({json::array({"x", "(f x)"})})}};
  CHECK_THROWS_WITH_AS(AlgebraTheory::from_json(bad), doctest::Contains("inequalities[0]"), std::invalid_argument);
}

TEST_CASE("checking algebras") {
  AlgebraTheory lower = power_theory(Theory::lower);
  CHECK(check_algebra(c2_with(true), lower).ok());
  Report r = check_algebra(c2_with(false), lower);
  const Check* c = find(r, "x ≤ x+y");
  REQUIRE(c);
  CHECK(c->verdict == Verdict::fail);
  CHECK(c->counterexample == json({{"x", "b"}, {"y", "a"}}));
  // Min is monotone and satisfies every semilattice law.
  CHECK(check_algebra(c2_with(false), power_theory(Theory::upper)).ok());

  FiniteAlgebra one(lower.sig, FinitePoset::chain(1), {{0}});
  for (Theory t : {Theory::lower, Theory::upper, Theory::convex}) CHECK(check_algebra(one, power_theory(t)).ok());

  // A non-monotone operation.
  FiniteAlgebra neg(Signature::from_json(json::parse(R"([{"symbol":"n","arity":1}])")), c2(), {{1, 0}});
  AlgebraTheory none{"none", neg.signature(), {}, {}};
  CHECK(find(check_algebra(neg, none), "n monotone")->verdict == Verdict::fail);

  json j = c2_with(true).to_json();
  FiniteAlgebra back = FiniteAlgebra::from_json(j, lower.sig);
  CHECK(back.table(0) == c2_with(true).table(0));
  json rows = {{"carrier", {{"kind", "chain"}, {"n", 2}}}, {"ops", {{"+", json::array({json::array({"0", "1"}), json::array({"1", "1"})})}}}};
  CHECK(FiniteAlgebra::from_json(rows, lower.sig).table(0) == std::vector<std::size_t>{0, 1, 1, 1});
  rows["ops"]["*"] = 0;
  CHECK_THROWS_WITH_AS(FiniteAlgebra::from_json(rows, lower.sig), doctest::Contains("unknown operation"),
                       std::invalid_argument);
}

TEST_CASE("model enumeration") {
  // Oracle: on one point there is exactly one algebra; on a 2-chain the
  // monotone binary operations satisfying the lower laws are max alone.
  AlgebraTheory lower = power_theory(Theory::lower);
  auto models = algebras_up_to(lower, 2);
  std::size_t on_two_chain = 0;
  for (const auto& a : models) {
    CHECK(check_algebra(a, lower).ok());
    if (a.size() == 2 && a.carrier().leq(0, 1)) {
      ++on_two_chain;
      CHECK(a.table(0) == std::vector<std::size_t>{0, 1, 1, 1});
    }
  }
  CHECK(on_two_chain == 1);
  // On the 2-antichain the lower law forces x ≤ x+y, so x+y = x = y is impossible for x ≠ y.
  for (const auto& a : models) CHECK(!(a.size() == 2 && !a.carrier().leq(0, 1) && !a.carrier().leq(1, 0)));
  // Brute-force recount over all tables on ≤ 3 points.
  for (Theory t : {Theory::lower, Theory::upper, Theory::convex}) {
    AlgebraTheory e = power_theory(t);
    auto ms = algebras_up_to(e, 3);
    for (std::size_t i = 0; i < ms.size(); ++i)
      for (std::size_t j = i + 1; j < ms.size(); ++j) {
        if (ms[i].size() != ms[j].size() || !(ms[i].carrier() == ms[j].carrier())) continue;
        CHECK(ms[i].table(0) != ms[j].table(0));
      }
  }
}

TEST_CASE("products of algebras") {
  AlgebraTheory lower = power_theory(Theory::lower);
  ProductAlgebra sq = algebra_product(lower.sig, {c2_with(true), c2_with(true)});
  CHECK(sq.algebra.size() == 4);
  for (std::size_t x = 0; x < 4; ++x)
    for (std::size_t y = 0; y < 4; ++y) {
      std::size_t z = sq.algebra.apply(0, {x, y});
      CHECK(sq.projections[0][z] == std::max(sq.projections[0][x], sq.projections[0][y]));
      CHECK(sq.projections[1][z] == std::max(sq.projections[1][x], sq.projections[1][y]));
    }
  auto tests = algebras_up_to(lower, 3);
  Report r = check_product(sq, {c2_with(true), c2_with(true)}, tests);
  CHECK_MESSAGE(r.ok(), r.to_text());

  ProductAlgebra none = algebra_product(lower.sig, {});
  CHECK(none.algebra.size() == 1);
  CHECK(check_product(none, {}, tests).ok());

  Signature other = Signature::from_json(json::parse(R"([{"symbol":"*","arity":2}])"));
  CHECK_THROWS_AS(algebra_product(other, {c2_with(true)}), std::invalid_argument);
}

TEST_CASE("equalizers of algebras") {
  AlgebraTheory lower = power_theory(Theory::lower);
  FiniteAlgebra a = c2_with(true);
  auto tests = algebras_up_to(lower, 3);
  std::vector<std::size_t> id{0, 1};
  Equalizer same = algebra_equalizer(a, a, id, id);
  CHECK(same.algebra.size() == 2);
  CHECK(check_equalizer(same, a, a, id, id, tests).ok());

  ProductAlgebra sq = algebra_product(lower.sig, {a, a});
  Equalizer diag = algebra_equalizer(sq.algebra, a, sq.projections[0], sq.projections[1]);
  REQUIRE(diag.algebra.size() == 2);
  for (auto x : diag.embedding) CHECK(sq.projections[0][x] == sq.projections[1][x]);
  Report r = check_equalizer(diag, sq.algebra, a, sq.projections[0], sq.projections[1], tests);
  CHECK_MESSAGE(r.ok(), r.to_text());

  CHECK_THROWS_AS(algebra_equalizer(a, a, {1, 0}, id), std::invalid_argument);
}

TEST_CASE("free ordered algebra examples") {
  AlgebraTheory lower = power_theory(Theory::lower);
  FreeAlgebraResult f = free_ordered_algebra(c2(), lower, 2);
  CHECK(f.stabilized);
  REQUIRE(f.carrier.size() == 2);
  CHECK(f.unit[0] != f.unit[1]);
  // b and a+b share a class.
  CHECK(f.algebra->apply(0, {f.unit[0], f.unit[1]}) == f.unit[1]);
  // Level 1 adds no class: every sum lands on a generator.
  CHECK(f.log.size() == 1);
  CHECK(f.log[0]["stable"] == true);

  CHECK(free_ordered_algebra(anti2(), lower, 2).carrier.size() == 3);
  CHECK(free_ordered_algebra(c2(), power_theory(Theory::convex), 2).carrier.size() == 3);
  CHECK(free_ordered_algebra(c2(), power_theory(Theory::upper), 2).carrier.size() == 2);

  CHECK_THROWS_AS(free_ordered_algebra(c2(), lower, 0), std::invalid_argument);
  try {
    free_ordered_algebra(FinitePoset::antichain(4), lower, 6, 50);
    FAIL("budget not enforced");
  } catch (const BudgetExceeded& ex) {
    CHECK(ex.partial_log.is_array());
    CHECK(ex.partial_log.back()["aborted"] == true);
  }

  // A unary operation with no laws never closes up.
  AlgebraTheory succ{"succ", Signature::from_json(json::parse(R"([{"symbol":"s","arity":1}])")), {}, {}};
  FreeAlgebraResult s = free_ordered_algebra(FinitePoset::chain(1), succ, 5);
  CHECK_FALSE(s.stabilized);
  CHECK_FALSE(s.algebra);
  CHECK(s.carrier.size() == 6);

  // A constant with e ≤ x collapses to a bottom element.
  AlgebraTheory bot = AlgebraTheory::from_json(
      json::parse(R"({"signature":[{"symbol":"e","arity":0}],"inequalities":[["e","x"]]})"));
  FreeAlgebraResult b = free_ordered_algebra(anti2(), bot, 3);
  CHECK(b.stabilized);
  REQUIRE(b.carrier.size() == 3);
  std::size_t e = b.algebra->apply(0, {});
  CHECK(b.carrier.leq(e, b.unit[0]));
  CHECK(b.carrier.leq(e, b.unit[1]));
}

TEST_CASE("powerspace sizes") {
  CHECK(powerspace(c2(), Theory::lower).carrier.size() == 2);
  CHECK(powerspace(c2(), Theory::upper).carrier.size() == 2);
  CHECK(powerspace(c2(), Theory::convex).carrier.size() == 3);
  CHECK(powerspace(anti2(), Theory::lower).carrier.size() == 3);
  CHECK(powerspace(anti2(), Theory::upper).carrier.size() == 3);
  CHECK(powerspace(anti2(), Theory::convex).carrier.size() == 3);
  CHECK(find_order_iso(powerspace(anti2(), Theory::lower).carrier, FinitePoset::from_pairs({"a", "b", "ab"}, {{0, 2}, {1, 2}})));
  CHECK_THROWS_AS(powerspace(FinitePoset(), Theory::lower), std::invalid_argument);
}

TEST_CASE("powerspaces match their set models and the free construction") {
  auto start = std::chrono::steady_clock::now();
  for (const auto& x : posets_up_to(4))
    for (Theory t : {Theory::lower, Theory::upper, Theory::convex}) {
      CAPTURE(theory_name(t));
      FreeAlgebraResult p = powerspace(x, t);
      CHECK(find_order_iso(p.carrier, oracle::power_model(x, t)));
      if (t == Theory::lower) CHECK(find_order_iso(p.carrier, nonempty_lower_sets(x)));
      CHECK(check_algebra(*p.algebra, power_theory(t)).ok());
      FreeAlgebraResult f = free_ordered_algebra(x, power_theory(t), 6);
      CHECK(f.stabilized);
      CHECK(unit_iso(f, p));
    }
  CHECK(std::chrono::steady_clock::now() - start < std::chrono::seconds(60));
}

TEST_CASE("reversing the Smyth order breaks the upper oracle") {
  SetPreorder reversed = [](const FinitePoset& p, std::uint32_t f, std::uint32_t g) {
    return set_preorder(Theory::upper)(p, g, f);
  };
  FreeAlgebraResult bad = powerspace(c2(), Theory::upper, reversed);
  FreeAlgebraResult good = free_ordered_algebra(c2(), power_theory(Theory::upper), 4);
  CHECK_FALSE(unit_iso(good, bad));
  CHECK_FALSE(check_algebra(*bad.algebra, power_theory(Theory::upper)).ok());
}

TEST_CASE("universal property") {
  FreeAlgebraResult fa = powerspace(anti2(), Theory::lower);
  Report r = verify_universal_property(anti2(), fa, c2_with(true), power_theory(Theory::lower));
  CHECK_MESSAGE(r.ok(), r.to_text());
  CHECK(r.checks()[0].detail.find("4 continuous maps") != std::string::npos);
  CHECK_THROWS_AS(verify_universal_property(anti2(), fa, c2_with(false), power_theory(Theory::lower)),
                  std::invalid_argument);

  // Every finite X with ≤ 3 points, every theory, every model on ≤ 3 points.
  for (Theory t : {Theory::lower, Theory::upper, Theory::convex}) {
    AlgebraTheory e = power_theory(t);
    auto targets = algebras_up_to(e, 3);
    CHECK(targets.size() > 2);
    for (const auto& x : posets_up_to(3)) {
      FreeAlgebraResult f = free_ordered_algebra(x, e, 6);
      REQUIRE(f.stabilized);
      for (const auto& b : targets) CHECK(verify_universal_property(x, f, b, e).ok());
    }
  }
}

TEST_CASE("law instances survive substitution") {
  // In any model, substituting terms for variables gives valid inequalities,
  // and a pointwise larger substitution gives a larger value.
  AlgebraTheory e = power_theory(Theory::lower);
  std::vector<Elem> subs{term::var(0), term::var(1), term::apply(0, {term::var(0), term::var(1)}),
                         term::apply(0, {term::var(1), term::apply(0, {term::var(0), term::var(0)})})};
  for (const auto& a : algebras_up_to(e, 3))
    for (const auto& q : e.laws)
      for (const auto& s0 : subs)
        for (const auto& s1 : subs)
          for (const auto& s2 : subs) {
            std::vector<Elem> sigma{s0, s1, s2};
            std::function<Elem(const Elem&)> sub = [&](const Elem& t) -> Elem {
              if (term::is_var(t)) return sigma[term::var_index(t)];
              std::vector<Elem> args;
              for (const auto& p : t.parts) args.push_back(sub(p));
              return term::apply(static_cast<std::size_t>(t.tag), args);
            };
            Elem l = sub(q.lhs), r = sub(q.rhs);
            for (std::size_t x = 0; x < a.size(); ++x)
              for (std::size_t y = 0; y < a.size(); ++y) {
                std::vector<std::size_t> env{x, y};
                CHECK(a.carrier().leq(a.eval(l, env), a.eval(r, env)));
                for (std::size_t x2 = 0; x2 < a.size(); ++x2)
                  if (a.carrier().leq(x, x2)) CHECK(a.carrier().leq(a.eval(l, env), a.eval(l, {x2, y})));
              }
          }
}

TEST_CASE("T on omega + 1") {
  auto w1 = make_poset_space(Poset::adjoin_top(Poset::omega()), TopologyKind::scott);
  auto it = it_space(w1);
  REQUIRE(it->inventory().size() >= 1);
  Elem nat = it->inventory()[0].body;
  PointMap id = [](const Elem& e) { return e; };
  auto img = lift_T(*it, *it, id, nat);
  REQUIRE(img);
  CHECK(ideal_equal(*w1, *img, nat).value);
  CHECK(it->sup(*img) == Elem(1));
  PointMap succ = [](const Elem& e) { return e.tag == 1 ? e : Elem(0, {Elem(e[0].tag + 1)}); };
  Report r = check_lift_T(*it, *it, succ, Bound{16});
  CHECK_MESSAGE(r.ok(), r.to_text());
  Report fr = check_T_functor(*it, *it, *it, succ, succ, Bound{16});
  CHECK_MESSAGE(fr.ok(), fr.to_text());
  // The constant map onto ⊤ is continuous; its image of ℕ is ↓⊤.
  PointMap top = [](const Elem&) { return Elem(1); };
  CHECK(*lift_T(*it, *it, top, nat) == ideal::principal(Elem(1)));

  for (const auto& x : posets_up_to(3)) {
    auto s = make_poset_space(Poset::explicit_finite(x), TopologyKind::alexandrov);
    auto ix = it_space(s);
    for (const auto& f : monotone_maps(x, x)) {
      PointMap pf = [&](const Elem& e) { return Elem(static_cast<std::int64_t>(f[e.tag])); };
      CHECK(check_lift_T(*ix, *ix, pf).ok());
      CHECK(check_T_functor(*ix, *ix, *ix, pf, pf).ok());
    }
  }
}

TEST_CASE("lifted algebras") {
  FiniteAlgebra a = c2_with(true);
  FiniteAlgebra t = lift_Tbar(a);
  CHECK(t.size() == 2);
  auto iso = find_order_iso(t.carrier(), a.carrier());
  REQUIRE(iso);
  CHECK(is_homomorphism(t, a, *iso));

  for (Theory th : {Theory::lower, Theory::upper, Theory::convex}) {
    AlgebraTheory e = power_theory(th);
    for (const auto& m : algebras_up_to(e, 3)) {
      FiniteAlgebra lifted = lift_Tbar(m);
      CHECK(check_algebra(lifted, e).ok());
      auto s = make_poset_space(Poset::explicit_finite(m.carrier()), TopologyKind::alexandrov);
      OpN op = [&](const std::vector<Elem>& xs) {
        return Elem(static_cast<std::int64_t>(m.apply(0, {static_cast<std::size_t>(xs[0].tag), static_cast<std::size_t>(xs[1].tag)})));
      };
      CHECK(check_lifted_algebra(*it_space(s), e, {op}).ok());
    }
  }

  // (ω+1, max): ↓{max(n, 3)} over n ∈ ℕ is ℕ again.
  auto w1 = make_poset_space(Poset::adjoin_top(Poset::omega()), TopologyKind::scott);
  auto it = it_space(w1);
  OpN mx = [&](const std::vector<Elem>& xs) { return w1->leq(xs[0], xs[1]) ? xs[1] : xs[0]; };
  Elem nat = it->inventory()[0].body;
  auto v = lift_op(*it, mx, {nat, ideal::principal(Elem(0, {Elem(3)}))});
  REQUIRE(v);
  CHECK(ideal_equal(*w1, *v, nat).value);
  Report r = check_lifted_algebra(*it, power_theory(Theory::lower), {mx}, Bound{16});
  CHECK_MESSAGE(r.ok(), r.to_text());
  CHECK(r.has_bounded());
}

TEST_CASE("preservation on finite spaces") {
  for (const auto& x : posets_up_to(3))
    for (Theory t : {Theory::lower, Theory::upper, Theory::convex}) {
      auto s = make_poset_space(Poset::explicit_finite(x), TopologyKind::alexandrov);
      Report r = check_preservation(s, t);
      CHECK_MESSAGE(r.ok(), r.to_text());
      CHECK_FALSE(r.has_bounded());
    }
}

TEST_CASE("preservation on presented spaces") {
  Bound b{16};
  auto w = make_poset_space(Poset::omega(), TopologyKind::alexandrov);
  auto w1 = make_poset_space(Poset::adjoin_top(Poset::omega()), TopologyKind::scott);
  auto nt = make_poset_space(Poset::adjoin_top(Poset::flat_nat()), TopologyKind::alexandrov);
  for (const auto& x : {w, w1, nt})
    for (Theory t : {Theory::lower, Theory::upper, Theory::convex}) {
      CAPTURE(x->name());
      CAPTURE(theory_name(t));
      Report r = check_preservation(x, t, b);
      CHECK_MESSAGE(r.ok(), r.to_text());
    }

  // Lower over ω+1: finite subsets of a chain collapse to their maxima.
  PresentedPower pp = powerspace_presented(w1, Theory::lower, b);
  for (const auto& e : pp.basis.prefix(12)) CHECK(Poset::members(e).size() == 1);
  REQUIRE(pp.space->extra().size() == 1);
  Elem top = pp.unit(Elem(1));
  CHECK_FALSE(ideal::is_principal(top));
  CHECK(way_below(*pp.space, pp.unit(Elem(0, {Elem(4)})), top, b).verdict);
  CHECK_FALSE(way_below(*pp.space, top, top, b).verdict);

  CHECK_THROWS_AS(powerspace_presented(make_poset_space(Poset::dyadic(), TopologyKind::scott), Theory::lower, b),
                  std::invalid_argument);
}
