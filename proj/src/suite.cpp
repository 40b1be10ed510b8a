#include "dspace/suite.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <set>
#include <sstream>

#include "dspace/bposet.hpp"
#include "dspace/corpus.hpp"
#include "dspace/describe.hpp"
#include "dspace/nab.hpp"
#include "dspace/oracle.hpp"

namespace dspace::suite {

namespace {

constexpr Theory kTheories[] = {Theory::lower, Theory::upper, Theory::convex};

SpacePtr alex(const FinitePoset& fp) { return make_poset_space(Poset::explicit_finite(fp), TopologyKind::alexandrov); }
json poset_json(const FinitePoset& fp) { return Poset::explicit_finite(fp).to_json(); }
Elem idx(std::size_t i) { return Elem(static_cast<std::int64_t>(i)); }

Poset omega_top() { return Poset::adjoin_top(Poset::omega()); }
SpacePtr omega_top_scott() { return make_poset_space(omega_top(), TopologyKind::scott); }
SpacePtr omega_alex() { return make_poset_space(Poset::omega(), TopologyKind::alexandrov); }
Nab dyadic_nab() { return Nab::of_rule(Poset::dyadic(), PrecRule::interval); }

BPoset finite_bposet(const FinitePoset& fp) {
  return BPoset::listed(std::make_shared<PosetCarrier>(Poset::explicit_finite(fp)), {}, "finite");
}

const Check* find_check(const Report& r, const std::string& name) {
  for (const auto& c : r.checks())
    if (c.name == name) return &c;
  return nullptr;
}

// Many instances of one property folded into a single check.
class Tally {
 public:
  explicit Tally(std::string name) : name_(std::move(name)) {}

  void expect(bool ok, const json& where) {
    ++n_;
    if (!ok && cx_.is_null()) cx_ = where;
  }
  void judge(const Judgement& j, const json& where) {
    expect(j.value, where);
    if (j.value && !j.exact) bound_ = std::max(bound_, std::max<std::size_t>(j.bound, 1));
  }
  void report(const Report& r, const json& where) {
    ++n_;
    if (const Check* f = r.first_failure()) {
      if (cx_.is_null()) cx_ = {{"instance", where}, {"check", f->name}, {"counterexample", f->counterexample}};
    } else if (r.has_bounded()) {
      for (const auto& c : r.checks())
        if (c.verdict == Verdict::bounded) bound_ = std::max(bound_, std::max<std::size_t>(c.bound, 1));
    }
  }
  void into(Report& r, const std::string& unit) const {
    std::string detail = std::to_string(n_) + " " + unit;
    if (!cx_.is_null()) r.fail(name_, detail, cx_);
    else if (n_ == 0) r.fail(name_, "no instances");
    else if (bound_) r.bounded(name_, bound_, detail);
    else r.pass(name_, detail);
  }

 private:
  std::string name_;
  std::size_t n_ = 0;
  std::size_t bound_ = 0;
  json cx_;
};

// ---------------------------------------------------------------- 1

Report finite_layer() {
  Report r;
  Tally alg("finite T0 spaces classify algebraic"), wb("way_below = ≤"), core("coreflect = identity"),
      hg("H(G(X)) ≅ X"), gh("G(H(P)) ≅ P"), it("I_T(X) ≅ X");
  for (const auto& fp : posets_up_to(4)) {
    json pj = poset_json(fp);
    std::size_t n = fp.size();
    for (auto topo : {TopologyKind::alexandrov, TopologyKind::upper}) {
      SpacePtr x = make_poset_space(Poset::explicit_finite(fp), topo);
      json where = {{"poset", pj}, {"topology", topology_name(topo)}};
      Classification cl = classify(*x);
      alg.expect(cl.kind == SpaceClass::algebraic && cl.exact && cl.compacts.size() == n, where);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          auto w = way_below(*x, idx(i), idx(j));
          wb.expect(w.exact && w.verdict == fp.leq(i, j), {{"space", where}, {"x", fp.name(i)}, {"y", fp.name(j)}});
        }
      SpacePtr d = coreflect(x);
      bool same = true;
      for (std::uint32_t u = 0; u < (1u << n); ++u) {
        std::vector<Elem> ms;
        for (std::size_t i = 0; i < n; ++i)
          if (u >> i & 1) ms.push_back(idx(i));
        same = same && is_open(*x, Subset::of(ms)).value == is_open(*d, Subset::of(ms)).value;
      }
      core.expect(same, where);
      hg.report(roundtrip_space(x), where);
      auto its = it_space(x);
      it.report(check_principal_iso(*its), where);
    }
    gh.report(roundtrip_bposet(finite_bposet(fp)), pj);
  }
  alg.into(r, "spaces");
  wb.into(r, "pairs");
  core.into(r, "spaces, all subsets compared");
  hg.into(r, "spaces");
  gh.into(r, "b-posets");
  it.into(r, "spaces");
  return r;
}

// ---------------------------------------------------------------- 2

Report remark() {
  Report r;
  Poset p = Poset::adjoin_top(Poset::flat_nat());
  auto x = make_poset_space(p, TopologyKind::upper);
  auto top = is_directed_open(*x, Subset::of({p.parse("⊤")}));
  r.expect("{⊤} is directed-open but not open", top.verdict == OpenVerdict::directed_open_not_open,
           open_verdict_name(top.verdict), top.counterexample);
  Tally dc("every sampled element is d-compact");
  for (const auto& e : x->sample(Bound{}.points())) dc.judge(way_below(*x, e, e).judgement(), x->show(e));
  dc.into(r, "points");
  Classification cl = classify(*x);
  r.expect("classify = not_directed", cl.kind == SpaceClass::not_directed, cl.detail, cl.witness);
  return r;
}

// ---------------------------------------------------------------- 3

Report retract() {
  Report r;
  std::vector<std::pair<std::string, SpacePtr>> corpus;
  for (const auto& fp : posets_up_to(4)) corpus.push_back({Poset::explicit_finite(fp).describe(), alex(fp)});
  corpus.push_back({"ω+1 (Scott)", omega_top_scott()});
  corpus.push_back({"dyadic basis space", nab_space(dyadic_nab())});
  corpus.push_back({"(ℕ^⊤, upper)", make_poset_space(Poset::adjoin_top(Poset::flat_nat()), TopologyKind::upper)});
  Tally eq("continuous ⇔ ⇓ ⊣ sup ⇔ sup ∘ ⇓ = id");
  std::size_t positive = 0, negative = 0;
  for (const auto& [label, x] : corpus) {
    Bound b{x->finite() ? 64u : 16u};
    Classification cl = classify(*x, b);
    bool cont = cl.kind == SpaceClass::continuous || cl.kind == SpaceClass::algebraic;
    Report adj = check_adjunction(x, b);
    const Check* sid = find_check(adj, "sup ∘ ⇓ = id");
    bool retract = sid && sid->verdict != Verdict::fail;
    bool agree = cont == adj.ok() && adj.ok() == retract;
    eq.expect(agree, {{"space", label},
                      {"classified", space_class_name(cl.kind)},
                      {"adjunction", adj.ok()},
                      {"sup_lower_id", retract}});
    (cont ? positive : negative) += 1;
  }
  eq.into(r, "spaces (" + std::to_string(positive) + " continuous, " + std::to_string(negative) + " not)");

  Tally dcpo("I_T(X) = ID(X) on dcpos");
  for (const auto& fp : posets_up_to(4)) dcpo.report(check_ideal_completion(*it_space(alex(fp))), poset_json(fp));
  dcpo.report(check_ideal_completion(*it_space(omega_top_scott())), "ω+1");
  dcpo.into(r, "spaces");

  // ω has no top, so the ℕ-chain is not an ideal net and I_T(ω) stops at PI(ω).
  auto itw = it_space(omega_alex());
  Report comp = check_ideal_completion(*itw);
  if (comp.ok() && !itw->inventory().empty()) {
    r.pass("it_space(ω) ≅ ω+1");
  } else {
    const Check* f = comp.first_failure();
    r.fail("it_space(ω) ≅ ω+1",
           "I_T(ω) has " + std::to_string(itw->inventory().size()) +
               " non-principal ideals; ID(ω) has one: " + (f ? f->detail : std::string("inventory empty")),
           f ? f->counterexample : json(nullptr));
  }
  return r;
}

// ---------------------------------------------------------------- 4

DirectedFamily project(const DirectedFamily& d, std::size_t i) {
  if (d.finite()) {
    std::set<Elem> s;
    for (auto& m : d.members) s.insert(m[i]);
    return DirectedFamily::of_set({s.begin(), s.end()});
  }
  const Elem& coord = ProductSpace::coordinate(*d.chain, i);
  if (coord.tag == 0) return DirectedFamily::of_chain(coord[0]);
  return DirectedFamily::of_set({coord[0]});
}

Report products() {
  Report r;
  Bound b{24};
  auto w = omega_top_scott();
  auto ww = product({w, w});
  Tally conv("ω+1 ⊗ ω+1: convergence is componentwise"), wb("ω+1 ⊗ ω+1: ≪ is componentwise");
  auto pts = ww->sample(40);
  for (const auto& d : catalog(*ww, b))
    for (const auto& x : pts) {
      Judgement joint = converges(*ww, d, x, b);
      Judgement comp = converges(*w, project(d, 0), x[0], b) && converges(*w, project(d, 1), x[1], b);
      conv.judge({joint.value == comp.value, joint.exact && comp.exact, b.depth},
                 {{"family", d.to_json(*ww)}, {"point", ww->show(x)}});
    }
  auto few = ww->sample(24);
  for (const auto& x : few)
    for (const auto& y : few) {
      auto joint = way_below(*ww, x, y, b);
      bool comp = way_below(*w, x[0], y[0], b).verdict && way_below(*w, x[1], y[1], b).verdict;
      wb.judge({joint.verdict == comp, joint.exact, b.depth}, {{"x", ww->show(x)}, {"y", ww->show(y)}});
    }
  conv.into(r, "family/point pairs");
  wb.into(r, "pairs");

  Tally fconv("finite products: convergence is componentwise"), fwb("finite products: ≪ is componentwise"),
      sep("finite products: separate ⇔ joint continuity for monotone maps");
  auto small = posets_up_to(3);
  std::size_t maps = 0;
  for (const auto& fa : small)
    for (const auto& fb : small) {
      auto a = alex(fa), bs = alex(fb);
      auto ab = product({a, bs});
      auto& prod = dynamic_cast<const ProductSpace&>(*ab);
      FinitePoset table = finite_product(fa, fb);
      auto elem = [&](std::size_t k) { return Elem(0, {idx(k / fb.size()), idx(k % fb.size())}); };
      json where = {{"left", poset_json(fa)}, {"right", poset_json(fb)}};
      for (auto d : oracle::directed_subsets(table)) {
        std::vector<Elem> ms;
        for (std::size_t k = 0; k < table.size(); ++k)
          if (d >> k & 1) ms.push_back(elem(k));
        auto fam = DirectedFamily::of_set(ms);
        for (std::size_t k = 0; k < table.size(); ++k) {
          Elem x = elem(k);
          bool comp = converges(*a, project(fam, 0), x[0]).value && converges(*bs, project(fam, 1), x[1]).value;
          fconv.expect(converges(*ab, fam, x).value == comp, {{"product", where}, {"family", d}, {"point", k}});
        }
      }
      for (std::size_t k = 0; k < table.size(); ++k)
        for (std::size_t l = 0; l < table.size(); ++l) {
          Elem x = elem(k), y = elem(l);
          bool comp = way_below(*a, x[0], y[0]).verdict && way_below(*bs, x[1], y[1]).verdict;
          fwb.expect(way_below(*ab, x, y).verdict == comp, {{"product", where}, {"x", k}, {"y", l}});
        }
      for (const auto& fc : small) {
        auto c = alex(fc);
        for (const auto& m : monotone_maps(table, fc)) {
          PointMap f = [&, m](const Elem& x) { return idx(m[x[0].tag * fb.size() + x[1].tag]); };
          Report s = check_separate_continuity(prod, *c, f);
          ++maps;
          sep.report(s, {{"product", where}, {"codomain", poset_json(fc)}, {"map", m}});
        }
      }
    }
  fconv.into(r, "family/point pairs");
  fwb.into(r, "pairs");
  sep.into(r, "monotone maps");
  return r;
}

// ---------------------------------------------------------------- 5

// Classes of nonempty subsets under the preorder, by definition.
std::size_t preorder_classes(const FinitePoset& x, const SetPreorder& le) {
  std::vector<std::uint32_t> reps;
  for (std::uint32_t s = 1; s < (1u << x.size()); ++s) {
    bool found = false;
    for (auto t : reps)
      if (le(x, s, t) && le(x, t, s)) found = true;
    if (!found) reps.push_back(s);
  }
  return reps.size();
}

// The binary operation is the join of the carrier order.
bool op_is_join(const FiniteAlgebra& a) {
  const auto& p = a.carrier();
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j) {
      std::size_t k = a.apply(0, {i, j});
      if (!p.leq(i, k) || !p.leq(j, k)) return false;
      for (std::size_t u = 0; u < p.size(); ++u)
        if (p.leq(i, u) && p.leq(j, u) && !p.leq(k, u)) return false;
    }
  return true;
}

Report powerspaces(const Options& opt) {
  Report r;
  auto order_for = [&](Theory t) -> SetPreorder {
    if (t == Theory::lower && opt.hoare) return opt.hoare;
    if (t == Theory::convex && opt.hoare) {
      SetPreorder h = opt.hoare, s = set_preorder(Theory::upper);
      return [h, s](const FinitePoset& p, std::uint32_t f, std::uint32_t g) { return h(p, f, g) && s(p, f, g); };
    }
    return set_preorder(t);
  };
  auto c2 = FinitePoset::from_pairs({"a", "b"}, {{0, 1}});
  auto ab = FinitePoset::from_pairs({"a", "b"}, {});
  for (const auto& [label, x] : {std::pair{std::string("C2"), c2}, std::pair{std::string("antichain{a,b}"), ab}})
    for (Theory t : kTheories) {
      std::size_t brute = preorder_classes(x, set_preorder(t));
      std::size_t model = oracle::power_model(x, t).size();
      FreeAlgebraResult p = powerspace(x, t, order_for(t));
      FreeAlgebraResult f = free_ordered_algebra(x, power_theory(t), 6);
      std::ostringstream d;
      d << "brute force " << brute << ", set model " << model << ", carrier " << p.carrier.size() << ", free "
        << f.carrier.size();
      r.expect(std::string(theory_name(t)) + " over " + label + " has " + std::to_string(brute) + " elements",
               brute == model && p.carrier.size() == brute && f.stabilized && f.carrier.size() == brute, d.str(),
               {{"poset", poset_json(x)}, {"theory", theory_name(t)}});
    }

  Tally low("lower powerspace ≅ nonempty lower sets"), oracle_iso("powerspace ≅ set model"),
      laws("powerspace satisfies its theory"), stab("free_ordered_algebra stabilizes to the powerspace");
  for (const auto& x : posets_up_to(4))
    for (Theory t : kTheories) {
      json where = {{"poset", poset_json(x)}, {"theory", theory_name(t)}};
      FreeAlgebraResult p = powerspace(x, t, order_for(t));
      oracle_iso.expect(find_order_iso(p.carrier, oracle::power_model(x, t)).has_value(), where);
      if (t == Theory::lower)
        low.expect(find_order_iso(p.carrier, nonempty_lower_sets(x)).has_value() && op_is_join(*p.algebra), where);
      laws.report(check_algebra(*p.algebra, power_theory(t)), where);
      FreeAlgebraResult f = free_ordered_algebra(x, power_theory(t), 6);
      stab.expect(f.stabilized && unit_iso(f, p).has_value(), where);
    }
  low.into(r, "posets");
  oracle_iso.into(r, "posets × theories");
  laws.into(r, "algebras");
  stab.into(r, "posets × theories");
  return r;
}

// ---------------------------------------------------------------- 6

Report universal() {
  Report r;
  for (Theory t : kTheories) {
    AlgebraTheory e = power_theory(t);
    auto targets = algebras_up_to(e, 3);
    Tally u(std::string("every continuous f extends uniquely (") + theory_name(t) + ")");
    std::size_t instances = 0;
    for (const auto& x : posets_up_to(3)) {
      FreeAlgebraResult f = free_ordered_algebra(x, e, 6);
      if (!f.stabilized) {
        u.expect(false, {{"poset", poset_json(x)}, {"reason", "free algebra did not stabilize"}});
        continue;
      }
      for (const auto& b : targets) {
        u.report(verify_universal_property(x, f, b, e), {{"poset", poset_json(x)}, {"target", b.to_json()}});
        ++instances;
      }
    }
    u.into(r, "X × B pairs over " + std::to_string(targets.size()) + " target algebras");
  }
  return r;
}

// ---------------------------------------------------------------- 7

Report preservation() {
  Report r;
  for (Theory t : kTheories) {
    Tally fin(std::string("finite ≤ 4, ") + theory_name(t));
    for (const auto& x : posets_up_to(4)) fin.report(check_preservation(alex(x), t), poset_json(x));
    fin.into(r, "posets");
  }
  Bound b{16};
  for (const auto& [label, x] : {std::pair{std::string("ω"), omega_alex()}, std::pair{std::string("ω+1"), omega_top_scott()}})
    for (Theory t : kTheories) {
      Report p = check_preservation(x, t, b);
      r.merge(p, label + ", " + theory_name(t));
    }
  return r;
}

// ---------------------------------------------------------------- 8

Report closure() {
  Report r;
  std::vector<FiniteBPoset> tests;
  for (const auto& fp : posets_up_to(3)) tests.push_back(finite_pi(fp));
  Tally prod("products satisfy the universal property"), exp("exponentials satisfy ev/curry laws"),
      id("exponential family = ID");
  for (const auto& fa : posets_up_to(3))
    for (const auto& fb : posets_up_to(3)) {
      json where = {{"left", poset_json(fa)}, {"right", poset_json(fb)}};
      FiniteBPoset p = finite_pi(fa), q = finite_pi(fb);
      prod.report(check_finite_product_laws(p, q, tests), where);
      exp.report(check_finite_exponential_laws(p, q, tests), where);
      FiniteExponential e = finite_exponential(p, q);
      id.expect(e.exp.ideals == finite_ideals(e.exp.base), where);
    }
  prod.into(r, "pairs against " + std::to_string(tests.size()) + " test b-posets");
  exp.into(r, "pairs against " + std::to_string(tests.size()) + " test b-posets");
  id.into(r, "exponentials");
  return r;
}

// ---------------------------------------------------------------- 9

Report examples5() {
  Report r;
  r.merge(basis_isomorphic_pair(Bound{32}), "basis-isomorphic pair");
  r.merge(nat_to_two_exponential(Bound{32}), "ℕ → B");
  return r;
}

// ---------------------------------------------------------------- 10

Report bases(const Options& opt) {
  Report r;
  Report d = check_nab(dyadic_nab(), 64);
  r.merge(d, "dyadic basis");
  const Check* in = find_check(d, "interpolation");
  r.expect("dyadic interpolation has witnesses", in && in->detail.find("witness found") != std::string::npos,
           in ? in->detail : "");

  r.merge(roundtrip_nab_space(dyadic_nab(), Bound{16}), "dyadic round trip");
  r.merge(roundtrip_space_nab(omega_top_scott(), Bound{24}), "ω+1 round trip");
  Tally rt("finite round trips");
  for (const auto& fp : posets_up_to(3)) {
    std::vector<std::pair<std::size_t, std::size_t>> ord;
    for (std::size_t i = 0; i < fp.size(); ++i)
      for (std::size_t j = 0; j < fp.size(); ++j)
        if (fp.leq(i, j)) ord.push_back({i, j});
    rt.report(roundtrip_space_nab(alex(fp)), poset_json(fp));
    rt.report(roundtrip_nab_space(Nab::of_table(fp, ord)), poset_json(fp));
  }
  rt.into(r, "bases and spaces");

  Tally ce("≪ = ≺₀ on finite Y^X");
  for (const auto& x : posets_up_to(3))
    for (const auto& y : posets_up_to(3))
      ce.report(check_con_exponential(con_exponential(x, y)), {{"x", poset_json(x)}, {"y", poset_json(y)}});
  ce.into(r, "exponentials");

  Tally ev("ev/curry with uniqueness, |Z|,|X|,|Y| ≤ 2");
  auto ps = posets_up_to(2);
  for (const auto& z : ps)
    for (const auto& x : ps)
      for (const auto& y : ps)
        for (const auto& f : monotone_maps(finite_product(z, x), y))
          ev.report(eval_and_curry(z, x, y, f),
                    {{"z", poset_json(z)}, {"x", poset_json(x)}, {"y", poset_json(y)}, {"f", f}});
  ev.into(r, "maps");

  Tally ev3("ev/curry with uniqueness, sampled at 3");
  auto three = posets_up_to_iso(3);
  std::mt19937_64 rng(opt.seed);
  for (int k = 0; k < 24; ++k) {
    const auto& z = three[rng() % three.size()];
    const auto& x = three[rng() % three.size()];
    const auto& y = three[rng() % three.size()];
    auto fs = monotone_maps(finite_product(z, x), y);
    const auto& f = fs[rng() % fs.size()];
    ev3.report(eval_and_curry(z, x, y, f),
               {{"z", poset_json(z)}, {"x", poset_json(x)}, {"y", poset_json(y)}, {"f", f}, {"seed", opt.seed}});
  }
  ev3.into(r, "sampled maps");
  return r;
}

// ---------------------------------------------------------------- 11

json c2_json() { return poset_json(FinitePoset::from_pairs({"a", "b"}, {{0, 1}})); }

Report mutations() {
  Report r;
  std::vector<json> cases = {
      {{"mutation", "smyth_reversed"}, {"poset", c2_json()}},
      {{"mutation", "lower_is_principal"}, {"space", omega_top_scott()->to_json()}},
      {{"mutation", "strict_dyadic"}},
      {{"mutation", "single_strict_pair"}, {"poset", c2_json()}, {"pairs", json::array({json::array({"a", "b"})})}},
  };
  r.inputs = {{"replays", json::array()}};
  for (auto& c : cases) {
    Report m = replay(c);
    const Check* f = m.first_failure();
    std::string name = c["mutation"].get<std::string>() + " is refuted";
    if (!f || f->counterexample.is_null()) {
      r.fail(name, f ? "fail without a counterexample" : "every check passed", c);
      continue;
    }
    Report again = replay(c);
    const Check* g = again.first_failure();
    bool same = g && g->name == f->name && g->counterexample == f->counterexample;
    json entry = c;
    entry["expect"] = {{"check", f->name}, {"counterexample", f->counterexample}};
    r.inputs["replays"].push_back(entry);
    r.expect(name, same, f->name + ": " + f->counterexample.dump(), same ? json(nullptr) : entry);
  }
  return r;
}

}  // namespace

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "finite exhaustive layer", 60},
      {2, "upper topology on ℕ^⊤", 1},
      {3, "retract theorem", 10},
      {4, "product laws", 30},
      {5, "powerspace oracles", 60},
      {6, "universal property", 120},
      {7, "preservation", 60},
      {8, "cartesian closure, finite mode", 60},
      {9, "basis-isomorphic pair and ℕ → B", 10},
      {10, "normal abstract bases", 120},
      {11, "mutation sensitivity", 30},
  };
  return all;
}

const Criterion& criterion(int id) {
  for (const auto& c : criteria())
    if (c.id == id) return c;
  throw std::invalid_argument("unknown criterion " + std::to_string(id));
}

Report run_criterion(int id, const Options& opt) {
  const Criterion& c = criterion(id);
  auto start = std::chrono::steady_clock::now();
  Report body;
  switch (id) {
    case 1: body = finite_layer(); break;
    case 2: body = remark(); break;
    case 3: body = retract(); break;
    case 4: body = products(); break;
    case 5: body = powerspaces(opt); break;
    case 6: body = universal(); break;
    case 7: body = preservation(); break;
    case 8: body = closure(); break;
    case 9: body = examples5(); break;
    case 10: body = bases(opt); break;
    case 11: body = mutations(); break;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  Report r(std::to_string(id) + ". " + c.title);
  r.merge(body);
  r.inputs = body.inputs;
  std::ostringstream d;
  d.precision(3);
  d << std::fixed << secs << " s";
  std::ostringstream lim;
  lim << "time < " << c.limit_seconds << " s";
  r.expect(lim.str(), secs < c.limit_seconds, d.str());
  r.seconds = secs;
  return r;
}

std::vector<int> suite_members(const std::string& name) {
  if (name == "paper") return {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11};
  if (name == "quick") return {1, 5, 6, 8};
  throw std::invalid_argument("unknown suite '" + name + "' (expected paper or quick)");
}

Report replay(const json& in) {
  if (!in.is_object() || !in.contains("mutation") || !in["mutation"].is_string())
    throw std::invalid_argument("replay: expected an object with a string 'mutation'");
  std::string m = in["mutation"];
  Report r("replay " + m);
  r.inputs = in;
  if (m == "smyth_reversed") {
    FinitePoset x = finite_table(Poset::from_json(in.at("poset")));
    SetPreorder reversed = [](const FinitePoset& p, std::uint32_t f, std::uint32_t g) {
      return set_preorder(Theory::upper)(p, g, f);
    };
    FreeAlgebraResult bad = powerspace(x, Theory::upper, reversed);
    r.merge(check_algebra(*bad.algebra, power_theory(Theory::upper)));
    FreeAlgebraResult good = free_ordered_algebra(x, power_theory(Theory::upper), 6);
    r.expect("agrees with the free upper algebra", unit_iso(good, bad).has_value(), "",
             {{"free", good.carrier.size()}, {"mutated", bad.carrier.size()}});
  } else if (m == "lower_is_principal") {
    SpacePtr x = space_from_json(in.at("space"));
    r.merge(check_adjunction(x, Bound{}, [](const Elem& e) { return ideal::principal(e); }));
  } else if (m == "strict_dyadic") {
    r.merge(check_nab(Nab::of_rule(Poset::dyadic(), PrecRule::strict), 32));
  } else if (m == "single_strict_pair") {
    FinitePoset x = finite_table(Poset::from_json(in.at("poset")));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& pr : in.at("pairs")) {
      auto a = x.index_of(pr.at(0).get<std::string>()), b = x.index_of(pr.at(1).get<std::string>());
      if (!a || !b) throw std::invalid_argument("replay: unknown element in pairs");
      pairs.push_back({*a, *b});
    }
    r.merge(check_nab(Nab::of_table(x, pairs)));
  } else {
    throw std::invalid_argument("replay: unknown mutation '" + m + "'");
  }
  return r;
}

}  // namespace dspace::suite
