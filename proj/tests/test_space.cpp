#include <doctest.h>

#include <set>

#include "dspace/corpus.hpp"
#include "dspace/oracle.hpp"
#include "dspace/space.hpp"

using namespace dspace;

namespace {

std::vector<Elem> members_of(std::uint32_t mask, std::size_t n) {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1) out.push_back(Elem(static_cast<std::int64_t>(i)));
  return out;
}

Poset omega_top() { return Poset::adjoin_top(Poset::omega()); }

SpacePtr omega_top_scott() { return make_poset_space(omega_top(), TopologyKind::scott); }

SpacePtr nat_top_upper() { return make_poset_space(Poset::adjoin_top(Poset::flat_nat()), TopologyKind::upper); }

FinitePoset product_table(const FinitePoset& a, const FinitePoset& b) {
  std::vector<std::string> names;
  std::vector<std::uint8_t> leq;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) names.push_back(a.name(i) + "," + b.name(j));
  std::size_t n = names.size();
  leq.resize(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      leq[x * n + y] = a.leq(x / b.size(), y / b.size()) && b.leq(x % b.size(), y % b.size());
  return FinitePoset(names, leq);
}

// Projection of a product family onto coordinate i.
DirectedFamily project(const Space& prod, const DirectedFamily& d, std::size_t i) {
  if (d.finite()) {
    std::set<Elem> s;
    for (auto& m : d.members) s.insert(m[i]);
    return DirectedFamily::of_set({s.begin(), s.end()});
  }
  const Elem& coord = ProductSpace::coordinate(*d.chain, i);
  if (coord.tag == 0) return DirectedFamily::of_chain(coord[0]);
  (void)prod;
  return DirectedFamily::of_set({coord[0]});
}

}  // namespace

TEST_CASE("finite spaces agree with the brute-force topology oracle") {
  for (const auto& fp : posets_up_to(4)) {
    Poset p = Poset::explicit_finite(fp);
    std::size_t n = fp.size();
    auto dirs = oracle::directed_subsets(fp);
    for (auto topo : {TopologyKind::alexandrov, TopologyKind::upper}) {
      auto t = topo == TopologyKind::alexandrov ? oracle::alexandrov(fp) : oracle::upper(fp);
      PosetSpace x(p, topo);
      CAPTURE(x.name());
      for (std::uint32_t u = 0; u < (1u << n); ++u) {
        auto r = is_directed_open(x, Subset::of(members_of(u, n)));
        OpenVerdict want = !oracle::directed_open(t, fp, u) ? OpenVerdict::not_directed_open
                           : t.is_open(u)                    ? OpenVerdict::open
                                                             : OpenVerdict::directed_open_not_open;
        CHECK(r.verdict == want);
        CHECK(r.exact);
      }
      for (auto d : dirs)
        for (std::size_t i = 0; i < n; ++i) {
          auto c = converges(x, DirectedFamily::of_set(members_of(d, n)), Elem(i));
          CHECK(c.value == oracle::converges(t, d, i));
          CHECK(c.exact);
        }
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          auto w = way_below(x, Elem(i), Elem(j));
          CHECK(w.verdict == oracle::way_below(t, fp, i, j));
          CHECK(w.verdict == fp.leq(i, j));
          CHECK(w.exact);
        }
      auto cl = classify(x);
      CHECK(cl.kind == SpaceClass::algebraic);
      CHECK(cl.exact);
      CHECK(cl.compacts.size() == n);
      CHECK(check_specialization(x).ok());
    }
  }
}

TEST_CASE("coreflection of finite spaces is the identity") {
  for (const auto& fp : posets_up_to(3)) {
    SpacePtr x = make_poset_space(Poset::explicit_finite(fp), TopologyKind::alexandrov);
    CHECK(coreflect(x) == x);
  }
}

TEST_CASE("declared finite topologies") {
  auto s = PosetSpace::declared({"0", "1"}, {{}, {"1"}, {"0", "1"}});
  CHECK(s->leq(Elem(0), Elem(1)));
  CHECK_FALSE(s->leq(Elem(1), Elem(0)));
  CHECK(classify(*s).kind == SpaceClass::algebraic);
  CHECK_THROWS_AS(PosetSpace::declared({"0", "1"}, {{}, {"0", "1"}}), std::invalid_argument);
  CHECK_THROWS_AS(PosetSpace::declared({"a", "b", "c"}, {{}, {"a"}, {"b"}, {"a", "b", "c"}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(PosetSpace::declared({"a"}, {{"a"}}), std::invalid_argument);
}

TEST_CASE("convergence examples") {
  auto w = omega_top_scott();
  Elem chain = w->chains(8).front();
  CHECK(converges(*w, DirectedFamily::of_chain(chain), w->sample(1).front()).value);

  auto nt = nat_top_upper();
  Poset ntp = Poset::adjoin_top(Poset::flat_nat());
  CHECK_FALSE(converges(*nt, DirectedFamily::of_set({ntp.parse("5")}), ntp.parse("⊤")).value);

  auto c2 = make_poset_space(Poset::chain(2), TopologyKind::alexandrov);
  auto cv = converges(*c2, DirectedFamily::of_set({Elem(1)}), Elem(0));
  CHECK(cv.value);
  CHECK(cv.exact);
  CHECK_THROWS_AS(converges(*c2, DirectedFamily::of_set({Elem(1)}), Elem(5)), std::domain_error);
}

TEST_CASE("directed-open examples") {
  auto nt = nat_top_upper();
  Poset ntp = Poset::adjoin_top(Poset::flat_nat());
  auto r = is_directed_open(*nt, Subset::of({ntp.parse("⊤")}));
  CHECK(r.verdict == OpenVerdict::directed_open_not_open);

  auto c2 = make_poset_space(Poset::chain(2), TopologyKind::alexandrov);
  CHECK(is_directed_open(*c2, Subset::of({Elem(0)})).verdict == OpenVerdict::not_directed_open);
  CHECK(is_directed_open(*c2, Subset::whole()).verdict == OpenVerdict::open);
  CHECK(is_directed_open(*nt, Subset::whole()).verdict == OpenVerdict::open);
}

TEST_CASE("way-below examples") {
  auto w = omega_top_scott();
  Poset p = omega_top();
  Elem top = p.parse("⊤"), three = p.parse("3");
  auto a = way_below(*w, three, top);
  CHECK(a.verdict);
  CHECK(a.exact);
  auto b = way_below(*w, top, top);
  CHECK_FALSE(b.verdict);
  CHECK(b.exact);
  CHECK(b.refuting_family["first"] == json({"0", "1", "2", "3"}));

  auto c2 = make_poset_space(Poset::chain(2), TopologyKind::alexandrov);
  CHECK(way_below(*c2, Elem(0), Elem(1)).verdict);
}

TEST_CASE("classification and coreflection of the flat naturals with top") {
  auto nt = nat_top_upper();
  auto cl = classify(*nt);
  CHECK(cl.kind == SpaceClass::not_directed);
  CHECK(cl.compacts.size() == nt->sample(Bound{}.depth).size());
  CHECK(cl.detail.find("↑⊤") != std::string::npos);

  SpacePtr d = coreflect(nt);
  CHECK(d->topology() == TopologyKind::alexandrov);
  CHECK(classify(*d).kind == SpaceClass::algebraic);
  CHECK(coreflect(d) == d);
  // Every upper set sampled is now open.
  Poset ntp = Poset::adjoin_top(Poset::flat_nat());
  CHECK(is_directed_open(*d, Subset::of({ntp.parse("⊤")})).verdict == OpenVerdict::open);
}

TEST_CASE("omega plus one is algebraic with the naturals compact") {
  auto w = omega_top_scott();
  auto cl = classify(*w);
  CHECK(cl.kind == SpaceClass::algebraic);
  Poset p = omega_top();
  std::set<Elem> ks(cl.compacts.begin(), cl.compacts.end());
  CHECK_FALSE(ks.count(p.parse("⊤")));
  for (auto& e : w->sample(Bound{}.depth))
    if (e != p.parse("⊤")) CHECK(ks.count(e));
  CHECK(coreflect(w) == w);
}

TEST_CASE("products") {
  auto c2 = make_poset_space(Poset::chain(2), TopologyKind::alexandrov);
  auto sq = product({c2, c2});
  CHECK(sq->sample(100).size() == 4);
  CHECK(classify(*sq).kind == SpaceClass::algebraic);

  auto w = omega_top_scott();
  auto ww = product({w, w});
  Poset p = omega_top();
  Elem top = p.parse("⊤");
  Elem tt(0, {top, top});
  DirectedFamily diag = DirectedFamily::of_generator(
      [](std::size_t n) {
        Elem k(0, {Elem(static_cast<std::int64_t>(n))});
        return Elem(0, {k, k});
      },
      "diagonal");
  CHECK(converges(*ww, diag, tt).value);
  CHECK(way_below(*ww, Elem(0, {p.parse("3"), p.parse("5")}), tt).verdict);
  CHECK_FALSE(way_below(*ww, Elem(0, {top, p.parse("0")}), tt).verdict);
  CHECK(product({})->sample(5).size() == 1);
}

TEST_CASE("product convergence and way-below are componentwise") {
  auto w = omega_top_scott();
  auto ww = product({w, w});
  auto& prod = dynamic_cast<const ProductSpace&>(*ww);
  Bound b{24};
  auto pts = ww->sample(40);
  for (const auto& d : catalog(*ww, b))
    for (const auto& x : pts) {
      bool joint = converges(*ww, d, x, b).value;
      bool comp = converges(*w, project(prod, d, 0), x[0], b).value &&
                  converges(*w, project(prod, d, 1), x[1], b).value;
      CHECK(joint == comp);
    }
  auto few = ww->sample(24);
  for (const auto& x : few)
    for (const auto& y : few) {
      bool joint = way_below(*ww, x, y, b).verdict;
      bool comp = way_below(*w, x[0], y[0], b).verdict && way_below(*w, x[1], y[1], b).verdict;
      CHECK(joint == comp);
    }
}

TEST_CASE("finite products: componentwise laws and separate continuity") {
  auto small = posets_up_to(3);
  for (const auto& fa : small)
    for (const auto& fb : small) {
      if (fa.size() * fb.size() > 6) continue;
      auto a = make_poset_space(Poset::explicit_finite(fa), TopologyKind::alexandrov);
      auto bsp = make_poset_space(Poset::explicit_finite(fb), TopologyKind::alexandrov);
      auto ab = product({a, bsp});
      auto& prod = dynamic_cast<const ProductSpace&>(*ab);
      FinitePoset table = product_table(fa, fb);
      auto elem = [&](std::size_t k) {
        return Elem(0, {Elem(static_cast<std::int64_t>(k / fb.size())), Elem(static_cast<std::int64_t>(k % fb.size()))});
      };
      for (auto d : oracle::directed_subsets(table)) {
        std::vector<Elem> ms;
        for (std::size_t k = 0; k < table.size(); ++k)
          if (d >> k & 1) ms.push_back(elem(k));
        auto fam = DirectedFamily::of_set(ms);
        for (std::size_t k = 0; k < table.size(); ++k) {
          Elem x = elem(k);
          bool comp = converges(*a, project(prod, fam, 0), x[0]).value &&
                      converges(*bsp, project(prod, fam, 1), x[1]).value;
          CHECK(converges(*ab, fam, x).value == comp);
        }
      }
      for (const auto& fc : small) {
        auto c = make_poset_space(Poset::explicit_finite(fc), TopologyKind::alexandrov);
        for (const auto& m : monotone_maps(table, fc)) {
          PointMap f = [&, m](const Elem& x) {
            return Elem(static_cast<std::int64_t>(m[x[0].tag * fb.size() + x[1].tag]));
          };
          Report r = check_separate_continuity(prod, *c, f);
          CHECK(r.ok());
          CHECK_FALSE(r.has_bounded());
        }
      }
    }
}

TEST_CASE("a non-monotone map fails both continuity checks") {
  auto c2 = make_poset_space(Poset::chain(2), TopologyKind::alexandrov);
  auto sq = product({c2, c2});
  PointMap f = [](const Elem& x) { return Elem(x[0].tag == 1 && x[1].tag == 1 ? 0 : x[0].tag); };
  Report r = check_separate_continuity(dynamic_cast<const ProductSpace&>(*sq), *c2, f);
  CHECK(r.checks()[0].verdict == Verdict::fail);
  CHECK(r.checks()[1].verdict == Verdict::fail);
  CHECK(r.checks()[2].verdict == Verdict::pass);
}

TEST_CASE("join on omega plus one squared is separately and jointly continuous") {
  auto w = omega_top_scott();
  auto ww = product({w, w});
  Poset p = omega_top();
  PointMap join = [p](const Elem& x) { return p.leq(x[0], x[1]) ? x[1] : x[0]; };
  Report r = check_separate_continuity(dynamic_cast<const ProductSpace&>(*ww), *w, join, Bound{16});
  CHECK(r.ok());
  CHECK(r.has_bounded());
}

TEST_CASE("basis checks") {
  auto w = omega_top_scott();
  Poset p = omega_top();
  Elem top = p.parse("⊤");
  Report all = is_basis(*w, [&](const Elem& e) { return e != top; });
  CHECK(all.ok());
  Report no0 = is_basis(*w, [&](const Elem& e) { return e != top && e != p.parse("0"); });
  REQUIRE_FALSE(no0.ok());
  bool flagged = false;
  for (auto& c : no0.checks())
    if (c.name == "K(X) ⊆ B") flagged = c.verdict == Verdict::fail && c.counterexample == "0";
  CHECK(flagged);
  for (const auto& fp : posets_up_to(3)) {
    auto x = make_poset_space(Poset::explicit_finite(fp), TopologyKind::alexandrov);
    CHECK(is_basis(*x, [](const Elem&) { return true; }).ok());
  }
}

TEST_CASE("continuous-space properties on omega plus one") {
  auto w = omega_top_scott();
  Bound b{32};
  auto pts = w->sample(20);
  auto big = w->sample(64);
  for (const auto& x : pts)
    for (const auto& y : pts) {
      if (!way_below(*w, x, y, b).verdict) continue;
      // Interpolation.
      bool found = false;
      for (const auto& z : big)
        if (way_below(*w, x, z, b).verdict && way_below(*w, z, y, b).verdict) found = true;
      CHECK(found);
    }
  // ⇑x is the interior of ↑x on sampled points.
  for (const auto& x : pts)
    for (const auto& y : pts) {
      bool interior = false;
      for (const auto& o : w->local_base(y, b.depth)) {
        bool inside = true;
        for (const auto& z : big)
          if (w->in_open(o, z) && !w->leq(x, z)) inside = false;
        interior = interior || inside;
      }
      CHECK(interior == way_below(*w, x, y, b).verdict);
    }
  // Principal upper sets of compacts form a base.
  auto ks = classify(*w, b).compacts;
  for (const auto& y : pts)
    for (const auto& o : w->local_base(y, b.depth)) {
      bool covered = false;
      for (const auto& k : ks) {
        if (!w->leq(k, y)) continue;
        bool inside = true;
        for (const auto& z : big)
          if (w->leq(k, z) && !w->in_open(o, z)) inside = false;
        covered = covered || inside;
      }
      CHECK(covered);
    }
}

TEST_CASE("scott topology is rejected outside its supported constructors") {
  CHECK_THROWS_AS(make_poset_space(Poset::dyadic(), TopologyKind::scott), std::invalid_argument);
}
