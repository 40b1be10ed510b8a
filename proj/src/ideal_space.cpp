#include "dspace/ideal_space.hpp"

#include <map>
#include <stdexcept>

namespace dspace {

TopologicalIdeal make_topological_ideal(const Space& x, const DirectedFamily& gen, Bound b) {
  if (gen.finite()) {
    if (gen.members.empty()) throw std::invalid_argument("not directed: the family is empty");
    for (const auto& m : gen.members)
      if (!x.contains(m)) throw std::domain_error("family member outside the space: " + to_string(m));
    for (const auto& p : gen.members)
      for (const auto& q : gen.members) {
        bool ub = false;
        for (const auto& u : gen.members) ub = ub || (x.leq(p, u) && x.leq(q, u));
        if (!ub)
          throw std::invalid_argument("not directed: " + x.show(p) + " and " + x.show(q) +
                                      " have no upper bound in the family");
      }
    for (const auto& m : gen.members)
      if (std::all_of(gen.members.begin(), gen.members.end(), [&](const Elem& e) { return x.leq(e, m); }))
        return {ideal::principal(m), m, gen};
    throw std::logic_error("finite directed family without a maximum");
  }
  if (!gen.chain) throw std::invalid_argument("only finite families and catalog chains generate ideals");
  const Elem& c = *gen.chain;
  std::vector<Elem> cands;
  if (auto lim = x.chain_limit(c)) cands.push_back(*lim);
  else
    for (auto& u : x.sample(b.approximants()))
      if (x.chain_below(c, u).value) cands.push_back(u);
  std::vector<Elem> good;
  for (auto& u : cands)
    if (x.chain_below(c, u).value && converges(x, gen, u, b).value) good.push_back(u);
  for (const auto& u : good)
    if (std::all_of(good.begin(), good.end(), [&](const Elem& v) { return x.leq(u, v); }))
      return {normalize_ideal(x, ideal::generated(c)), u, gen};
  throw std::invalid_argument("not an ideal net (up to bound " + std::to_string(b.approximants()) + "): " +
                              x.show_chain(c) + " converges to no upper bound");
}

// ---------------------------------------------------------------- ideal families

IdealFamilySpace::IdealFamilySpace(CarrierPtr c, std::vector<Elem> extra, std::function<bool(const Elem&)> has_extra,
                                   std::string label)
    : c_(std::move(c)), has_(std::move(has_extra)), label_(std::move(label)) {
  for (auto& e : extra) {
    Elem n = normalize_ideal(*c_, e);
    if (!ideal::is_principal(n) && !find(n)) extra_.push_back(n);
  }
}

std::optional<std::size_t> IdealFamilySpace::find(const Elem& a) const {
  for (std::size_t i = 0; i < extra_.size(); ++i)
    if (extra_[i] == a) return i;
  if (ideal::is_principal(a)) return std::nullopt;
  for (std::size_t i = 0; i < extra_.size(); ++i)
    if (ideal_equal(*c_, extra_[i], a).value) return i;
  return std::nullopt;
}

json IdealFamilySpace::to_json() const {
  json ex = json::array();
  for (const auto& e : extra_) ex.push_back(dspace::to_json(e));
  return {{"ideal_family", label_}, {"extra", ex}};
}

std::vector<Elem> IdealFamilySpace::sample(std::size_t n) const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < extra_.size() && out.size() < n / 2; ++i) out.push_back(extra_[i]);
  for (auto& a : c_->sample(n - out.size())) out.push_back(ideal::principal(a));
  return out;
}

bool IdealFamilySpace::contains(const Elem& a) const {
  switch (a.tag) {
    case 0: return a.parts.size() == 1 && c_->contains(a[0]);
    case 1:
    case 2: {
      Elem n = normalize_ideal(*c_, a);
      if (ideal::is_principal(n)) return c_->contains(n[0]);
      return find(n).has_value() || (has_ && has_(n));
    }
    default: return false;
  }
}

bool IdealFamilySpace::leq(const Elem& a, const Elem& b) const { return ideal_subset(*c_, a, b).value; }

std::vector<Elem> IdealFamilySpace::chains(std::size_t bound) const {
  std::vector<Elem> out;
  for (auto& c : c_->chains(bound)) out.push_back(Elem(0, {c}));
  return out;
}

Elem IdealFamilySpace::chain_member(const Elem& c, std::size_t n) const {
  return ideal::principal(c_->chain_member(c[0], n));
}

Judgement IdealFamilySpace::chain_down_contains(const Elem& c, const Elem& a) const {
  if (ideal::is_principal(a)) return c_->chain_down_contains(c[0], a[0]);
  if (a.tag == 2) {
    Judgement all = Judgement::sure(true);
    for (const auto& m : a.parts) all = all && c_->chain_down_contains(c[0], m);
    return all;
  }
  // A ⊆ ↓c(n) for some n.
  for (std::size_t n = 0; n < kChainProbe; ++n)
    if (c_->chain_below(a[0], c_->chain_member(c[0], n)).value) return Judgement::sure(true);
  return Judgement::sampled(false, kChainProbe);
}

Judgement IdealFamilySpace::chain_below(const Elem& c, const Elem& b) const {
  return ideal_subset(*c_, ideal::generated(c[0]), b);
}

Judgement IdealFamilySpace::chain_included(const Elem& c, const Elem& d) const {
  return c_->chain_included(c[0], d[0]);
}

std::optional<Elem> IdealFamilySpace::chain_limit(const Elem& c) const {
  // The union of ↓c(n) is ↓c; it is the supremum when it belongs to the family.
  Elem body = normalize_ideal(*c_, ideal::generated(c[0]));
  if (ideal::is_principal(body)) return body;
  if (auto i = find(body)) return extra_[*i];
  if (has_ && has_(body)) return body;
  return std::nullopt;
}

std::vector<Elem> IdealFamilySpace::local_base(const Elem& a, std::size_t bound) const {
  if (ideal::is_principal(a)) return {Elem(0, {a[0]})};
  if (a.tag == 2) return {Elem(0, {a.parts.back()})};
  std::vector<Elem> out;
  for (std::size_t i = 0; i < bound; ++i) out.push_back(Elem(0, {c_->chain_member(a[0], i)}));
  return out;
}

std::vector<Elem> IdealFamilySpace::approximant_hints(const Elem& a, std::size_t bound) const {
  std::vector<Elem> out;
  if (a.tag == 1)
    for (std::size_t i = 0; i < bound; ++i) out.push_back(ideal::principal(c_->chain_member(a[0], i)));
  return out;
}

bool IdealFamilySpace::in_open(const Elem& open, const Elem& a) const { return ideal_member(*c_, a, open[0]).value; }

std::optional<Judgement> IdealFamilySpace::converges_hint(const DirectedFamily& d, const Elem& a) const {
  // ↓c(n) → A iff every a ∈ A lies below some c(n).
  if (d.chain) return ideal_subset(*c_, a, ideal::generated((*d.chain)[0]));
  return std::nullopt;
}

// ---------------------------------------------------------------- I_T(X)

namespace {

std::vector<TopologicalIdeal> inventory_of(const Space& x, Bound b) {
  std::vector<TopologicalIdeal> inv;
  for (const auto& c : x.chains(b.depth)) {
    try {
      auto t = make_topological_ideal(x, DirectedFamily::of_chain(c, x.show_chain(c)), b);
      if (ideal::is_principal(t.body)) continue;
      bool dup = false;
      for (const auto& o : inv) dup = dup || ideal_equal(x, o.body, t.body).value;
      if (!dup) inv.push_back(std::move(t));
    } catch (const std::invalid_argument&) {
    }
  }
  return inv;
}

std::vector<Elem> bodies(const std::vector<TopologicalIdeal>& inv) {
  std::vector<Elem> out;
  for (const auto& t : inv) out.push_back(t.body);
  return out;
}

}  // namespace

IdealSpace::IdealSpace(SpacePtr base, Bound b) : IdealSpace(base, b, inventory_of(*base, b)) {}

IdealSpace::IdealSpace(SpacePtr base, Bound b, std::vector<TopologicalIdeal> inv)
    : IdealFamilySpace(base, bodies(inv)), x_(std::move(base)), b_(b), inv_(std::move(inv)) {}

Elem IdealSpace::sup(const Elem& a) const {
  if (ideal::is_principal(a)) return ideal::point(a);
  if (auto i = find(a)) return inv_[*i].sup;
  throw std::domain_error("not a topological ideal of " + x_->name() + ": " + show(a));
}

const Classification& IdealSpace::base_classification() const {
  if (!cls_) cls_ = classify(*x_, b_);
  return *cls_;
}

std::shared_ptr<const IdealSpace> it_space(SpacePtr x, Bound b) {
  return std::make_shared<IdealSpace>(std::move(x), b);
}

// ---------------------------------------------------------------- ⇓ and sup

Elem wb_ideal(const IdealSpace& it, const Elem& pt, Bound b) {
  const Space& x = it.base();
  if (!x.contains(pt)) throw std::domain_error("point outside the space: " + to_string(pt));
  const auto& cl = it.base_classification();
  if (cl.kind != SpaceClass::continuous && cl.kind != SpaceClass::algebraic)
    throw std::domain_error("way-below map undefined: " + x.name() + " is classified " +
                            space_class_name(cl.kind) + " (failing point " + x.show(pt) + ")");
  if (way_below(x, pt, pt, b).verdict) return ideal::principal(pt);
  // In a continuous space ⇓x has a maximum only when x is compact, so a
  // non-compact point must match a non-principal inventory ideal.
  auto approx = x.sample(b.approximants());
  std::vector<bool> in;
  for (auto& y : approx) in.push_back(way_below(x, y, pt, b).verdict);
  for (const auto& t : it.inventory()) {
    if (t.sup != pt) continue;
    bool match = true;
    for (std::size_t i = 0; i < approx.size() && match; ++i)
      match = ideal_member(x, t.body, approx[i]).value == in[i];
    if (match) return t.body;
  }
  throw std::domain_error("⇓" + x.show(pt) + " is not an inventory ideal of " + it.name());
}

Report check_adjunction(SpacePtr xp, Bound b, LowerMap lower) {
  const Space& x = *xp;
  IdealSpace it(xp, b);
  Report r("⇓ ⊣ sup on " + x.name());
  const auto& cl = it.base_classification();
  bool continuous = cl.kind == SpaceClass::continuous || cl.kind == SpaceClass::algebraic;
  if (!lower && !continuous) {
    r.fail("⇓ defined", std::string("classified ") + space_class_name(cl.kind) + "; the way-below map is undefined",
           cl.witness);
    return r;
  }
  std::map<Elem, Elem> cache;
  json failure;
  auto low = [&](const Elem& e) -> Elem {
    auto f = cache.find(e);
    if (f != cache.end()) return f->second;
    Elem v = lower ? lower(e) : wb_ideal(it, e, b);
    cache.emplace(e, v);
    return v;
  };
  auto pts = x.sample(b.points());
  auto ids = it.sample(b.points());
  bool exact = x.finite() && pts.size() < b.points();
  auto verdict = [&](const std::string& name, bool ok, json cx) {
    if (!ok) r.fail(name, "", std::move(cx));
    else if (exact) r.pass(name);
    else r.bounded(name, b.points());
  };
  try {
    json cx;
    for (const auto& e : pts)
      for (const auto& a : ids) {
        if (!cx.is_null()) break;
        bool lhs = it.leq(low(e), a), rhs = x.leq(e, it.sup(a));
        if (lhs != rhs)
          cx = {{"x", x.show(e)}, {"A", it.show(a)}, {"lower_in_A", lhs}, {"x_below_sup", rhs}};
      }
    verdict("⇓x ⊆ A ⇔ x ⊑ sup A", cx.is_null(), cx);
    cx = nullptr;
    for (const auto& e : pts)
      if (cx.is_null() && it.sup(low(e)) != e) cx = {{"x", x.show(e)}, {"sup", x.show(it.sup(low(e)))}};
    verdict("sup ∘ ⇓ = id", cx.is_null(), cx);
    cx = nullptr;
    for (const auto& a : ids)
      if (cx.is_null() && !it.leq(low(it.sup(a)), a)) cx = {{"A", it.show(a)}, {"lower_of_sup", it.show(low(it.sup(a)))}};
    verdict("⇓ ∘ sup ⊆ id", cx.is_null(), cx);
    cx = nullptr;
    for (const auto& e : pts)
      for (const auto& f : pts)
        if (cx.is_null() && x.leq(e, f) && !it.leq(low(e), low(f))) cx = {x.show(e), x.show(f)};
    verdict("⇓ monotone", cx.is_null(), cx);
    cx = nullptr;
    for (const auto& a : ids)
      for (const auto& c : ids)
        if (cx.is_null() && it.leq(a, c) && !x.leq(it.sup(a), it.sup(c))) cx = {it.show(a), it.show(c)};
    verdict("sup monotone", cx.is_null(), cx);
    cx = nullptr;
    r.judge("⇓ continuous", is_continuous(x, it, low, b, &cx), "", cx);
    cx = nullptr;
    r.judge("sup continuous", is_continuous(it, x, [&](const Elem& a) { return it.sup(a); }, b, &cx), "", cx);
  } catch (const std::domain_error& e) {
    r.fail("⇓ defined", e.what());
  }
  return r;
}

// ---------------------------------------------------------------- products and completions

namespace {

Elem project_ideal(const Space& f, const Elem& d, std::size_t i) {
  if (ideal::is_principal(d)) return ideal::principal(d[0][i]);
  const Elem& coord = ProductSpace::coordinate(ideal::chain(d), i);
  if (coord.tag == 1) return ideal::principal(coord[0]);
  return normalize_ideal(f, ideal::generated(coord[0]));
}

}  // namespace

Report it_product_check(SpacePtr xs, SpacePtr ys, Bound b) {
  SpacePtr ps = product({xs, ys});
  IdealSpace ip(ps, b), ix(xs, b), iy(ys, b);
  Report r("I_T(X ⊗ Y) vs I_T(X) ⊗ I_T(Y) for " + ps->name());
  auto ideals = ip.sample(b.points());
  auto pts = ps->sample(b.depth);
  bool exact = ps->finite() && pts.size() < b.depth;
  json proj_cx, rect_cx, open_cx, sup_cx;
  for (const auto& d : ideals) {
    Elem p0 = project_ideal(*xs, d, 0), p1 = project_ideal(*ys, d, 1);
    if (proj_cx.is_null() && (!ix.contains(p0) || !iy.contains(p1)))
      proj_cx = {{"ideal", ip.show(d)}, {"left", ix.show(p0)}, {"right", iy.show(p1)}};
    if (!ix.contains(p0) || !iy.contains(p1)) continue;
    Elem s = ip.sup(d);
    if (sup_cx.is_null() && (s[0] != ix.sup(p0) || s[1] != iy.sup(p1))) sup_cx = {{"ideal", ip.show(d)}};
    for (const auto& p : pts) {
      bool joint = ideal_member(*ps, d, p).value;
      bool split = ideal_member(*xs, p0, p[0]).value && ideal_member(*ys, p1, p[1]).value;
      if (rect_cx.is_null() && joint != split) rect_cx = {{"ideal", ip.show(d)}, {"point", ps->show(p)}};
      Elem u(0, {p});
      bool in = ip.in_open(u, d);
      bool in_split = ix.in_open(Elem(0, {p[0]}), p0) && iy.in_open(Elem(0, {p[1]}), p1);
      if (open_cx.is_null() && in != in_split) open_cx = {{"ideal", ip.show(d)}, {"open", ip.show_open(u)}};
    }
  }
  auto verdict = [&](const std::string& name, const json& cx) {
    if (!cx.is_null()) r.fail(name, "", cx);
    else if (exact) r.pass(name);
    else r.bounded(name, b.points());
  };
  verdict("projections are topological ideals", proj_cx);
  verdict("D = π₁D × π₂D", rect_cx);
  verdict("U_(x,y) = U_x × U_y", open_cx);
  verdict("sup is componentwise", sup_cx);
  return r;
}

Report check_ideal_completion(const IdealSpace& it, Bound b) {
  const Space& x = it.base();
  Report r("I_T(X) = ID(X) on " + x.name());
  for (const auto& c : x.chains(b.depth)) {
    Elem body = normalize_ideal(x, ideal::generated(c));
    if (!it.contains(body)) {
      std::string why;
      try {
        make_topological_ideal(x, DirectedFamily::of_chain(c), b);
      } catch (const std::invalid_argument& e) {
        why = e.what();
      }
      r.fail("every catalog ideal is topological", why, it.show(body));
      return r;
    }
  }
  if (x.finite()) r.pass("every catalog ideal is topological", "finite directed sets have maxima");
  else r.bounded("every catalog ideal is topological", b.depth, "relative to the chain catalog");
  return r;
}

Report check_principal_iso(const IdealSpace& it, Bound b) {
  const Space& x = it.base();
  Report r("x ↦ ↓x onto I_T(" + x.name() + ")");
  auto pts = x.sample(b.depth);
  bool exact = x.finite() && pts.size() < b.depth;
  json cx;
  for (const auto& p : pts)
    for (const auto& q : pts)
      if (cx.is_null() && it.leq(ideal::principal(p), ideal::principal(q)) != x.leq(p, q)) cx = {x.show(p), x.show(q)};
  if (!cx.is_null()) r.fail("order embedding", "", cx);
  else if (exact) r.pass("order embedding");
  else r.bounded("order embedding", b.depth);
  if (!it.inventory().empty())
    r.fail("onto", "a non-principal topological ideal exists", it.show(it.inventory().front().body));
  else if (exact) r.pass("onto");
  else r.bounded("onto", b.depth, "relative to the chain catalog");
  return r;
}

}  // namespace dspace
