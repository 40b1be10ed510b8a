#include "dspace/bposet.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "dspace/corpus.hpp"

namespace dspace {

// ---------------------------------------------------------------- b-posets

namespace {

void push_unique(const Carrier& c, std::vector<Elem>& out, const Elem& d) {
  Elem n = normalize_ideal(c, d);
  if (ideal::is_principal(n)) return;
  for (const auto& e : out)
    if (e == n || ideal_equal(c, e, n).value) return;
  out.push_back(n);
}

Elem coordinate_ideal(const Elem& coord) {
  return coord.tag == 0 ? ideal::generated(coord[0]) : ideal::principal(coord[0]);
}

}  // namespace

BPoset BPoset::listed(CarrierPtr base, std::vector<Elem> extra, std::string label) {
  BPoset p;
  p.kind_ = Kind::listed;
  p.base_ = std::move(base);
  p.label_ = std::move(label);
  p.raw_ = std::move(extra);
  for (const auto& e : p.raw_) push_unique(*p.base_, p.extra_, e);
  return p;
}

BPoset BPoset::complete(CarrierPtr base, Bound b, std::string label) {
  BPoset p;
  p.kind_ = Kind::complete;
  p.base_ = std::move(base);
  p.label_ = std::move(label);
  for (const auto& c : p.base_->chains(b.depth)) push_unique(*p.base_, p.extra_, ideal::generated(c));
  return p;
}

BPoset BPoset::product(const BPoset& p, const BPoset& q, Bound b) {
  BPoset r;
  r.kind_ = Kind::product;
  r.base_ = std::make_shared<ProductCarrier>(std::vector<CarrierPtr>{p.base_, q.base_});
  r.label_ = "(" + p.label_ + ")×(" + q.label_ + ")";
  r.factors_ = {p, q};
  for (const auto& c : r.base_->chains(b.depth)) {
    Elem d = ideal::generated(c);
    if (r.has_ideal(d)) push_unique(*r.base_, r.extra_, d);
  }
  return r;
}

bool BPoset::has_ideal(const Elem& d) const {
  Elem n = normalize_ideal(*base_, d);
  if (ideal::is_principal(n)) return base_->contains(n[0]);
  switch (kind_) {
    case Kind::listed:
      for (const auto& e : extra_)
        if (e == n || ideal_equal(*base_, e, n).value) return true;
      return false;
    case Kind::complete:
      if (n.tag == 1) return true;
      return check_ideal(*base_, n, 64).ok();
    case Kind::product:
      if (n.tag == 1) {
        for (std::size_t i = 0; i < factors_.size(); ++i)
          if (!factors_[i].has_ideal(coordinate_ideal(n[0][i]))) return false;
        return true;
      }
      {
        std::vector<std::set<Elem>> proj(factors_.size());
        for (const auto& m : n.parts)
          for (std::size_t i = 0; i < factors_.size(); ++i) proj[i].insert(m[i]);
        std::size_t rect = 1;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
          if (!factors_[i].has_ideal(ideal::finite_set({proj[i].begin(), proj[i].end()}))) return false;
          rect *= proj[i].size();
        }
        return rect == n.parts.size();
      }
  }
  return false;
}

std::vector<Elem> BPoset::ideals(std::size_t n) const {
  std::vector<Elem> out;
  for (std::size_t i = 0; i < extra_.size() && out.size() < n / 2; ++i) out.push_back(extra_[i]);
  for (auto& a : base_->sample(n - out.size())) out.push_back(ideal::principal(a));
  return out;
}

json BPoset::to_json() const {
  json ex = json::array();
  for (const auto& e : extra_) ex.push_back(show_ideal(*base_, e));
  const char* k = kind_ == Kind::listed ? "listed" : kind_ == Kind::complete ? "complete" : "product";
  return {{"label", label_}, {"kind", k}, {"nonprincipal", ex}};
}

BPoset BPoset::from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("bposet: expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "base" && it.key() != "ideals" && it.key() != "label")
      throw std::invalid_argument("bposet: unknown field '" + it.key() + "'");
  if (!j.contains("base")) throw std::invalid_argument("bposet: missing field 'base'");
  Poset p = Poset::from_json(j.at("base"));
  auto base = std::make_shared<PosetCarrier>(p);
  std::string label = j.value("label", p.describe());
  if (!j.contains("ideals")) return listed(base, {}, label);
  const json& ids = j.at("ideals");
  if (ids == "ID") return complete(base, {}, label);
  if (ids == "PI") return listed(base, {}, label);
  if (!ids.is_array()) throw std::invalid_argument("bposet.ideals: expected \"PI\", \"ID\" or a list");
  std::vector<Elem> extra;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    const json& d = ids[i];
    std::string where = "bposet.ideals[" + std::to_string(i) + "]";
    if (d.is_object() && d.contains("chain")) {
      Elem c = d["chain"].is_string() ? elem_from_string(d["chain"]) : elem_from_json(d["chain"]);
      if (!p.valid_chain(c)) throw std::invalid_argument(where + ": not a catalog chain of " + p.describe());
      extra.push_back(ideal::generated(c));
    } else if (d.is_object() && d.contains("members")) {
      std::vector<Elem> ms;
      for (const auto& m : d["members"]) ms.push_back(p.parse(m.get<std::string>()));
      extra.push_back(ideal::finite_set(ms));
    } else {
      throw std::invalid_argument(where + ": expected {\"chain\": ...} or {\"members\": [...]}");
    }
  }
  return listed(base, extra, label);
}

Report check_bposet(const BPoset& p, std::size_t depth) {
  Report r("b-poset " + p.label());
  r.pass("PI(A) ⊆ I(A)", "principal ideals are members by construction");
  const auto& listed = p.kind() == BPoset::Kind::listed ? p.raw() : p.extra();
  for (std::size_t i = 0; i < listed.size(); ++i) {
    const Elem& d = listed[i];
    std::string tag = "ideal " + show_ideal(p.base(), d);
    r.merge(check_ideal(p.base(), d, depth), tag + ": ");
    if (ideal::is_principal(normalize_ideal(p.base(), d)))
      r.pass(tag + " normalized", "equals a principal ideal; dropped from the list");
  }
  return r;
}

// ---------------------------------------------------------------- b-maps

std::optional<Elem> image_ideal(const BPoset& p, const BPoset& q, const PointMap& f, const Elem& d,
                                std::size_t depth) {
  const Carrier& a = p.base();
  const Carrier& b = q.base();
  switch (ideal::kind_of(d)) {
    case ideal::Kind::principal: {
      Elem v = f(d[0]);
      if (!b.contains(v)) return std::nullopt;
      return ideal::principal(v);
    }
    case ideal::Kind::finite: {
      std::vector<Elem> img;
      for (const auto& m : d.parts) img.push_back(f(m));
      for (const auto& m : img)
        if (std::all_of(img.begin(), img.end(), [&](const Elem& e) { return b.leq(e, m); }))
          return q.has_ideal(ideal::principal(m)) ? std::optional<Elem>(ideal::principal(m)) : std::nullopt;
      std::vector<Elem> low;
      for (auto& y : b.sample(depth))
        if (std::any_of(img.begin(), img.end(), [&](const Elem& e) { return b.leq(y, e); })) low.push_back(y);
      Elem n = normalize_ideal(b, ideal::finite_set(low));
      if (q.has_ideal(n)) return n;
      return std::nullopt;
    }
    case ideal::Kind::generated: {
      std::vector<Elem> img;
      for (std::size_t n = 0; n < kChainProbe; ++n) img.push_back(f(a.chain_member(d[0], n)));
      // An image that stops growing within the probe is read as principal.
      const Elem& last = img.back();
      const Elem& mid = img[kChainProbe / 2];
      bool stable = b.leq(last, mid) && b.leq(mid, last);
      if (stable) return ideal::principal(last);
      auto ys = b.sample(depth);
      for (const auto& j : q.extra()) {
        bool ok = true;
        for (std::size_t n = 0; n < 32 && ok; ++n) ok = ideal_member(b, j, img[n]).value;
        for (std::size_t k = 0; k < ys.size() && ok; ++k) {
          bool in_img = std::any_of(img.begin(), img.end(), [&](const Elem& e) { return b.leq(ys[k], e); });
          ok = ideal_member(b, j, ys[k]).value == in_img;
        }
        if (ok) return j;
      }
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Report check_bmap(const BPoset& p, const BPoset& q, const PointMap& f, std::size_t depth) {
  Report r("b-map " + p.label() + " → " + q.label());
  auto pts = p.base().sample(depth);
  bool exact = p.base().finite() && pts.size() < depth && q.base().finite();
  json cx;
  for (const auto& x : pts) {
    if (!q.base().contains(f(x))) {
      r.fail("well defined", "image outside the codomain", p.base().show(x));
      return r;
    }
  }
  for (const auto& x : pts)
    for (const auto& y : pts)
      if (cx.is_null() && p.base().leq(x, y) && !q.base().leq(f(x), f(y))) cx = {p.base().show(x), p.base().show(y)};
  if (!cx.is_null()) r.fail("monotone", "", cx);
  else if (exact) r.pass("monotone");
  else r.bounded("monotone", depth);
  cx = nullptr;
  for (const auto& d : p.ideals(depth))
    if (cx.is_null() && !image_ideal(p, q, f, d, depth)) cx = show_ideal(p.base(), d);
  if (!cx.is_null()) r.fail("↓f(D) ∈ I(B)", "the image ideal is not a member of the codomain family", cx);
  else if (exact) r.pass("↓f(D) ∈ I(B)");
  else r.bounded("↓f(D) ∈ I(B)", depth);
  return r;
}

// ---------------------------------------------------------------- G and H

CompactCarrier::CompactCarrier(SpacePtr x, Bound b) : x_(std::move(x)), b_(b) {}

bool CompactCarrier::compact(const Elem& e) const {
  auto it = cache_.find(e);
  if (it != cache_.end()) return it->second;
  bool v = way_below(*x_, e, e, b_).verdict;
  cache_.emplace(e, v);
  return v;
}

std::vector<Elem> CompactCarrier::sample(std::size_t n) const {
  std::vector<Elem> out;
  for (auto& e : x_->sample(4 * n)) {
    if (out.size() == n) break;
    if (compact(e)) out.push_back(e);
  }
  return out;
}

std::vector<Elem> CompactCarrier::chains(std::size_t bound) const {
  std::vector<Elem> out;
  for (auto& c : x_->chains(bound)) {
    bool ok = true;
    for (std::size_t n = 0; n < 8 && ok; ++n) ok = compact(x_->chain_member(c, n));
    if (ok) out.push_back(c);
  }
  return out;
}

std::optional<Elem> CompactCarrier::chain_limit(const Elem& c) const {
  auto l = x_->chain_limit(c);
  if (l && compact(*l)) return l;
  return std::nullopt;
}

BPoset functor_G(SpacePtr x, Bound b) {
  Classification cl = classify(*x, b);
  if (cl.kind != SpaceClass::algebraic)
    throw std::invalid_argument("G needs an algebraic space; " + x->name() + " is classified " +
                                space_class_name(cl.kind));
  auto k = std::make_shared<CompactCarrier>(x, b);
  auto ks = k->sample(b.depth);
  auto cs = k->chains(b.depth);
  std::vector<Elem> extra;
  for (const auto& pt : x->sample(b.points())) {
    if (k->compact(pt)) continue;
    bool found = false;
    for (const auto& c : cs) {
      if (!x->chain_below(c, pt).value || !converges(*x, DirectedFamily::of_chain(c), pt, b).value) continue;
      bool match = true;
      for (std::size_t i = 0; i < ks.size() && match; ++i)
        match = x->leq(ks[i], pt) == k->chain_down_contains(c, ks[i]).value;
      if (match) {
        extra.push_back(ideal::generated(c));
        found = true;
        break;
      }
    }
    if (!found)
      throw std::runtime_error("↓" + x->show(pt) + " ∩ K(X) is not generated by a catalog chain of compacts");
  }
  return BPoset::listed(k, extra, "G(" + x->name() + ")");
}

std::optional<Elem> compact_ideal(const BPoset& g, const Space& x, const Elem& pt, Bound b) {
  if (g.base().contains(pt)) return ideal::principal(pt);
  auto ks = g.base().sample(b.depth);
  for (const auto& j : g.extra()) {
    bool match = true;
    for (std::size_t i = 0; i < ks.size() && match; ++i)
      match = ideal_member(g.base(), j, ks[i]).value == x.leq(ks[i], pt);
    if (match) return j;
  }
  return std::nullopt;
}

std::shared_ptr<const IdealFamilySpace> functor_H(const BPoset& p) {
  return std::make_shared<IdealFamilySpace>(
      p.base_ptr(), p.extra(), [p](const Elem& d) { return p.has_ideal(d); }, "H(" + p.label() + ")");
}

PointMap functor_H_map(const BPoset& p, const BPoset& q, const PointMap& f, std::size_t depth) {
  return [p, q, f, depth](const Elem& d) {
    auto v = image_ideal(p, q, f, d, depth);
    if (!v) throw std::domain_error("↓f(D) is not a member of the codomain family");
    return *v;
  };
}

Report roundtrip_bposet(const BPoset& p, Bound b) {
  Report r("G(H(P)) ≅ P for " + p.label());
  auto h = functor_H(p);
  BPoset g = [&] {
    try {
      return functor_G(h, b);
    } catch (const std::exception& e) {
      r.fail("H(P) algebraic", e.what());
      return BPoset();
    }
  }();
  if (!r.ok()) return r;
  auto pts = p.base().sample(b.depth);
  bool exact = p.base().finite() && pts.size() < b.depth;
  auto verdict = [&](const std::string& name, const json& cx) {
    if (!cx.is_null()) r.fail(name, "", cx);
    else if (exact) r.pass(name);
    else r.bounded(name, b.depth);
  };
  json cx;
  for (const auto& a : pts)
    if (cx.is_null() && !g.base().contains(ideal::principal(a))) cx = p.base().show(a);
  verdict("↓a is compact in H(P)", cx);
  cx = nullptr;
  for (const auto& k : g.base().sample(b.depth))
    if (cx.is_null() && !ideal::is_principal(k)) cx = h->show(k);
  verdict("K(H(P)) = PI(A)", cx);
  cx = nullptr;
  for (const auto& a : pts)
    for (const auto& c : pts)
      if (cx.is_null() && p.base().leq(a, c) != h->leq(ideal::principal(a), ideal::principal(c)))
        cx = {p.base().show(a), p.base().show(c)};
  verdict("a ≤ c ⇔ ↓a ⊆ ↓c", cx);
  cx = nullptr;
  for (const auto& d : p.extra()) {
    if (d.tag != 1) continue;
    if (cx.is_null() && !g.has_ideal(ideal::generated(Elem(0, {d[0]})))) cx = p.base().show_chain(d[0]);
  }
  for (const auto& j : g.extra())
    if (cx.is_null() && j.tag == 1 && !p.has_ideal(ideal::generated(j[0][0]))) cx = h->show_chain(j[0]);
  if (cx.is_null() && g.extra().size() != p.extra().size())
    cx = {{"P", p.extra().size()}, {"G(H(P))", g.extra().size()}};
  verdict("ideal families correspond", cx);
  return r;
}

Report roundtrip_space(SpacePtr x, Bound b) {
  Report r("H(G(X)) ≅ X for " + x->name());
  BPoset g;
  try {
    g = functor_G(x, b);
  } catch (const std::exception& e) {
    r.fail("G(X) defined", e.what());
    return r;
  }
  auto h = functor_H(g);
  auto pts = x->sample(b.points());
  bool exact = x->finite() && pts.size() < b.points();
  auto verdict = [&](const std::string& name, const json& cx) {
    if (!cx.is_null()) r.fail(name, "", cx);
    else if (exact) r.pass(name);
    else r.bounded(name, b.points());
  };
  std::map<Elem, Elem> psi;
  json cx;
  for (const auto& p : pts) {
    auto v = compact_ideal(g, *x, p, b);
    if (!v) {
      if (cx.is_null()) cx = x->show(p);
      continue;
    }
    psi.emplace(p, *v);
  }
  verdict("↓x ∩ K(X) ∈ I(K(X))", cx);
  if (!cx.is_null()) return r;
  for (const auto& [p, dp] : psi)
    for (const auto& [q, dq] : psi)
      if (cx.is_null() && x->leq(p, q) != h->leq(dp, dq)) cx = {x->show(p), x->show(q)};
  verdict("x ⊑ y ⇔ ψx ⊆ ψy", cx);
  cx = nullptr;
  auto ks = g.base().sample(b.depth);
  for (const auto& [p, dp] : psi)
    for (const auto& k : ks)
      if (cx.is_null() && x->leq(k, p) != h->in_open(Elem(0, {k}), dp))
        cx = {{"x", x->show(p)}, {"k", x->show(k)}};
  verdict("↑k ↔ B(k)", cx);
  cx = nullptr;
  auto wide = x->sample(b.approximants());
  for (const auto& d : h->sample(b.points())) {
    bool hit = false;
    for (const auto& p : wide) {
      auto v = compact_ideal(g, *x, p, b);
      if (v && ideal_equal(g.base(), *v, d).value) {
        hit = true;
        break;
      }
    }
    if (!hit && cx.is_null()) cx = h->show(d);
  }
  verdict("ψ onto", cx);
  return r;
}

BPoset reflect(const BPoset& p, Bound b) { return BPoset::complete(p.base_ptr(), b, "reflect(" + p.label() + ")"); }

Report check_reflection(const BPoset& p, const BPoset& target, const PointMap& f, Bound b) {
  Report r("reflection of " + p.label() + " into " + target.label());
  BPoset rp = reflect(p, b);
  json cx;
  for (const auto& c : target.base().chains(b.depth))
    if (cx.is_null() && !target.has_ideal(ideal::generated(c))) cx = target.base().show_chain(c);
  if (!cx.is_null()) r.fail("target ideal-complete", "", cx);
  else r.pass("target ideal-complete", "relative to the chain catalog");
  r.merge(check_bmap(p, rp, [](const Elem& e) { return e; }, b.depth), "unit: ");
  r.merge(check_bmap(p, target, f, b.depth), "f: ");
  r.merge(check_bmap(rp, target, f, b.depth), "extension: ");
  r.pass("extension ∘ unit = f", "the unit is the identity on A");
  r.pass("extension unique", "any g with g ∘ unit = f agrees with f on every point of A");
  return r;
}

std::shared_ptr<const IdealFamilySpace> sobrification(const BPoset& p, Bound b) { return functor_H(reflect(p, b)); }

// ---------------------------------------------------------------- examples

Report basis_isomorphic_pair(Bound b) {
  Report r("basis-isomorphic, non-homeomorphic pair");
  Poset px = Poset::adjoin_top(Poset::omega());
  Poset py = Poset::adjoin_top(px);
  auto x = make_poset_space(px, TopologyKind::alexandrov);
  auto y = make_poset_space(py, TopologyKind::scott);
  BPoset gx = functor_G(x, b), gy = functor_G(y, b);
  // φ: n ↦ n, ⊤ ↦ ω₂.
  auto phi = [](const Elem& e) { return e.tag == 1 ? Elem(1) : Elem(0, {e}); };
  auto kx = gx.base().sample(b.depth);
  auto ky = gy.base().sample(b.depth);
  json cx;
  for (const auto& a : kx)
    if (cx.is_null() && !gy.base().contains(phi(a))) cx = x->show(a);
  for (const auto& a : kx)
    for (const auto& c : kx)
      if (cx.is_null() && gx.base().leq(a, c) != gy.base().leq(phi(a), phi(c))) cx = {x->show(a), x->show(c)};
  std::set<Elem> img;
  for (const auto& a : x->sample(4 * b.depth)) img.insert(phi(a));
  for (const auto& k : ky)
    if (cx.is_null() && !img.count(k)) cx = {{"unmatched compact", y->show(k)}};
  if (!cx.is_null()) r.fail("K(X) ≅ K(Y)", "", cx);
  else r.bounded("K(X) ≅ K(Y)", b.depth, "φ(n) = n, φ(⊤) = ω₂ is an order isomorphism on samples");

  Elem w1 = py.parse("⊤");
  auto wy = way_below(*y, w1, w1, b);
  r.expect("Y has a non-compact point", !wy.verdict && wy.exact, "ω₁ ≪ ω₁ fails: " + wy.evidence,
           {{"point", "ω₁"}, {"refuting_family", wy.refuting_family}});
  bool all_compact = true;
  for (const auto& e : x->sample(b.depth)) {
    auto w = way_below(*x, e, e, b);
    all_compact = all_compact && w.verdict && w.exact;
  }
  r.expect("every point of X is compact", all_compact, "Alexandrov: ↑x is open for every x");
  r.expect("not homeomorphic", !wy.verdict && all_compact, "compactness is a topological invariant");
  r.expect("ideal families differ", gx.extra().empty() && gy.extra().size() == 1,
           "G(X) = (K, PI) while G(Y) adds ↓ω₁ ∩ K = ℕ");
  return r;
}

namespace {

// Monotone maps ℕ → {⊥ < ⊤} for the chain order: t_k is ⊤ from k on; Elem(-1) is constant ⊥.
class ThresholdCarrier : public Carrier {
 public:
  bool finite() const override { return false; }
  std::vector<Elem> sample(std::size_t n) const override {
    std::vector<Elem> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(Elem(static_cast<std::int64_t>(i) - 1));
    return out;
  }
  bool contains(const Elem& e) const override { return e.tag >= -1 && e.parts.empty(); }
  bool leq(const Elem& a, const Elem& b) const override {
    if (a.tag == -1) return true;
    if (b.tag == -1) return false;
    return a.tag >= b.tag;
  }
  std::string show(const Elem& e) const override { return e.tag == -1 ? "⊥" : "t" + std::to_string(e.tag); }
};

// All maps ℕ → {⊥ < ⊤} for the discrete order, restricted to finite supports
// plus the constant ⊤ (Elem(1)); finite supports are Elem(0, sorted indices).
class IndicatorCarrier : public Carrier {
 public:
  bool finite() const override { return false; }
  std::vector<Elem> sample(std::size_t n) const override {
    std::vector<Elem> out{Elem(1)};
    for (std::uint64_t m = 0; out.size() < n; ++m) {
      std::vector<Elem> s;
      for (int i = 0; i < 63; ++i)
        if (m >> i & 1) s.push_back(Elem(i));
      out.push_back(Elem(0, s));
    }
    return out;
  }
  bool contains(const Elem& e) const override { return e.tag == 1 || (e.tag == 0 && std::is_sorted(e.parts.begin(), e.parts.end())); }
  bool leq(const Elem& a, const Elem& b) const override {
    if (b.tag == 1) return true;
    if (a.tag == 1) return false;
    return std::includes(b.parts.begin(), b.parts.end(), a.parts.begin(), a.parts.end());
  }
  std::string show(const Elem& e) const override {
    if (e.tag == 1) return "⊤";
    std::string s = "χ{";
    for (std::size_t i = 0; i < e.parts.size(); ++i) s += (i ? "," : "") + std::to_string(e.parts[i].tag);
    return s + "}";
  }
  std::vector<Elem> chains(std::size_t) const override { return {Elem(0)}; }
  Elem chain_member(const Elem&, std::size_t n) const override {
    std::vector<Elem> s;
    for (std::size_t i = 0; i <= n; ++i) s.push_back(Elem(static_cast<std::int64_t>(i)));
    return Elem(0, s);
  }
  Judgement chain_down_contains(const Elem&, const Elem& a) const override { return Judgement::sure(a.tag == 0); }
  Judgement chain_below(const Elem&, const Elem& b) const override { return Judgement::sure(b.tag == 1); }
};

}  // namespace

Report nat_to_two_exponential(Bound b) {
  Report r("exponential of ℕ and the two-chain");
  FinitePoset two = FinitePoset::from_pairs({"⊥", "⊤"}, {{0, 1}});

  // Chain reading.
  bool thresholds = true;
  for (std::size_t m = 1; m <= 8; ++m) thresholds = thresholds && monotone_maps(FinitePoset::from_pairs([&] {
                                                                   std::vector<std::string> ns;
                                                                   for (std::size_t i = 0; i < m; ++i) ns.push_back(std::to_string(i));
                                                                   return ns;
                                                                 }(), [&] {
                                                                   std::vector<std::pair<std::size_t, std::size_t>> ps;
                                                                   for (std::size_t i = 0; i + 1 < m; ++i) ps.push_back({i, i + 1});
                                                                   return ps;
                                                                 }()), two).size() == m + 1;
  r.expect("chain reading: monotone maps are thresholds", thresholds, "m + 1 monotone maps on every initial segment of size m ≤ 8");
  ThresholdCarrier tc;
  auto win = tc.sample(12);
  bool all_max = true;
  json cx;
  for (std::uint32_t s = 1; s < (1u << win.size()); ++s) {
    std::vector<Elem> d;
    for (std::size_t i = 0; i < win.size(); ++i)
      if (s >> i & 1) d.push_back(win[i]);
    bool has_max = std::any_of(d.begin(), d.end(), [&](const Elem& m) {
      return std::all_of(d.begin(), d.end(), [&](const Elem& e) { return tc.leq(e, m); });
    });
    if (!has_max) {
      all_max = false;
      cx = json::array();
      for (auto& e : d) cx.push_back(tc.show(e));
      break;
    }
  }
  r.expect("chain reading: every nonempty subset of a window has a maximum", all_max,
           "ascending sequences of thresholds have decreasing indices, so every directed set has a maximum", cx);
  r.expect("chain reading: ID(ℕ^B) = PI(ℕ^B)", all_max && tc.chains(b.depth).empty(),
           "no strictly ascending ω-chain exists in the map poset");

  // Discrete reading.
  bool all_maps = true;
  for (std::size_t m = 1; m <= 8; ++m)
    all_maps = all_maps && monotone_maps(FinitePoset::from_pairs([&] {
                                           std::vector<std::string> ns;
                                           for (std::size_t i = 0; i < m; ++i) ns.push_back(std::to_string(i));
                                           return ns;
                                         }(), {}), two).size() == (std::size_t{1} << m);
  r.expect("discrete reading: every map is monotone", all_maps, "2^m monotone maps on every discrete segment of size m ≤ 8");
  IndicatorCarrier ic;
  Elem d = ideal::generated(Elem(0));
  Report di = check_ideal(ic, d, b.depth);
  r.merge(di, "discrete reading: ");
  bool no_max = true;
  for (std::size_t n = 0; n < kChainProbe; ++n)
    no_max = no_max && !ic.leq(ic.chain_member(Elem(0), n + 1), ic.chain_member(Elem(0), n));
  no_max = no_max && !ideal_member(ic, d, Elem(1)).value;
  r.expect("discrete reading: ↓⟨χ{0..n}⟩ is not principal", no_max,
           "the chain is strictly increasing and its only upper bound ⊤ lies outside the ideal",
           show_ideal(ic, d));
  // ev(D × {n}) ∋ ⊤ for every n, so ↓ev(D × E) = ↓⊤ is principal in B.
  bool ev_ok = true;
  for (std::int64_t n = 0; n < 16; ++n) {
    bool top = false;
    for (std::size_t k = 0; k < 32 && !top; ++k) {
      Elem chi = ic.chain_member(Elem(0), k);
      top = std::binary_search(chi.parts.begin(), chi.parts.end(), Elem(n));
    }
    ev_ok = ev_ok && top;
  }
  r.expect("discrete reading: ev(D × E) is principal for E = ↓n", ev_ok,
           "so D belongs to the largest family making ev a b-map");
  r.expect("discrete reading: ID(ℕ^B) ≠ PI(ℕ^B)", no_max && ev_ok && di.ok(),
           "the exponential in ALG carries a non-principal ideal; the one in Poset* does not");
  return r;
}

// ---------------------------------------------------------------- finite b-posets

namespace {

Mask down_of(const FinitePoset& p, const Mask& s) {
  Mask out;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (s.test(j) && p.leq(i, j)) {
        out.set(i);
        break;
      }
  return out;
}

bool directed(const FinitePoset& p, const Mask& s) {
  if (s.empty()) return false;
  for (std::size_t a = 0; a < p.size(); ++a)
    for (std::size_t b = 0; b < p.size(); ++b) {
      if (!s.test(a) || !s.test(b)) continue;
      bool ub = false;
      for (std::size_t c = 0; c < p.size() && !ub; ++c) ub = s.test(c) && p.leq(a, c) && p.leq(b, c);
      if (!ub) return false;
    }
  return true;
}

Mask image(const std::vector<std::size_t>& f, const Mask& s) {
  Mask out;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (s.test(i)) out.set(f[i]);
  return out;
}

bool is_bmap(const FiniteBPoset& p, const FiniteBPoset& q, const std::vector<std::size_t>& f) {
  for (std::size_t i = 0; i < p.base.size(); ++i)
    for (std::size_t j = 0; j < p.base.size(); ++j)
      if (p.base.leq(i, j) && !q.base.leq(f[i], f[j])) return false;
  for (const auto& d : p.ideals)
    if (!q.has(down_of(q.base, image(f, d)))) return false;
  return true;
}

json table_json(const FinitePoset& a, const FinitePoset& b, const std::vector<std::size_t>& f) {
  json j = json::object();
  for (std::size_t i = 0; i < f.size(); ++i) j[a.name(i)] = b.name(f[i]);
  return j;
}

}  // namespace

bool FiniteBPoset::has(const Mask& m) const { return std::binary_search(ideals.begin(), ideals.end(), m); }

std::vector<Mask> finite_ideals(const FinitePoset& p) {
  std::size_t n = p.size();
  if (n > Mask::kBits)
    throw std::invalid_argument("finite b-posets hold at most " + std::to_string(Mask::kBits) + " elements");
  std::set<Mask> out;
  if (n <= 16) {
    for (std::uint32_t bits = 1; bits < (1u << n); ++bits) {
      Mask s;
      s.w[0] = bits;
      if (down_of(p, s) == s && directed(p, s)) out.insert(s);
    }
  } else {
    // A lower set is ↓M for its maximal elements M; it is directed iff |M| = 1,
    // and any lower set with two or more maxima already fails on ↓{m1, m2}.
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a; b < n; ++b) {
        Mask ab = Mask::bit(a);
        ab.set(b);
        Mask s = down_of(p, ab);
        if (directed(p, s)) out.insert(s);
      }
  }
  return {out.begin(), out.end()};
}

FiniteBPoset finite_pi(const FinitePoset& p) {
  FiniteBPoset b{p, {}};
  for (std::size_t i = 0; i < p.size(); ++i) b.ideals.push_back(down_of(p, Mask::bit(i)));
  std::sort(b.ideals.begin(), b.ideals.end());
  return b;
}

std::vector<std::vector<std::size_t>> finite_bmaps(const FiniteBPoset& p, const FiniteBPoset& q) {
  std::vector<std::vector<std::size_t>> out;
  for (auto& f : monotone_maps(p.base, q.base))
    if (is_bmap(p, q, f)) out.push_back(f);
  return out;
}

FiniteBPoset finite_bproduct(const FiniteBPoset& p, const FiniteBPoset& q) {
  FiniteBPoset r{finite_product(p.base, q.base), {}};
  std::size_t nb = q.base.size();
  for (const auto& d : finite_ideals(r.base)) {
    Mask pa, pb;
    for (std::size_t k = 0; k < r.base.size(); ++k)
      if (d.test(k)) pa.set(k / nb), pb.set(k % nb);
    Mask rect;
    for (std::size_t k = 0; k < r.base.size(); ++k)
      if (pa.test(k / nb) && pb.test(k % nb)) rect.set(k);
    if (p.has(pa) && q.has(pb) && rect == d) r.ideals.push_back(d);
  }
  return r;
}

FiniteExponential finite_exponential(const FiniteBPoset& p, const FiniteBPoset& q) {
  FiniteExponential e;
  e.maps = finite_bmaps(p, q);
  std::size_t n = e.maps.size();
  std::vector<std::string> names;
  std::vector<std::uint8_t> leq(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    std::string s = "⟨";
    for (std::size_t a = 0; a < e.maps[i].size(); ++a) s += (a ? "," : "") + q.base.name(e.maps[i][a]);
    names.push_back(s + "⟩");
    for (std::size_t j = 0; j < n; ++j) {
      bool le = true;
      for (std::size_t a = 0; a < e.maps[i].size() && le; ++a) le = q.base.leq(e.maps[i][a], e.maps[j][a]);
      leq[i * n + j] = le;
    }
  }
  e.exp.base = FinitePoset(names, leq);
  for (const auto& d : finite_ideals(e.exp.base)) {
    bool ok = true;
    for (const auto& ea : p.ideals) {
      Mask img;
      for (std::size_t f = 0; f < n; ++f)
        if (d.test(f))
          for (std::size_t a = 0; a < p.base.size(); ++a)
            if (ea.test(a)) img.set(e.maps[f][a]);
      if (!q.has(down_of(q.base, img))) {
        ok = false;
        break;
      }
    }
    if (ok) e.exp.ideals.push_back(d);
  }
  return e;
}

Report check_finite_product_laws(const FiniteBPoset& p, const FiniteBPoset& q, const std::vector<FiniteBPoset>& tests) {
  Report r("product laws");
  FiniteBPoset pr = finite_bproduct(p, q);
  std::size_t na = p.base.size(), nb = q.base.size();
  std::vector<std::size_t> pa(na * nb), pb(na * nb);
  for (std::size_t k = 0; k < na * nb; ++k) pa[k] = k / nb, pb[k] = k % nb;
  r.expect("π_A is a b-map", is_bmap(pr, p, pa));
  r.expect("π_B is a b-map", is_bmap(pr, q, pb));
  bool principal = true;
  for (std::size_t k = 0; k < na * nb; ++k) principal = principal && pr.has(down_of(pr.base, Mask::bit(k)));
  r.expect("PI(A × B) ⊆ I(A × B)", principal);
  json cx;
  for (const auto& c : tests) {
    std::map<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>, std::size_t> count;
    for (auto& h : finite_bmaps(c, pr)) {
      std::vector<std::size_t> f1, f2;
      for (auto v : h) f1.push_back(v / nb), f2.push_back(v % nb);
      ++count[{f1, f2}];
    }
    auto m1 = finite_bmaps(c, p), m2 = finite_bmaps(c, q);
    for (const auto& f1 : m1) {
      for (const auto& f2 : m2) {
        std::vector<std::size_t> pair;
        for (std::size_t i = 0; i < f1.size(); ++i) pair.push_back(f1[i] * nb + f2[i]);
        std::size_t k = count.count({f1, f2}) ? count[{f1, f2}] : 0;
        if (!is_bmap(c, pr, pair) || k != 1) {
          cx = {{"C", c.base.names()}, {"f1", table_json(c.base, p.base, f1)}, {"f2", table_json(c.base, q.base, f2)},
                {"mediating", k}};
          break;
        }
      }
      if (!cx.is_null()) break;
    }
    if (!cx.is_null()) break;
  }
  r.expect("⟨f1, f2⟩ is the unique mediating b-map", cx.is_null(), "", cx);
  return r;
}

Report check_finite_exponential_laws(const FiniteBPoset& p, const FiniteBPoset& q,
                                     const std::vector<FiniteBPoset>& tests) {
  Report r("exponential laws");
  FiniteExponential e = finite_exponential(p, q);
  std::size_t na = p.base.size(), ne = e.maps.size();
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < ne; ++i) index[e.maps[i]] = i;

  bool principal = true;
  for (std::size_t i = 0; i < ne; ++i) principal = principal && e.exp.has(down_of(e.exp.base, Mask::bit(i)));
  r.expect("PI(B^A) ⊆ I(B^A)", principal);
  FiniteBPoset ea = finite_bproduct(e.exp, p);
  std::vector<std::size_t> ev(ne * na);
  for (std::size_t k = 0; k < ne * na; ++k) ev[k] = e.maps[k / na][k % na];
  r.expect("ev is a b-map", is_bmap(ea, q, ev));

  json cx;
  for (const auto& c : tests) {
    FiniteBPoset ca = finite_bproduct(c, p);
    std::map<std::vector<std::size_t>, std::size_t> count;
    for (auto& g : finite_bmaps(c, e.exp)) {
      std::vector<std::size_t> comp(c.base.size() * na);
      for (std::size_t k = 0; k < comp.size(); ++k) comp[k] = e.maps[g[k / na]][k % na];
      ++count[comp];
    }
    for (auto& f : finite_bmaps(ca, q)) {
      std::vector<std::size_t> curry;
      bool defined = true;
      for (std::size_t ci = 0; ci < c.base.size() && defined; ++ci) {
        std::vector<std::size_t> fc(f.begin() + ci * na, f.begin() + (ci + 1) * na);
        auto it = index.find(fc);
        if (it == index.end()) defined = false;
        else curry.push_back(it->second);
      }
      std::size_t k = count.count(f) ? count[f] : 0;
      if (!defined || !is_bmap(c, e.exp, curry) || k != 1) {
        cx = {{"C", c.base.names()}, {"f", table_json(ca.base, q.base, f)}, {"curried_defined", defined}, {"solutions", k}};
        break;
      }
    }
    if (!cx.is_null()) break;
  }
  r.expect("curry(f) is the unique b-map with ev ∘ (curry(f) × id) = f", cx.is_null(), "", cx);
  return r;
}

}  // namespace dspace
