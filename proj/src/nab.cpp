#include "dspace/nab.hpp"

#include <algorithm>
#include <stdexcept>

#include "dspace/corpus.hpp"

namespace dspace {

std::optional<std::vector<Elem>> finite_down(const Poset& p, const Elem& z) {
  if (p.finite()) {
    std::vector<Elem> out;
    for (auto& e : p.elements())
      if (p.leq(e, z)) out.push_back(e);
    return out;
  }
  switch (p.kind()) {
    case PosetKind::omega: {
      std::vector<Elem> out;
      for (std::int64_t i = 0; i <= z.tag; ++i) out.push_back(Elem(i));
      return out;
    }
    case PosetKind::flat_nat:
      return std::vector<Elem>{z};
    case PosetKind::dyadic:
      if (p.leq(z, p.prefix(1)[0])) return std::vector<Elem>{z};
      return std::nullopt;
    case PosetKind::lift: {
      if (z.tag == 0) return std::vector<Elem>{z};
      auto in = finite_down(p.children()[0], z[0]);
      if (!in) return std::nullopt;
      std::vector<Elem> out{Elem(0)};
      for (auto& e : *in) out.push_back(Elem(1, {e}));
      return out;
    }
    case PosetKind::adjoin_top: {
      if (z.tag == 1) return std::nullopt;
      auto in = finite_down(p.children()[0], z[0]);
      if (!in) return std::nullopt;
      std::vector<Elem> out;
      for (auto& e : *in) out.push_back(Elem(0, {e}));
      return out;
    }
    case PosetKind::sum: {
      auto in = finite_down(p.children()[z.tag], z[0]);
      if (!in) return std::nullopt;
      std::vector<Elem> out;
      for (auto& e : *in) out.push_back(Elem(z.tag, {e}));
      return out;
    }
    case PosetKind::product: {
      std::vector<std::vector<Elem>> out{{}};
      for (std::size_t i = 0; i < p.children().size(); ++i) {
        auto in = finite_down(p.children()[i], z[i]);
        if (!in) return std::nullopt;
        std::vector<std::vector<Elem>> next;
        for (const auto& t : out)
          for (const auto& e : *in) {
            next.push_back(t);
            next.back().push_back(e);
          }
        out = std::move(next);
      }
      std::vector<Elem> flat;
      for (auto& t : out) flat.push_back(Elem(0, std::move(t)));
      return flat;
    }
    default:
      return std::nullopt;
  }
}

const char* prec_rule_name(PrecRule r) {
  switch (r) {
    case PrecRule::order: return "order";
    case PrecRule::strict: return "strict";
    case PrecRule::interval: return "interval";
    case PrecRule::table: return "table";
    case PrecRule::space: return "space";
  }
  return "?";
}

// ---------------------------------------------------------------- bases

Nab Nab::of_rule(Poset p, PrecRule r) {
  Nab a;
  a.c_ = std::make_shared<PosetCarrier>(p);
  a.p_ = p;
  a.rule_ = r;
  a.label_ = p.describe() + ", " + prec_rule_name(r);
  switch (r) {
    case PrecRule::order:
      a.rel_ = [p](const Elem& x, const Elem& y) { return p.leq(x, y); };
      break;
    case PrecRule::strict:
      a.rel_ = [p](const Elem& x, const Elem& y) { return p.leq(x, y) && !(x == y); };
      break;
    case PrecRule::interval: {
      if (p.kind() != PosetKind::dyadic) throw std::invalid_argument("interval rule needs the dyadic rationals");
      Elem zero = p.prefix(1)[0];
      a.rel_ = [p, zero](const Elem& x, const Elem& y) { return x == zero || (p.leq(x, y) && !(x == y)); };
      break;
    }
    default:
      throw std::invalid_argument("of_rule: use of_table or of_space for this rule");
  }
  return a;
}

Nab Nab::of_table(FinitePoset fp, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  Nab a;
  std::size_t n = fp.size();
  auto rel = std::make_shared<std::vector<std::uint8_t>>(n * n, 0);
  a.table_ = json::array();
  for (auto [i, j] : pairs) {
    if (i >= n || j >= n) throw std::invalid_argument("prec table: index out of range");
    (*rel)[i * n + j] = 1;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((*rel)[i * n + j]) a.table_.push_back({fp.name(i), fp.name(j)});
  Poset p = Poset::explicit_finite(fp);
  a.c_ = std::make_shared<PosetCarrier>(p);
  a.p_ = p;
  a.rule_ = PrecRule::table;
  a.label_ = p.describe() + ", table";
  a.rel_ = [rel, n](const Elem& x, const Elem& y) {
    return (*rel)[static_cast<std::size_t>(x.tag) * n + static_cast<std::size_t>(y.tag)] != 0;
  };
  return a;
}

Nab Nab::of_space(SpacePtr x, Bound b) {
  Classification cl = classify(*x, b);
  if (cl.kind != SpaceClass::continuous && cl.kind != SpaceClass::algebraic)
    throw std::invalid_argument(x->name() + " is classified " + space_class_name(cl.kind) +
                                ", not a continuous space");
  Nab a;
  a.c_ = x;
  a.x_ = x;
  if (auto ps = std::dynamic_pointer_cast<const PosetSpace>(x)) a.p_ = ps->poset();
  a.rule_ = PrecRule::space;
  a.cache_ = std::make_shared<std::map<std::pair<Elem, Elem>, bool>>();
  a.label_ = x->name() + ", ≪";
  a.rel_ = [x, b](const Elem& p, const Elem& q) { return way_below(*x, p, q, b).verdict; };
  return a;
}

Nab Nab::from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("nab: expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "base" && it.key() != "prec") throw std::invalid_argument("nab: unknown field '" + it.key() + "'");
  if (!j.contains("base") || !j.contains("prec")) throw std::invalid_argument("nab: needs 'base' and 'prec'");
  Poset p = Poset::from_json(j.at("base"));
  const json& r = j.at("prec");
  if (r.is_string()) {
    std::string s = r;
    if (s == "order") return of_rule(p, PrecRule::order);
    if (s == "strict") return of_rule(p, PrecRule::strict);
    if (s == "interval") return of_rule(p, PrecRule::interval);
    throw std::invalid_argument("nab.prec: unknown rule '" + s + "'");
  }
  if (!r.is_object() || !r.contains("pairs")) throw std::invalid_argument("nab.prec: expected a rule name or {\"pairs\": ...}");
  if (!p.finite()) throw std::invalid_argument("nab.prec.pairs: needs a finite base");
  auto els = p.elements();
  std::vector<std::string> names;
  std::vector<std::uint8_t> leq;
  for (auto& e : els) names.push_back(p.show(e));
  for (auto& a : els)
    for (auto& c : els) leq.push_back(p.leq(a, c));
  FinitePoset fp(names, leq);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < r["pairs"].size(); ++i) {
    const json& pr = r["pairs"][i];
    std::string where = "nab.prec.pairs[" + std::to_string(i) + "]";
    if (!pr.is_array() || pr.size() != 2) throw std::invalid_argument(where + ": expected [a, b]");
    auto a = fp.index_of(pr[0].get<std::string>()), c = fp.index_of(pr[1].get<std::string>());
    if (!a || !c) throw std::invalid_argument(where + ": unknown element");
    pairs.push_back({*a, *c});
  }
  return of_table(fp, pairs);
}

bool Nab::prec(const Elem& a, const Elem& b) const {
  if (!cache_) return rel_(a, b);
  auto key = std::make_pair(a, b);
  auto it = cache_->find(key);
  if (it != cache_->end()) return it->second;
  bool v = rel_(a, b);
  cache_->emplace(key, v);
  return v;
}

std::optional<std::vector<Elem>> Nab::below(const Elem& z) const {
  if (p_) return finite_down(*p_, z);
  if (c_->finite()) {
    std::vector<Elem> out;
    for (auto& e : c_->sample(1u << 16))
      if (c_->leq(e, z)) out.push_back(e);
    return out;
  }
  return std::nullopt;
}

json Nab::to_json() const {
  json j = {{"label", label_}, {"prec", prec_rule_name(rule_)}};
  if (p_) j["base"] = p_->to_json();
  if (rule_ == PrecRule::table) j["pairs"] = table_;
  return j;
}

// ---------------------------------------------------------------- axioms

namespace {

json shown(const Carrier& c, const std::vector<Elem>& xs) {
  json j = json::array();
  for (auto& x : xs) j.push_back(c.show(x));
  return j;
}

// Outcome of an existential search: found, refuted (all candidates tried) or
// unverified (the candidate window was only a prefix).
struct Search {
  std::size_t cases = 0;
  json refuted, unverified, example;
};

void verdict(Report& r, const std::string& name, const Search& s, bool exact, std::size_t bound) {
  if (!s.refuted.is_null()) {
    r.fail(name, "no witness exists", s.refuted);
    return;
  }
  std::string ex = s.example.is_null() ? "" : "; e.g. " + s.example.dump();
  if (!s.unverified.is_null()) {
    r.add(name, Verdict::bounded, "unverified at bound " + std::to_string(bound) + ": no witness in the prefix",
          s.unverified, bound);
    return;
  }
  std::string detail = std::to_string(s.cases) + " instances, witness found for each" + ex;
  if (exact) r.pass(name, detail);
  else r.add(name, Verdict::bounded, detail, nullptr, bound);
}

}  // namespace

Report check_nab(const Nab& a, std::size_t depth) {
  Report r("normal abstract basis " + a.label());
  const Carrier& c = a.carrier();
  auto pts = c.sample(depth);
  bool exact = c.finite() && pts.size() < depth;
  auto wide = exact ? pts : c.sample(4 * depth);
  auto candidates = [&](const Elem& z) {
    auto d = a.below(z);
    return d ? std::make_pair(*d, true) : std::make_pair(wide, false);
  };
  auto pairwise = [&](const std::string& name, const json& cx, const std::string& detail = {}) {
    if (!cx.is_null()) r.fail(name, detail, cx);
    else if (exact) r.pass(name);
    else r.bounded(name, depth);
  };

  json cx;
  for (const auto& x : pts)
    for (const auto& y : pts)
      if (cx.is_null() && a.prec(x, y) && !a.leq(x, y)) cx = {c.show(x), c.show(y)};
  pairwise("a ≺ b ⇒ a ≤ b", cx);

  cx = nullptr;
  for (const auto& x : pts)
    for (const auto& y : pts) {
      if (!cx.is_null()) break;
      if (!a.prec(x, y)) continue;
      for (const auto& z : pts)
        if (a.prec(y, z) && !a.prec(x, z)) {
          cx = {c.show(x), c.show(y), c.show(z)};
          break;
        }
    }
  pairwise("transitive", cx);

  // a ≤ b ≺ c ≤ d ⇒ a ≺ d splits into the two one-sided laws.
  cx = nullptr;
  for (const auto& x : pts)
    for (const auto& y : pts) {
      if (!cx.is_null()) break;
      if (!a.prec(x, y)) continue;
      for (const auto& w : pts) {
        if (a.leq(w, x) && !a.prec(w, y)) {
          cx = {{"a", c.show(w)}, {"b", c.show(x)}, {"c", c.show(y)}, {"d", c.show(y)}};
          break;
        }
        if (a.leq(y, w) && !a.prec(x, w)) {
          cx = {{"a", c.show(x)}, {"b", c.show(x)}, {"c", c.show(y)}, {"d", c.show(w)}};
          break;
        }
      }
    }
  pairwise("a ≤ b ≺ c ≤ d ⇒ a ≺ d", cx);

  // Interpolation for |M| ≤ 2 gives every finite M by induction, using transitivity.
  {
    std::vector<std::vector<Elem>> ms{{}};
    auto mp = exact ? pts : c.sample(std::max<std::size_t>(4, depth / 2));
    if (exact && pts.size() <= 10) {
      ms.clear();
      for (std::uint32_t s = 0; s < (1u << pts.size()); ++s) {
        std::vector<Elem> m;
        for (std::size_t i = 0; i < pts.size(); ++i)
          if (s >> i & 1) m.push_back(pts[i]);
        ms.push_back(m);
      }
    } else {
      for (std::size_t i = 0; i < mp.size(); ++i) {
        ms.push_back({mp[i]});
        for (std::size_t j = i + 1; j < mp.size(); ++j) ms.push_back({mp[i], mp[j]});
      }
    }
    Search s;
    for (const auto& m : ms) {
      if (!s.refuted.is_null()) break;
      for (const auto& z : pts) {
        if (!std::all_of(m.begin(), m.end(), [&](const Elem& e) { return a.prec(e, z); })) continue;
        ++s.cases;
        auto [cands, full] = candidates(z);
        std::optional<Elem> wit;
        for (const auto& y : cands)
          if (a.prec(y, z) && std::all_of(m.begin(), m.end(), [&](const Elem& e) { return a.prec(e, y); })) {
            wit = y;
            break;
          }
        json inst = {{"M", shown(c, m)}, {"z", c.show(z)}};
        if (wit) {
          if (s.example.is_null() && m.size() == 2) s.example = {{"M", shown(c, m)}, {"z", c.show(z)}, {"y", c.show(*wit)}};
        } else if (full || exact) {
          s.refuted = inst;
          break;
        } else if (s.unverified.is_null()) {
          s.unverified = inst;
        }
      }
    }
    verdict(r, "interpolation", s, exact, depth);
  }

  {
    Search s;
    for (const auto& x : pts) {
      if (!s.refuted.is_null()) break;
      for (const auto& y : pts) {
        if (a.leq(x, y)) continue;
        ++s.cases;
        auto [cands, full] = candidates(x);
        std::optional<Elem> wit;
        for (const auto& w : cands)
          if (a.prec(w, x) && !a.prec(w, y)) {
            wit = w;
            break;
          }
        json inst = {{"a", c.show(x)}, {"b", c.show(y)}};
        if (wit) {
          if (s.example.is_null()) s.example = {{"a", c.show(x)}, {"b", c.show(y)}, {"c", c.show(*wit)}};
        } else if (full || exact) {
          s.refuted = inst;
          break;
        } else if (s.unverified.is_null()) {
          s.unverified = inst;
        }
      }
    }
    verdict(r, "separation", s, exact, depth);
  }
  return r;
}

// ---------------------------------------------------------------- induced space

std::vector<Elem> NabSpace::local_base(const Elem& x, std::size_t bound) const {
  std::vector<Elem> out;
  auto d = a_.below(x);
  for (const auto& c : d ? *d : a_.carrier().sample(bound))
    if (a_.prec(c, x)) out.push_back(Elem(0, {c}));
  out.push_back(Elem(1));
  return out;
}

bool NabSpace::in_open(const Elem& open, const Elem& y) const { return open.tag == 1 || a_.prec(open[0], y); }

std::string NabSpace::show_open(const Elem& open) const {
  return open.tag == 1 ? "X" : "↟" + a_.carrier().show(open[0]);
}

bool NabSpace::local_base_complete(const Elem& x) const { return a_.below(x).has_value(); }

bool NabSpace::open_within_up(const Elem& open, const Elem& x) const {
  // b ∈ ↟a gives a ≤ b, so x ≤ a suffices.
  return open.tag == 0 && a_.leq(x, open[0]);
}

SpacePtr nab_space(const Nab& a, std::size_t depth) {
  Report r = check_nab(a, depth);
  if (const Check* f = r.first_failure()) {
    std::string cx = f->counterexample.is_null() ? "" : " at " + f->counterexample.dump();
    throw std::invalid_argument("not a normal abstract basis: " + f->name + " fails" + cx);
  }
  return std::make_shared<NabSpace>(a);
}

Report roundtrip_space_nab(SpacePtr x, Bound b) {
  Report r("space → basis → space for " + x->name());
  std::optional<Nab> n;
  try {
    n = Nab::of_space(x, b);
  } catch (const std::exception& e) {
    r.fail("continuous", e.what());
    return r;
  }
  r.merge(check_nab(*n, b.points()), "(X, ⊑, ≪): ");
  NabSpace s(*n);
  r.merge(check_specialization(s, b), "induced: ");
  auto pts = x->sample(b.points());
  bool exact = x->finite() && pts.size() < b.points();
  json cx;
  for (const auto& p : pts)
    for (const auto& q : pts) {
      if (!cx.is_null()) break;
      auto w1 = way_below(*x, p, q, b), w2 = way_below(s, p, q, b);
      if (w1.verdict != w2.verdict) cx = {{"x", x->show(p)}, {"y", x->show(q)}, {"in X", w1.verdict}, {"induced", w2.verdict}};
    }
  if (!cx.is_null()) r.fail("≪ agrees", "", cx);
  else if (exact) r.pass("≪ agrees");
  else r.bounded("≪ agrees", b.points());
  cx = nullptr;
  auto fams = catalog(*x, b);
  if (fams.size() > 8) fams.resize(8);
  bool conv_exact = exact;
  for (const auto& d : fams)
    for (const auto& p : pts) {
      if (!cx.is_null()) break;
      auto j1 = converges(*x, d, p, b), j2 = converges(s, d, p, b);
      conv_exact = conv_exact && j1.exact && j2.exact;
      if (j1.value != j2.value) cx = {{"family", d.to_json(*x)}, {"point", x->show(p)}, {"in X", j1.value}};
    }
  if (!cx.is_null()) r.fail("catalog convergence agrees", "", cx);
  else if (conv_exact) r.pass("catalog convergence agrees");
  else r.bounded("catalog convergence agrees", b.points());
  return r;
}

Report roundtrip_nab_space(const Nab& a, Bound b) {
  Report r("basis → space → basis for " + a.label());
  SpacePtr s;
  try {
    s = nab_space(a, b.depth);
  } catch (const std::exception& e) {
    r.fail("normal abstract basis", e.what());
    return r;
  }
  std::optional<Nab> back;
  try {
    back = Nab::of_space(s, b);
  } catch (const std::exception& e) {
    r.fail("induced space continuous", e.what());
    return r;
  }
  r.merge(check_specialization(*s, b), "induced: ");
  auto pts = a.carrier().sample(b.points());
  bool exact = a.carrier().finite() && pts.size() < b.points();
  json cx;
  for (const auto& p : pts)
    for (const auto& q : pts)
      if (cx.is_null() && a.prec(p, q) != back->prec(p, q))
        cx = {{"a", a.carrier().show(p)}, {"b", a.carrier().show(q)}, {"≺", a.prec(p, q)}};
  if (!cx.is_null()) r.fail("≪ = ≺", "", cx);
  else if (exact) r.pass("≪ = ≺");
  else r.bounded("≪ = ≺", b.points());
  return r;
}

// ---------------------------------------------------------------- maps

Report check_normal_map(const PointMap& f, const Nab& a, const Nab& b, std::size_t depth) {
  Report r("normal map " + a.label() + " → " + b.label());
  const Carrier& ca = a.carrier();
  const Carrier& cb = b.carrier();
  auto pa = ca.sample(depth), pb = cb.sample(depth);
  bool exact = ca.finite() && pa.size() < depth && cb.finite() && pb.size() < depth;
  for (const auto& x : pa)
    if (!cb.contains(f(x))) {
      r.fail("well defined", "image outside the codomain", ca.show(x));
      return r;
    }
  auto pairwise = [&](const std::string& name, const json& cx) {
    if (!cx.is_null()) r.fail(name, "", cx);
    else if (exact) r.pass(name);
    else r.bounded(name, depth);
  };
  json cx;
  for (const auto& x : pa)
    for (const auto& y : pa)
      if (cx.is_null() && a.leq(x, y) && !b.leq(f(x), f(y))) cx = {ca.show(x), ca.show(y)};
  pairwise("preserves ≤", cx);
  cx = nullptr;
  for (const auto& x : pa)
    for (const auto& y : pa)
      if (cx.is_null() && a.prec(x, y) && !b.prec(f(x), f(y))) cx = {ca.show(x), ca.show(y)};
  pairwise("preserves ≺", cx);

  Search s;
  auto wide = exact ? pa : ca.sample(4 * depth);
  for (const auto& x : pa) {
    if (!s.refuted.is_null()) break;
    Elem fx = f(x);
    auto d = a.below(x);
    const auto& cands = d ? *d : wide;
    for (const auto& y : pb) {
      if (!b.prec(y, fx)) continue;
      ++s.cases;
      std::optional<Elem> wit;
      for (const auto& z : cands)
        if (a.prec(z, x) && b.prec(y, f(z))) {
          wit = z;
          break;
        }
      json inst = {{"x", ca.show(x)}, {"y", cb.show(y)}};
      if (wit) {
        if (s.example.is_null()) s.example = {{"x", ca.show(x)}, {"y", cb.show(y)}, {"z", ca.show(*wit)}};
      } else if (d || exact) {
        s.refuted = inst;
        break;
      } else if (s.unverified.is_null()) {
        s.unverified = inst;
      }
    }
  }
  verdict(r, "y ≺ f(x) ⇒ ∃z ≺ x. y ≺ f(z)", s, exact, depth);
  return r;
}

Report check_wb_continuous(const PointMap& f, const Space& x, const Space& y, Bound b) {
  Report r("way-below preserving continuous map " + x.name() + " → " + y.name());
  json cx;
  Judgement c = is_continuous(x, y, f, b, &cx);
  r.judge("continuous", c, "", c.value ? json(nullptr) : cx);
  auto pts = x.sample(b.points());
  bool exact = x.finite() && pts.size() < b.points();
  cx = nullptr;
  for (const auto& p : pts)
    for (const auto& q : pts) {
      if (!cx.is_null()) break;
      auto w = way_below(x, p, q, b);
      exact = exact && w.exact;
      if (!w.verdict) continue;
      auto v = way_below(y, f(p), f(q), b);
      exact = exact && v.exact;
      if (!v.verdict) cx = {x.show(p), x.show(q)};
    }
  if (!cx.is_null()) r.fail("preserves ≪", "", cx);
  else if (exact) r.pass("preserves ≪");
  else r.bounded("preserves ≪", b.points());
  return r;
}

// ---------------------------------------------------------------- exponential

namespace {

using Mask = std::uint64_t;

Mask down_mask(const FinitePoset& p, std::size_t i) {
  Mask m = 0;
  for (std::size_t j = 0; j < p.size(); ++j)
    if (p.leq(j, i)) m |= Mask{1} << j;
  return m;
}

std::string map_name(const FinitePoset& y, const std::vector<std::size_t>& g) {
  std::string s = "⟨";
  for (std::size_t i = 0; i < g.size(); ++i) s += (i ? "," : "") + y.name(g[i]);
  return s + "⟩";
}

std::optional<std::size_t> sup_of(const FinitePoset& y, const std::vector<std::size_t>& s) {
  for (std::size_t u = 0; u < y.size(); ++u) {
    if (!std::all_of(s.begin(), s.end(), [&](std::size_t v) { return y.leq(v, u); })) continue;
    bool least = true;
    for (std::size_t w = 0; w < y.size() && least; ++w)
      if (std::all_of(s.begin(), s.end(), [&](std::size_t v) { return y.leq(v, w); })) least = y.leq(u, w);
    if (least) return u;
  }
  return std::nullopt;
}

SpacePtr alexandrov(const FinitePoset& p) { return make_poset_space(Poset::explicit_finite(p), TopologyKind::alexandrov); }

}  // namespace

Nab FiniteMapSpace::nab() const {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < maps.size(); ++i)
    for (std::size_t j = 0; j < maps.size(); ++j)
      if (prec0[i][j]) pairs.push_back({i, j});
  return Nab::of_table(order, pairs);
}

FiniteMapSpace con_exponential(const FinitePoset& x, const FinitePoset& y) {
  FiniteMapSpace e{x, y, monotone_maps(x, y), {}, {}};
  std::size_t n = e.maps.size();
  if (n > 64) throw std::invalid_argument("finite exponential: more than 64 maps");
  std::vector<std::string> names;
  std::vector<std::uint8_t> leq(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(map_name(y, e.maps[i]));
    for (std::size_t j = 0; j < n; ++j) {
      bool le = true;
      for (std::size_t k = 0; k < x.size() && le; ++k) le = y.leq(e.maps[i][k], e.maps[j][k]);
      leq[i * n + j] = le;
    }
  }
  e.order = FinitePoset(names, leq);
  // A ≺₀ B iff some h ∈ B has A ⊆ ↓h ⊆ B.
  e.prec0.assign(n, std::vector<std::uint8_t>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    Mask a = down_mask(e.order, i);
    for (std::size_t j = 0; j < n; ++j) {
      Mask b = down_mask(e.order, j);
      for (std::size_t h = 0; h < n && !e.prec0[i][j]; ++h) {
        Mask dh = down_mask(e.order, h);
        e.prec0[i][j] = (b >> h & 1) && (a & ~dh) == 0 && (dh & ~b) == 0;
      }
    }
  }
  return e;
}

Report check_con_exponential(const FiniteMapSpace& e) {
  Report r("Y^X for " + std::to_string(e.x.size()) + "- and " + std::to_string(e.y.size()) + "-element posets");
  Nab n = e.nab();
  r.merge(check_nab(n), "≺₀: ");
  NabSpace s(n);
  json cx;
  bool exact = true;
  for (std::size_t i = 0; i < e.maps.size(); ++i)
    for (std::size_t j = 0; j < e.maps.size(); ++j) {
      auto w = way_below(s, Elem(static_cast<std::int64_t>(i)), Elem(static_cast<std::int64_t>(j)));
      exact = exact && w.exact;
      if (cx.is_null() && w.verdict != (e.prec0[i][j] != 0)) cx = {e.order.name(i), e.order.name(j)};
    }
  if (!cx.is_null()) r.fail("≪ = ≺₀", "", cx);
  else r.judge("≪ = ≺₀", {true, exact, 0});
  cx = nullptr;
  for (std::size_t i = 0; i < e.maps.size(); ++i)
    for (std::size_t j = 0; j < e.maps.size(); ++j)
      if (cx.is_null() && (e.prec0[i][j] != 0) != e.order.leq(i, j)) cx = {e.order.name(i), e.order.name(j)};
  r.expect("≺₀ = pointwise order", cx.is_null(), "the induced topology is Alexandrov on monotone maps", cx);
  r.merge(check_specialization(s), "");
  return r;
}

Report eval_and_curry(const FinitePoset& z, const FinitePoset& x, const FinitePoset& y,
                      const std::vector<std::size_t>& f) {
  Report r("ev and curry");
  std::size_t nz = z.size(), nx = x.size();
  if (f.size() != nz * nx) throw std::invalid_argument("map table has the wrong size");
  auto fz = [&](std::size_t a, std::size_t b) { return f[a * nx + b]; };
  for (std::size_t a = 0; a < nz; ++a)
    for (std::size_t b = 0; b < nx; ++b)
      for (std::size_t c = 0; c < nz; ++c)
        for (std::size_t d = 0; d < nx; ++d)
          if (z.leq(a, c) && x.leq(b, d) && !y.leq(fz(a, b), fz(c, d))) {
            // In finite spaces ≪ = ≤, so both properties reduce to monotonicity.
            r.fail("f is a way-below preserving continuous map", "",
                   {{"from", {z.name(a), x.name(b)}}, {"to", {z.name(c), x.name(d)}}});
            return r;
          }
  FiniteMapSpace e = con_exponential(x, y);
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < e.maps.size(); ++i) index[e.maps[i]] = i;

  // f̄(z₀) = ↓{f_z : z ≪ z₀}; it must be principal to lie in the finite Y^X.
  std::vector<std::size_t> fbar(nz);
  for (std::size_t z0 = 0; z0 < nz; ++z0) {
    Mask m = 0;
    for (std::size_t c = 0; c < nz; ++c) {
      if (!z.leq(c, z0)) continue;
      std::vector<std::size_t> g(nx);
      for (std::size_t b = 0; b < nx; ++b) g[b] = fz(c, b);
      m |= down_mask(e.order, index.at(g));
    }
    std::optional<std::size_t> top;
    for (std::size_t h = 0; h < e.maps.size() && !top; ++h)
      if ((m >> h & 1) && down_mask(e.order, h) == m) top = h;
    if (!top) {
      r.fail("f̄(z) is principal", "", z.name(z0));
      return r;
    }
    fbar[z0] = *top;
  }
  r.pass("f̄(z) is principal");

  // ev(A, x) = sup{g(x) : g ∈ A}.
  std::vector<std::size_t> ev(e.maps.size() * nx);
  for (std::size_t i = 0; i < e.maps.size(); ++i)
    for (std::size_t b = 0; b < nx; ++b) {
      std::vector<std::size_t> vals;
      for (std::size_t g = 0; g < e.maps.size(); ++g)
        if (e.order.leq(g, i)) vals.push_back(e.maps[g][b]);
      auto s = sup_of(y, vals);
      if (!s) {
        r.fail("ev defined", "no supremum", {e.order.name(i), x.name(b)});
        return r;
      }
      ev[i * nx + b] = *s;
    }
  json cx;
  for (std::size_t a = 0; a < nz; ++a)
    for (std::size_t b = 0; b < nx; ++b)
      if (cx.is_null() && ev[fbar[a] * nx + b] != fz(a, b)) cx = {z.name(a), x.name(b)};
  r.expect("ev ∘ (f̄ × id) = f", cx.is_null(), "", cx);

  auto zs = alexandrov(z), xs = alexandrov(x), ys = alexandrov(y);
  auto es = std::make_shared<NabSpace>(e.nab());
  r.merge(check_wb_continuous([&](const Elem& p) { return Elem(static_cast<std::int64_t>(fbar[p.tag])); }, *zs, *es),
          "f̄: ");
  ProductSpace ex({es, xs});
  PointMap evm = [&](const Elem& p) { return Elem(static_cast<std::int64_t>(ev[p[0].tag * nx + p[1].tag])); };
  r.merge(check_wb_continuous(evm, ex, *ys), "ev: ");
  r.merge(check_separate_continuity(ex, *ys, evm), "ev: ");

  std::size_t solutions = 0;
  bool is_fbar = false;
  for (const auto& g : monotone_maps(z, e.order)) {
    bool ok = true;
    for (std::size_t a = 0; a < nz && ok; ++a)
      for (std::size_t b = 0; b < nx && ok; ++b) ok = ev[g[a] * nx + b] == fz(a, b);
    if (ok) {
      ++solutions;
      is_fbar = is_fbar || g == fbar;
    }
  }
  r.expect("f̄ unique", solutions == 1 && is_fbar,
           std::to_string(solutions) + " way-below preserving continuous solutions of ev ∘ (g × id) = f",
           solutions == 1 ? json(nullptr) : json{{"solutions", solutions}});
  return r;
}

}  // namespace dspace
