#include "dspace/space.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace dspace {

// ---------------------------------------------------------------- families and subsets

DirectedFamily DirectedFamily::of_set(std::vector<Elem> members, std::string label) {
  DirectedFamily d;
  d.members = std::move(members);
  d.label = std::move(label);
  return d;
}

DirectedFamily DirectedFamily::of_chain(Elem chain, std::string label) {
  DirectedFamily d;
  d.chain = std::move(chain);
  d.label = std::move(label);
  return d;
}

DirectedFamily DirectedFamily::of_generator(std::function<Elem(std::size_t)> g, std::string label) {
  DirectedFamily d;
  d.generator = std::move(g);
  d.label = std::move(label);
  return d;
}

DirectedFamily DirectedFamily::of_window(std::vector<Elem> members, std::string label) {
  DirectedFamily d = of_set(std::move(members), std::move(label));
  d.window = true;
  return d;
}

std::vector<Elem> DirectedFamily::prefix(const Carrier& x, std::size_t n) const {
  if (finite()) return members;
  std::vector<Elem> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(chain ? x.chain_member(*chain, i) : generator(i));
  return out;
}

DirectedFamily DirectedFamily::mapped(const Carrier& x, std::function<Elem(const Elem&)> f,
                                      std::string lbl) const {
  if (finite()) {
    std::set<Elem> img;
    for (const auto& m : members) img.insert(f(m));
    DirectedFamily d = of_set({img.begin(), img.end()}, std::move(lbl));
    d.window = window;
    return d;
  }
  if (chain) {
    Elem c = *chain;
    const Carrier* xp = &x;
    return of_generator([c, xp, f](std::size_t n) { return f(xp->chain_member(c, n)); }, std::move(lbl));
  }
  auto g = generator;
  return of_generator([g, f](std::size_t n) { return f(g(n)); }, std::move(lbl));
}

json DirectedFamily::to_json(const Carrier& x) const {
  json j;
  if (!label.empty()) j["label"] = label;
  if (finite()) {
    j["members"] = json::array();
    for (const auto& m : members) j["members"].push_back(x.show(m));
    if (window) j["window"] = true;
  } else {
    if (chain) j["chain"] = dspace::to_json(*chain);
    j["first"] = json::array();
    for (const auto& m : prefix(x, 4)) j["first"].push_back(x.show(m));
  }
  return j;
}

Subset Subset::whole() {
  return {[](const Elem&) { return true; }, "X"};
}

Subset Subset::of(std::vector<Elem> members, std::string label) {
  auto s = std::make_shared<std::set<Elem>>(members.begin(), members.end());
  return {[s](const Elem& e) { return s->count(e) > 0; }, std::move(label)};
}

Subset Subset::up(const Carrier& x, Elem a) {
  std::string lbl = "↑" + x.show(a);
  const Carrier* xp = &x;
  return {[xp, a](const Elem& e) { return xp->leq(a, e); }, lbl};
}

const char* topology_name(TopologyKind k) {
  switch (k) {
    case TopologyKind::alexandrov: return "alexandrov";
    case TopologyKind::scott: return "scott";
    case TopologyKind::upper: return "upper";
    case TopologyKind::declared: return "declared";
    case TopologyKind::product: return "product";
    case TopologyKind::ideal: return "ideal";
    case TopologyKind::nab: return "nab";
    case TopologyKind::other: return "other";
  }
  return "?";
}

bool Space::open_within_up(const Elem& open, const Elem& x) const {
  auto c = open_as_up(open);
  return c && leq(x, *c);
}

// ---------------------------------------------------------------- PosetSpace

namespace {

// Open descriptors of poset spaces: {0,[c]} = ↑c, {1,[F...]} = X∖↓F, {2} = X.
Elem up_open(Elem c) { return Elem(0, {std::move(c)}); }
Elem whole_open() { return Elem(2); }

}  // namespace

PosetSpace::PosetSpace(Poset p, TopologyKind t, std::vector<DirectedFamily> extra)
    : p_(std::move(p)), kind_(t), extra_(std::move(extra)) {
  if (t != TopologyKind::alexandrov && t != TopologyKind::scott && t != TopologyKind::upper &&
      t != TopologyKind::declared)
    throw std::invalid_argument("poset spaces take alexandrov, scott, upper or declared topologies");
  if (t == TopologyKind::scott && !p_.scott_supported())
    throw std::invalid_argument("scott topology needs an algebraic constructor expression; got " + p_.describe());
  if (t == TopologyKind::declared && !p_.finite())
    throw std::invalid_argument("declared topologies are finite");
}

std::string PosetSpace::name() const { return p_.describe() + "/" + topology_name(kind_); }

json PosetSpace::to_json() const {
  json j = {{"poset", p_.to_json()}, {"topology", topology_name(kind_)}};
  if (kind_ == TopologyKind::declared) j["opens"] = declared_;
  if (!extra_.empty()) {
    j["families"] = json::array();
    for (const auto& d : extra_) {
      json m = json::array();
      for (const auto& e : d.members) m.push_back(p_.show(e));
      j["families"].push_back(m);
    }
  }
  return j;
}

Judgement PosetSpace::chain_down_contains(const Elem& c, const Elem& a) const {
  return Judgement::sure(p_.chain_down_contains(c, a));
}

Judgement PosetSpace::chain_below(const Elem& c, const Elem& b) const {
  return Judgement::sure(p_.chain_below(c, b));
}

Judgement PosetSpace::chain_included(const Elem& c, const Elem& d) const {
  if (auto r = p_.chain_included(c, d)) return Judgement::sure(*r);
  return Carrier::chain_included(c, d);
}

std::vector<Elem> PosetSpace::local_base(const Elem& x, std::size_t bound) const {
  switch (kind_) {
    case TopologyKind::alexandrov:
    case TopologyKind::declared: return {up_open(x)};
    case TopologyKind::scott: {
      if (p_.scott_compact(x)) return {up_open(x)};
      std::vector<Elem> out;
      for (auto& c : p_.prefix(bound))
        if (p_.leq(c, x) && p_.scott_compact(c)) out.push_back(up_open(c));
      if (out.empty()) out.push_back(whole_open());
      return out;
    }
    case TopologyKind::upper: {
      std::vector<Elem> f;
      for (auto& e : p_.finite() ? p_.elements() : p_.prefix(bound))
        if (!p_.leq(x, e)) f.push_back(e);
      std::vector<Elem> out{Elem(1, f)};
      if (!p_.finite())
        for (auto& e : f) out.push_back(Elem(1, {e}));
      return out;
    }
    default: break;
  }
  return {whole_open()};
}

bool PosetSpace::in_open(const Elem& open, const Elem& y) const {
  switch (open.tag) {
    case 0: return p_.leq(open[0], y);
    case 1:
      for (const auto& f : open.parts)
        if (p_.leq(y, f)) return false;
      return true;
    default: return true;
  }
}

std::string PosetSpace::show_open(const Elem& open) const {
  switch (open.tag) {
    case 0: return "↑" + p_.show(open[0]);
    case 1: {
      if (open.parts.empty()) return "X";
      std::string s = "X∖↓{";
      for (std::size_t i = 0; i < open.parts.size(); ++i) {
        if (i) s += ",";
        if (i == 6 && open.parts.size() > 8) {
          s += "…," + p_.show(open.parts.back());
          break;
        }
        s += p_.show(open.parts[i]);
      }
      return s + "}";
    }
    default: return "X";
  }
}

bool PosetSpace::local_base_complete(const Elem& x) const {
  switch (kind_) {
    case TopologyKind::alexandrov:
    case TopologyKind::declared: return true;
    case TopologyKind::scott: return p_.scott_compact(x);
    case TopologyKind::upper: return p_.finite();
    default: return false;
  }
}

std::optional<Elem> PosetSpace::open_as_up(const Elem& open) const {
  if (open.tag == 0) return open[0];
  return std::nullopt;
}

std::optional<Judgement> PosetSpace::converges_hint(const DirectedFamily& d, const Elem& x) const {
  // Scott topology: a chain converges exactly to the points below its supremum.
  if (kind_ == TopologyKind::scott && d.chain) {
    if (auto s = p_.chain_sup(*d.chain)) return Judgement::sure(p_.leq(x, *s));
  }
  return std::nullopt;
}

std::shared_ptr<PosetSpace> PosetSpace::declared(std::vector<std::string> names,
                                                 const std::vector<std::vector<std::string>>& opens) {
  std::size_t n = names.size();
  if (n == 0 || n > 20) throw std::invalid_argument("declared spaces need 1..20 points");
  auto index = [&](const std::string& s) {
    auto it = std::find(names.begin(), names.end(), s);
    if (it == names.end()) throw std::invalid_argument("declared open mentions unknown point " + s);
    return static_cast<std::size_t>(it - names.begin());
  };
  std::set<std::uint32_t> fam;
  for (const auto& o : opens) {
    std::uint32_t m = 0;
    for (const auto& s : o) m |= 1u << index(s);
    fam.insert(m);
  }
  std::uint32_t all = n == 32 ? ~0u : ((1u << n) - 1);
  if (!fam.count(0)) throw std::invalid_argument("declared topology must contain the empty set");
  if (!fam.count(all)) throw std::invalid_argument("declared topology must contain the whole space");
  for (auto a : fam)
    for (auto b : fam) {
      if (!fam.count(a | b)) throw std::invalid_argument("declared topology is not closed under unions");
      if (!fam.count(a & b)) throw std::invalid_argument("declared topology is not closed under intersections");
    }
  std::vector<std::uint8_t> leq(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      bool ok = true;
      for (auto o : fam)
        if ((o >> i & 1) && !(o >> j & 1)) ok = false;
      leq[i * n + j] = ok;
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (leq[i * n + j] && leq[j * n + i])
        throw std::invalid_argument("declared topology is not T0: " + names[i] + " and " + names[j] +
                                    " have the same neighbourhoods");
  FinitePoset fp(names, leq);
  // Finite T0 topologies are exactly the upper sets of the specialization order.
  for (std::uint32_t m = 0; m <= all; ++m) {
    bool upper = true;
    for (std::size_t i = 0; i < n && upper; ++i)
      if (m >> i & 1)
        for (std::size_t j = 0; j < n; ++j)
          if (fp.leq(i, j) && !(m >> j & 1)) upper = false;
    if (upper != (fam.count(m) > 0))
      throw std::logic_error("declared topology differs from the Alexandrov topology of its specialization");
    if (m == all) break;
  }
  auto sp = std::make_shared<PosetSpace>(Poset::explicit_finite(fp), TopologyKind::declared);
  sp->declared_ = opens;
  return sp;
}

SpacePtr make_poset_space(Poset p, TopologyKind t) { return std::make_shared<PosetSpace>(std::move(p), t); }

// ---------------------------------------------------------------- ProductSpace

ProductSpace::ProductSpace(std::vector<SpacePtr> factors)
    : fs_(std::move(factors)), pc_(std::vector<CarrierPtr>(fs_.begin(), fs_.end())) {}

std::string ProductSpace::name() const {
  std::string s;
  for (std::size_t i = 0; i < fs_.size(); ++i) {
    if (i) s += " ⊗ ";
    s += fs_[i]->name();
  }
  return fs_.empty() ? "1" : s;
}

json ProductSpace::to_json() const {
  json f = json::array();
  for (const auto& x : fs_) f.push_back(x->to_json());
  return {{"product", f}};
}

bool ProductSpace::finite() const { return pc_.finite(); }
std::vector<Elem> ProductSpace::sample(std::size_t n) const { return pc_.sample(n); }
bool ProductSpace::contains(const Elem& x) const { return pc_.contains(x); }
bool ProductSpace::leq(const Elem& a, const Elem& b) const { return pc_.leq(a, b); }
std::string ProductSpace::show(const Elem& x) const { return pc_.show(x); }
std::vector<Elem> ProductSpace::chains(std::size_t bound) const { return pc_.chains(bound); }
Elem ProductSpace::chain_member(const Elem& c, std::size_t n) const { return pc_.chain_member(c, n); }
Judgement ProductSpace::chain_down_contains(const Elem& c, const Elem& a) const {
  return pc_.chain_down_contains(c, a);
}
Judgement ProductSpace::chain_below(const Elem& c, const Elem& b) const { return pc_.chain_below(c, b); }
Judgement ProductSpace::chain_included(const Elem& c, const Elem& d) const { return pc_.chain_included(c, d); }
std::optional<Elem> ProductSpace::chain_limit(const Elem& c) const { return pc_.chain_limit(c); }

std::vector<Elem> ProductSpace::local_base(const Elem& x, std::size_t bound) const {
  // Rectangles from aligned component bases. For directed families meeting
  // every rectangle is the same as meeting every cylinder, so this is a base
  // for convergence.
  std::vector<std::vector<Elem>> bases;
  std::size_t len = 1;
  for (std::size_t i = 0; i < fs_.size(); ++i) {
    bases.push_back(fs_[i]->local_base(x[i], bound));
    len = std::max(len, bases.back().size());
  }
  std::vector<Elem> out;
  for (std::size_t j = 0; j < len; ++j) {
    std::vector<Elem> rect;
    for (auto& b : bases) rect.push_back(b[std::min(j, b.size() - 1)]);
    out.push_back(Elem(0, std::move(rect)));
  }
  return out;
}

bool ProductSpace::in_open(const Elem& open, const Elem& y) const {
  for (std::size_t i = 0; i < fs_.size(); ++i)
    if (!fs_[i]->in_open(open[i], y[i])) return false;
  return true;
}

std::string ProductSpace::show_open(const Elem& open) const {
  std::string s;
  for (std::size_t i = 0; i < fs_.size(); ++i) {
    if (i) s += " × ";
    s += fs_[i]->show_open(open[i]);
  }
  return s;
}

bool ProductSpace::local_base_complete(const Elem& x) const {
  for (std::size_t i = 0; i < fs_.size(); ++i)
    if (!fs_[i]->local_base_complete(x[i])) return false;
  return true;
}

std::optional<Elem> ProductSpace::open_as_up(const Elem& open) const {
  std::vector<Elem> coords;
  for (std::size_t i = 0; i < fs_.size(); ++i) {
    auto c = fs_[i]->open_as_up(open[i]);
    if (!c) return std::nullopt;
    coords.push_back(*c);
  }
  return Elem(0, std::move(coords));
}

bool ProductSpace::open_within_up(const Elem& open, const Elem& x) const {
  for (std::size_t i = 0; i < fs_.size(); ++i)
    if (!fs_[i]->open_within_up(open[i], x[i])) return false;
  return true;
}

bool ProductSpace::directed_by_construction() const {
  // Factors built this way are continuous, and for continuous factors the
  // topological product is already directed.
  return std::all_of(fs_.begin(), fs_.end(), [](const SpacePtr& f) { return f->directed_by_construction(); });
}

SpacePtr product(std::vector<SpacePtr> factors) { return std::make_shared<ProductSpace>(std::move(factors)); }

// ---------------------------------------------------------------- convergence

namespace {

std::optional<Elem> maximum(const Space& x, const std::vector<Elem>& ms) {
  for (const auto& m : ms)
    if (std::all_of(ms.begin(), ms.end(), [&](const Elem& e) { return x.leq(e, m); })) return m;
  return std::nullopt;
}

// Some member of d lies in the set `has`.
Judgement family_meets(const Space& x, const DirectedFamily& d, const std::function<bool(const Elem&)>& has) {
  if (d.finite()) {
    for (const auto& m : d.members)
      if (has(m)) return Judgement::sure(true);
    return d.window ? Judgement::sampled(false, d.members.size()) : Judgement::sure(false);
  }
  for (auto& m : d.prefix(x, kChainProbe))
    if (has(m)) return Judgement::sure(true);
  return Judgement::sampled(false, kChainProbe);
}

// Some member of d lies above a.
Judgement family_reaches(const Space& x, const DirectedFamily& d, const Elem& a) {
  if (d.chain) return x.chain_down_contains(*d.chain, a);
  return family_meets(x, d, [&](const Elem& m) { return x.leq(a, m); });
}

}  // namespace

Judgement meets(const Space& x, const DirectedFamily& d, const Elem& open) {
  if (auto c = x.open_as_up(open)) return family_reaches(x, d, *c);
  return family_meets(x, d, [&](const Elem& m) { return x.in_open(open, m); });
}

Judgement converges(const Space& x, const DirectedFamily& d, const Elem& pt, Bound b) {
  if (!x.contains(pt)) throw std::domain_error("point outside the space: " + to_string(pt));
  if (auto h = x.converges_hint(d, pt)) return *h;
  if (d.finite() && !d.window) {
    // A finite directed family converges exactly to the points below its maximum.
    if (auto m = maximum(x, d.members)) return Judgement::sure(x.leq(pt, *m));
  }
  Judgement r = Judgement::sure(true);
  for (const auto& o : x.local_base(pt, b.depth)) {
    Judgement j = meets(x, d, o);
    if (!j.value) {
      if (d.window) j.exact = false, j.bound = d.members.size();
      return j;
    }
    r = r && j;
  }
  if (!x.local_base_complete(pt) || d.window) {
    r.exact = false;
    r.bound = std::max(r.bound, b.depth);
  }
  return r;
}

// ---------------------------------------------------------------- open sets

namespace {

struct Window {
  std::vector<Elem> pts;
  bool complete;
};

Window window(const Space& x, std::size_t n) {
  Window w{x.sample(n), false};
  w.complete = x.finite() && w.pts.size() < n;
  return w;
}

}  // namespace

Judgement is_upper(const Space& x, const Subset& u, Bound b, json* cx) {
  Window lo = window(x, b.depth), hi = window(x, 2 * b.depth);
  for (const auto& a : lo.pts) {
    if (!u.has(a)) continue;
    for (const auto& y : hi.pts)
      if (x.leq(a, y) && !u.has(y)) {
        if (cx) *cx = {x.show(a), x.show(y)};
        return Judgement::sure(false);
      }
  }
  return hi.complete ? Judgement::sure(true) : Judgement::sampled(true, b.depth);
}

Judgement is_open(const Space& x, const Subset& u, Bound b, json* cx) {
  Window lo = window(x, b.depth), hi = window(x, 2 * b.depth);
  bool exact = hi.complete;
  for (const auto& a : lo.pts) {
    if (!u.has(a)) continue;
    bool found = false;
    for (const auto& o : x.local_base(a, b.depth)) {
      bool inside = true;
      for (const auto& y : hi.pts)
        if (x.in_open(o, y) && !u.has(y)) {
          inside = false;
          break;
        }
      if (inside) {
        found = true;
        break;
      }
    }
    if (!found) {
      if (cx) *cx = {{"point", x.show(a)}, {"reason", "no basic neighbourhood inside the set"}};
      return exact && x.local_base_complete(a) ? Judgement::sure(false) : Judgement::sampled(false, b.depth);
    }
    exact = exact && x.local_base_complete(a);
  }
  return exact ? Judgement::sure(true) : Judgement::sampled(true, b.depth);
}

std::vector<DirectedFamily> catalog(const Space& x, Bound b) {
  std::vector<DirectedFamily> out;
  for (auto& c : x.chains(b.depth)) out.push_back(DirectedFamily::of_chain(c, x.show_chain(c)));
  for (auto& d : x.extra_families()) out.push_back(d);
  return out;
}

const char* open_verdict_name(OpenVerdict v) {
  switch (v) {
    case OpenVerdict::open: return "open";
    case OpenVerdict::directed_open_not_open: return "directed_open_not_open";
    case OpenVerdict::not_directed_open: return "not_directed_open";
  }
  return "?";
}

DirectedOpenResult is_directed_open(const Space& x, const Subset& u, Bound b) {
  DirectedOpenResult r;
  json cx;
  Judgement up = is_upper(x, u, b, &cx);
  if (!up.value) {
    r.verdict = OpenVerdict::not_directed_open;
    r.detail = "not an upper set: the singleton family of the larger point converges to the smaller and misses the set";
    r.counterexample = cx;
    return r;
  }
  bool exact = up.exact;
  Window lo = window(x, b.depth);
  for (const auto& d : catalog(x, b)) {
    for (const auto& a : lo.pts) {
      if (!u.has(a)) continue;
      Judgement c = converges(x, d, a, b);
      if (!c.value) continue;
      Judgement hit = family_meets(x, d, u.has);
      if (!hit.value) {
        r.verdict = OpenVerdict::not_directed_open;
        r.exact = c.exact && hit.exact;
        r.bound = b.depth;
        r.detail = "a directed family converges into the set without meeting it";
        r.counterexample = {{"family", d.to_json(x)}, {"point", x.show(a)}};
        return r;
      }
      exact = exact && c.exact;
    }
  }
  // Relative to the catalog; finite spaces have only finite directed families.
  if (!x.finite()) exact = false;
  Judgement op = is_open(x, u, b, &cx);
  r.verdict = op.value ? OpenVerdict::open : OpenVerdict::directed_open_not_open;
  r.exact = exact && op.exact;
  r.bound = r.exact ? 0 : b.depth;
  if (!op.value) {
    r.detail = "directed-open but no basic neighbourhood fits";
    r.counterexample = cx;
  }
  return r;
}

// ---------------------------------------------------------------- way-below

WayBelowWitness way_below(const Space& x, const Elem& a, const Elem& b, Bound bd) {
  WayBelowWitness w;
  w.x = a;
  w.y = b;
  if (!x.contains(a) || !x.contains(b)) throw std::domain_error("way_below: point outside the space");
  if (!x.leq(a, b)) {
    w.verdict = false;
    w.evidence = "the constant family {y} converges to y and has no member above x";
    w.refuting_family = {{"members", {x.show(b)}}};
    return w;
  }
  for (const auto& o : x.local_base(b, bd.depth))
    if (x.open_within_up(o, a)) {
      w.verdict = true;
      w.evidence = "interior: y ∈ " + x.show_open(o) + " ⊆ ↑x";
      return w;
    }
  for (const auto& d : catalog(x, bd)) {
    Judgement c = converges(x, d, b, bd);
    if (!c.value) continue;
    Judgement hit = family_reaches(x, d, a);
    if (!hit.value) {
      w.verdict = false;
      w.exact = c.exact && hit.exact;
      w.bound = w.exact ? 0 : bd.depth;
      w.evidence = "a catalog family converges to y with no member above x";
      w.refuting_family = d.to_json(x);
      return w;
    }
  }
  w.verdict = true;
  w.exact = x.finite();
  w.bound = w.exact ? 0 : bd.depth;
  w.evidence = "every catalog family converging to y has a member above x";
  return w;
}

std::vector<Elem> way_below_window(const Space& x, const Elem& pt, Bound b) {
  std::vector<Elem> out;
  for (auto& y : x.sample(b.approximants()))
    if (way_below(x, y, pt, b).verdict) out.push_back(y);
  return out;
}

// ---------------------------------------------------------------- classification

const char* space_class_name(SpaceClass c) {
  switch (c) {
    case SpaceClass::not_directed: return "not_directed";
    case SpaceClass::directed: return "directed";
    case SpaceClass::continuous: return "continuous";
    case SpaceClass::algebraic: return "algebraic";
  }
  return "?";
}

namespace {

// Two members without an upper bound among the members, if any.
std::optional<std::pair<Elem, Elem>> undirected_pair(const Space& x, const std::vector<Elem>& ms) {
  std::size_t lim = std::min<std::size_t>(ms.size(), 48);
  for (std::size_t i = 0; i < lim; ++i)
    for (std::size_t j = i + 1; j < lim; ++j) {
      if (x.leq(ms[i], ms[j]) || x.leq(ms[j], ms[i])) continue;
      bool ub = false;
      for (std::size_t k = ms.size(); k-- > 0;)
        if (x.leq(ms[i], ms[k]) && x.leq(ms[j], ms[k])) {
          ub = true;
          break;
        }
      if (!ub) return std::make_pair(ms[i], ms[j]);
    }
  return std::nullopt;
}

// The approximants of pt in `cands` form a directed family converging to pt.
Judgement approximates(const Space& x, const std::vector<Elem>& cands, const Elem& pt, Bound b,
                       json* cx) {
  if (cands.empty()) {
    if (cx) *cx = {{"point", x.show(pt)}, {"reason", "no approximants"}};
    return Judgement::sure(false);
  }
  if (auto p = undirected_pair(x, cands)) {
    if (cx) *cx = {{"point", x.show(pt)}, {"reason", "approximants not directed"}, {"pair", {x.show(p->first), x.show(p->second)}}};
    return Judgement::sampled(false, cands.size());
  }
  Window all = window(x, b.approximants());
  DirectedFamily d = all.complete ? DirectedFamily::of_set(cands) : DirectedFamily::of_window(cands);
  Judgement c = converges(x, d, pt, b);
  if (!c.value && cx) *cx = {{"point", x.show(pt)}, {"reason", "approximants do not converge to the point"}};
  return c;
}

}  // namespace

Classification classify(const Space& x, Bound b) {
  Classification cl;
  Window pts = window(x, b.depth);
  bool exact_space = pts.complete;
  std::map<Elem, bool> compact;
  bool compact_exact = true;
  // Approximants reach twice as deep as the sample, so the refuting catalog must too.
  Bound wide{b.approximants()};
  auto is_compact = [&](const Elem& e) {
    auto it = compact.find(e);
    if (it != compact.end()) return it->second;
    auto w = way_below(x, e, e, wide);
    compact_exact = compact_exact && w.exact;
    return compact[e] = w.verdict;
  };
  for (const auto& e : pts.pts)
    if (is_compact(e)) cl.compacts.push_back(e);

  // Without a construction guarantee, directedness rests on the probe below;
  // it is exact only when the probe covers a finite space.
  bool directed_exact = x.directed_by_construction();
  if (!directed_exact) {
    Window probe = window(x, b.points());
    directed_exact = probe.complete;
    for (const auto& e : probe.pts) {
      auto r = is_directed_open(x, Subset::up(x, e), b);
      directed_exact = directed_exact && r.exact;
      if (r.verdict == OpenVerdict::directed_open_not_open) {
        cl.kind = SpaceClass::not_directed;
        cl.exact = r.exact;
        cl.bound = r.exact ? 0 : b.depth;
        cl.detail = "↑" + x.show(e) + " is directed-open but not open";
        cl.witness = {{"set", "↑" + x.show(e)}, {"evidence", r.counterexample}};
        return cl;
      }
    }
  }

  Window approx = window(x, b.approximants());
  Window probe = window(x, b.points());
  json cx;
  Judgement alg = Judgement::sure(true);
  auto candidates = [&](const Elem& e) {
    std::vector<Elem> cs = approx.pts;
    for (auto& h : x.approximant_hints(e, b.depth))
      if (std::find(cs.begin(), cs.end(), h) == cs.end()) cs.push_back(std::move(h));
    return cs;
  };
  for (const auto& e : probe.pts) {
    std::vector<Elem> ks;
    for (const auto& c : candidates(e))
      if (x.leq(c, e) && is_compact(c)) ks.push_back(c);
    alg = alg && approximates(x, ks, e, b, &cx);
    if (!alg.value) break;
  }
  bool exact = exact_space && compact_exact && directed_exact;
  if (alg.value) {
    cl.kind = SpaceClass::algebraic;
    cl.exact = exact && alg.exact;
    cl.bound = cl.exact ? 0 : b.depth;
    cl.detail = "↓x ∩ K(X) is directed and converges to x at every sampled point";
    return cl;
  }
  json alg_cx = cx;
  Judgement cont = Judgement::sure(true);
  for (const auto& e : probe.pts) {
    std::vector<Elem> ws;
    for (const auto& y : candidates(e))
      if (way_below(x, y, e, b).verdict) ws.push_back(y);
    cont = cont && approximates(x, ws, e, b, &cx);
    if (!cont.value) break;
  }
  if (cont.value) {
    cl.kind = SpaceClass::continuous;
    cl.exact = exact && cont.exact;
    cl.bound = cl.exact ? 0 : b.depth;
    cl.detail = "⇓x is directed and converges to x at every sampled point";
    cl.witness = {{"not_algebraic", alg_cx}};
    return cl;
  }
  cl.kind = SpaceClass::directed;
  cl.exact = exact;
  cl.bound = cl.exact ? 0 : b.depth;
  cl.detail = "some ⇓x fails to approximate x";
  cl.witness = cx;
  return cl;
}

SpacePtr coreflect(const SpacePtr& x, Bound b) {
  Classification cl = classify(*x, b);
  if (cl.kind != SpaceClass::not_directed) return x;
  auto ps = std::dynamic_pointer_cast<const PosetSpace>(x);
  if (!ps) throw std::invalid_argument("coreflection is supported for poset spaces only");
  for (const auto& e : x->sample(b.depth)) {
    auto r = is_directed_open(*x, Subset::up(*x, e), b);
    if (r.verdict == OpenVerdict::not_directed_open)
      throw std::invalid_argument("coreflection with non-principal directed-open sets is unsupported");
  }
  // Every principal upper set is directed-open, so the directed-open sets are
  // exactly the upper sets.
  return make_poset_space(ps->poset(), TopologyKind::alexandrov);
}

// ---------------------------------------------------------------- continuity

Judgement is_continuous(const Space& x, const Space& y, const PointMap& f, Bound b, json* cx) {
  Window lo = window(x, b.points()), hi = window(x, 2 * b.depth);
  std::vector<Elem> img;
  for (const auto& z : hi.pts) {
    img.push_back(f(z));
    if (!y.contains(img.back())) {
      if (cx) *cx = {{"point", x.show(z)}, {"reason", "image outside the codomain"}};
      return Judgement::sure(false);
    }
  }
  bool exact = hi.complete && y.finite();
  for (const auto& p : lo.pts) {
    Elem fp = f(p);
    for (const auto& o : y.local_base(fp, b.depth)) {
      bool found = false;
      // Domain neighbourhoods are searched one level deeper than codomain ones.
      for (const auto& nb : x.local_base(p, 2 * b.depth)) {
        bool inside = true;
        for (std::size_t i = 0; i < hi.pts.size(); ++i)
          if (x.in_open(nb, hi.pts[i]) && !y.in_open(o, img[i])) {
            inside = false;
            break;
          }
        if (inside) {
          found = true;
          break;
        }
      }
      if (!found) {
        if (cx) *cx = {{"point", x.show(p)}, {"open", y.show_open(o)}};
        return exact && x.local_base_complete(p) ? Judgement::sure(false) : Judgement::sampled(false, b.depth);
      }
    }
    exact = exact && x.local_base_complete(p) && y.local_base_complete(fp);
  }
  return exact ? Judgement::sure(true) : Judgement::sampled(true, b.depth);
}

Report check_separate_continuity(const ProductSpace& x, const Space& y, const PointMap& f, Bound b) {
  Report r("separate vs joint continuity on " + x.name());
  const auto& fs = x.factors();
  Judgement sep = Judgement::sure(true);
  json sep_cx;
  auto bases = x.sample(b.points());
  for (std::size_t i = 0; i < fs.size() && sep.value; ++i) {
    std::set<Elem> seen;
    for (const auto& t : bases) {
      Elem rest = t;
      rest.parts[i] = Elem(0);
      if (!seen.insert(rest).second) continue;
      PointMap g = [&, t, i](const Elem& s) {
        Elem u = t;
        u.parts[i] = s;
        return f(u);
      };
      json cx;
      sep = sep && is_continuous(*fs[i], y, g, b, &cx);
      if (!sep.value) {
        sep_cx = {{"argument", i}, {"fixed", x.show(t)}, {"evidence", cx}};
        break;
      }
    }
  }
  json joint_cx;
  Judgement joint = is_continuous(x, y, f, b, &joint_cx);
  r.judge("separately continuous", sep, "", sep_cx);
  r.judge("jointly continuous", joint, "", joint_cx);
  r.expect("separate implies joint", !sep.value || joint.value);
  return r;
}

Report is_basis(const Space& x, const std::function<bool(const Elem&)>& in_b, Bound b) {
  Report r("basis check on " + x.name());
  Window approx = window(x, b.approximants());
  Window probe = window(x, b.points());
  Judgement ok = Judgement::sure(true);
  json cx;
  for (const auto& e : probe.pts) {
    std::vector<Elem> ws;
    for (const auto& y : approx.pts)
      if (in_b(y) && way_below(x, y, e, b).verdict) ws.push_back(y);
    ok = ok && approximates(x, ws, e, b, &cx);
    if (!ok.value) break;
  }
  r.judge("⇓x ∩ B directed and converging to x", ok, "", cx);
  Classification cl = classify(x, b);
  if (cl.kind == SpaceClass::algebraic) {
    json miss;
    for (const auto& c : cl.compacts)
      if (!in_b(c)) {
        miss = x.show(c);
        break;
      }
    if (!miss.is_null()) r.fail("K(X) ⊆ B", "a compact element is missing from B", miss);
    else r.judge("K(X) ⊆ B", Judgement{true, cl.exact, cl.bound});
  }
  return r;
}

Report check_specialization(const Space& x, Bound b) {
  Report r("specialization order on " + x.name());
  Window pts = window(x, b.points());
  bool exact = pts.complete;
  for (const auto& a : pts.pts) {
    exact = exact && x.local_base_complete(a);
    auto base = x.local_base(a, b.depth);
    for (const auto& c : pts.pts) {
      bool in_all = std::all_of(base.begin(), base.end(), [&](const Elem& o) { return x.in_open(o, c); });
      if (in_all != x.leq(a, c)) {
        r.fail("⊑ equals carrier order", "specialization and order disagree", {x.show(a), x.show(c)});
        return r;
      }
    }
  }
  r.judge("⊑ equals carrier order", exact ? Judgement::sure(true) : Judgement::sampled(true, b.points()));
  return r;
}

}  // namespace dspace
