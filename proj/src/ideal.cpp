#include "dspace/ideal.hpp"

#include <algorithm>
#include <stdexcept>

namespace dspace {

std::vector<Elem> Carrier::chains(std::size_t) const { return {}; }

Elem Carrier::chain_member(const Elem& c, std::size_t) const {
  throw std::logic_error("carrier has no chain " + to_string(c));
}

std::string Carrier::show_chain(const Elem& c) const {
  std::string s = "⟨";
  for (std::size_t n = 0; n < 3; ++n) s += show(chain_member(c, n)) + ",";
  return s + "…⟩";
}

Judgement Carrier::chain_down_contains(const Elem& c, const Elem& a) const {
  for (std::size_t n = 0; n < kChainProbe; ++n)
    if (leq(a, chain_member(c, n))) return Judgement::sure(true);
  return Judgement::sampled(false, kChainProbe);
}

Judgement Carrier::chain_below(const Elem& c, const Elem& b) const {
  for (std::size_t n = 0; n < kChainProbe; ++n)
    if (!leq(chain_member(c, n), b)) return Judgement::sure(false);
  return Judgement::sampled(true, kChainProbe);
}

Judgement Carrier::chain_included(const Elem& c, const Elem& d) const {
  Judgement all = Judgement::sure(true);
  for (std::size_t n = 0; n < 32; ++n) {
    all = all && chain_down_contains(d, chain_member(c, n));
    if (!all.value) return all;
  }
  if (all.exact) all = Judgement::sampled(true, 32);
  return all;
}

std::optional<Elem> Carrier::chain_limit(const Elem&) const { return std::nullopt; }

Judgement PosetCarrier::chain_down_contains(const Elem& c, const Elem& a) const {
  return Judgement::sure(p_.chain_down_contains(c, a));
}

Judgement PosetCarrier::chain_below(const Elem& c, const Elem& b) const {
  return Judgement::sure(p_.chain_below(c, b));
}

Judgement PosetCarrier::chain_included(const Elem& c, const Elem& d) const {
  if (auto r = p_.chain_included(c, d)) return Judgement::sure(*r);
  return Carrier::chain_included(c, d);
}

ProductCarrier::ProductCarrier(std::vector<CarrierPtr> factors) : fs_(std::move(factors)) {}

bool ProductCarrier::finite() const {
  return std::all_of(fs_.begin(), fs_.end(), [](const CarrierPtr& f) { return f->finite(); });
}

std::vector<Elem> ProductCarrier::sample(std::size_t n) const {
  std::vector<std::function<std::vector<Elem>(std::size_t)>> pre;
  std::vector<bool> fin;
  for (const auto& f : fs_) {
    const Carrier* fp = f.get();
    pre.push_back([fp](std::size_t m) { return fp->sample(m); });
    fin.push_back(f->finite());
  }
  return product_prefix(pre, fin, n);
}

bool ProductCarrier::contains(const Elem& x) const {
  if (x.tag != 0 || x.parts.size() != fs_.size()) return false;
  for (std::size_t i = 0; i < fs_.size(); ++i)
    if (!fs_[i]->contains(x[i])) return false;
  return true;
}

bool ProductCarrier::leq(const Elem& a, const Elem& b) const {
  for (std::size_t i = 0; i < fs_.size(); ++i)
    if (!fs_[i]->leq(a[i], b[i])) return false;
  return true;
}

std::string ProductCarrier::show(const Elem& x) const {
  std::string s = "(";
  for (std::size_t i = 0; i < fs_.size(); ++i) {
    if (i) s += ",";
    s += fs_[i]->show(x[i]);
  }
  return s + ")";
}

std::vector<Elem> ProductCarrier::chains(std::size_t bound) const {
  std::vector<Elem> out;
  std::size_t k = fs_.size();
  if (k == 0) return out;
  std::size_t r = std::max<std::size_t>(2, bound / 8);
  std::vector<std::vector<Elem>> opts(k);
  std::vector<std::size_t> nchains(k);
  for (std::size_t i = 0; i < k; ++i) {
    auto cs = fs_[i]->chains(bound);
    if (cs.size() > 2) cs.resize(2);
    nchains[i] = cs.size();
    for (auto& c : cs) opts[i].push_back(Elem(0, {c}));
    for (auto& x : fs_[i]->sample(r)) opts[i].push_back(Elem(1, {x}));
  }
  std::vector<std::size_t> t(k, 0);
  for (;;) {
    bool has_chain = false;
    std::vector<Elem> coords;
    for (std::size_t i = 0; i < k; ++i) {
      if (t[i] < nchains[i]) has_chain = true;
      coords.push_back(opts[i][t[i]]);
    }
    if (has_chain) out.push_back(Elem(0, std::move(coords)));
    std::size_t i = k;
    bool advanced = false;
    while (i > 0) {
      --i;
      if (t[i] + 1 < opts[i].size()) {
        ++t[i];
        std::fill(t.begin() + i + 1, t.end(), 0);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }
  return out;
}

Elem ProductCarrier::chain_member(const Elem& c, std::size_t n) const {
  std::vector<Elem> coords;
  for (std::size_t i = 0; i < fs_.size(); ++i)
    coords.push_back(c[i].tag == 0 ? fs_[i]->chain_member(c[i][0], n) : c[i][0]);
  return Elem(0, std::move(coords));
}

Judgement ProductCarrier::chain_down_contains(const Elem& c, const Elem& a) const {
  Judgement r = Judgement::sure(true);
  for (std::size_t i = 0; i < fs_.size() && r.value; ++i)
    r = r && (c[i].tag == 0 ? fs_[i]->chain_down_contains(c[i][0], a[i])
                            : Judgement::sure(fs_[i]->leq(a[i], c[i][0])));
  return r;
}

Judgement ProductCarrier::chain_below(const Elem& c, const Elem& b) const {
  Judgement r = Judgement::sure(true);
  for (std::size_t i = 0; i < fs_.size() && r.value; ++i)
    r = r && (c[i].tag == 0 ? fs_[i]->chain_below(c[i][0], b[i])
                            : Judgement::sure(fs_[i]->leq(c[i][0], b[i])));
  return r;
}

Judgement ProductCarrier::chain_included(const Elem& c, const Elem& d) const {
  Judgement r = Judgement::sure(true);
  for (std::size_t i = 0; i < fs_.size() && r.value; ++i) {
    const Elem &x = c[i], &y = d[i];
    const Carrier& f = *fs_[i];
    if (x.tag == 0 && y.tag == 0) r = r && f.chain_included(x[0], y[0]);
    else if (x.tag == 0) r = r && f.chain_below(x[0], y[0]);
    else if (y.tag == 0) r = r && f.chain_down_contains(y[0], x[0]);
    else r = r && Judgement::sure(f.leq(x[0], y[0]));
  }
  return r;
}

std::optional<Elem> ProductCarrier::chain_limit(const Elem& c) const {
  std::vector<Elem> coords;
  for (std::size_t i = 0; i < fs_.size(); ++i) {
    if (c[i].tag == 1) {
      coords.push_back(c[i][0]);
      continue;
    }
    auto s = fs_[i]->chain_limit(c[i][0]);
    if (!s) return std::nullopt;
    coords.push_back(*s);
  }
  return Elem(0, std::move(coords));
}

namespace ideal {

Elem principal(Elem a) { return Elem(0, {std::move(a)}); }
Elem generated(Elem chain) { return Elem(1, {std::move(chain)}); }
Elem finite_set(std::vector<Elem> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return Elem(2, std::move(members));
}

Kind kind_of(const Elem& i) {
  switch (i.tag) {
    case 0: return Kind::principal;
    case 1: return Kind::generated;
    case 2: return Kind::finite;
  }
  throw std::invalid_argument("not an ideal descriptor: " + to_string(i));
}

bool is_principal(const Elem& i) { return i.tag == 0; }
const Elem& point(const Elem& i) { return i[0]; }
const Elem& chain(const Elem& i) { return i[0]; }

}  // namespace ideal

Judgement ideal_member(const Carrier& c, const Elem& i, const Elem& a) {
  if (!c.contains(a)) throw std::domain_error("element outside the ambient carrier: " + to_string(a));
  switch (ideal::kind_of(i)) {
    case ideal::Kind::principal: return Judgement::sure(c.leq(a, i[0]));
    case ideal::Kind::generated: return c.chain_down_contains(i[0], a);
    case ideal::Kind::finite:
      return Judgement::sure(std::binary_search(i.parts.begin(), i.parts.end(), a));
  }
  return Judgement::sure(false);
}

Judgement ideal_subset(const Carrier& c, const Elem& i, const Elem& j) {
  switch (ideal::kind_of(i)) {
    case ideal::Kind::principal: return ideal_member(c, j, i[0]);
    case ideal::Kind::finite: {
      Judgement all = Judgement::sure(true);
      for (const auto& m : i.parts) {
        all = all && ideal_member(c, j, m);
        if (!all.value) break;
      }
      return all;
    }
    case ideal::Kind::generated:
      switch (ideal::kind_of(j)) {
        case ideal::Kind::principal: return c.chain_below(i[0], j[0]);
        case ideal::Kind::generated: return c.chain_included(i[0], j[0]);
        case ideal::Kind::finite:
          for (std::size_t n = 0; n < kChainProbe; ++n)
            if (!std::binary_search(j.parts.begin(), j.parts.end(), c.chain_member(i[0], n)))
              return Judgement::sure(false);
          return Judgement::sampled(true, kChainProbe);
      }
  }
  return Judgement::sure(false);
}

Judgement ideal_equal(const Carrier& c, const Elem& i, const Elem& j) {
  if (i == j) return Judgement::sure(true);
  Judgement a = ideal_subset(c, i, j);
  if (!a.value) return a;
  return a && ideal_subset(c, j, i);
}

std::string show_ideal(const Carrier& c, const Elem& i) {
  switch (ideal::kind_of(i)) {
    case ideal::Kind::principal: return "↓" + c.show(i[0]);
    case ideal::Kind::generated: return "↓" + c.show_chain(i[0]);
    case ideal::Kind::finite: {
      std::string s = "{";
      for (std::size_t k = 0; k < i.parts.size(); ++k) {
        if (k) s += ",";
        s += c.show(i.parts[k]);
      }
      return s + "}";
    }
  }
  return "?";
}

Elem normalize_ideal(const Carrier& c, const Elem& i) {
  switch (ideal::kind_of(i)) {
    case ideal::Kind::principal: return i;
    case ideal::Kind::finite:
      for (const auto& m : i.parts)
        if (std::all_of(i.parts.begin(), i.parts.end(), [&](const Elem& x) { return c.leq(x, m); }))
          return ideal::principal(m);
      return i;
    case ideal::Kind::generated: {
      auto lim = c.chain_limit(i[0]);
      if (lim) {
        auto in = c.chain_down_contains(i[0], *lim);
        if (in.value && in.exact) return ideal::principal(*lim);
      }
      return i;
    }
  }
  return i;
}

Report check_ideal(const Carrier& c, const Elem& i, std::size_t depth) {
  Report r("ideal " + show_ideal(c, i));
  switch (ideal::kind_of(i)) {
    case ideal::Kind::principal:
      if (!c.contains(i[0])) r.fail("carrier", "generator outside the carrier", to_json(i[0]));
      else r.pass("principal", "↓a is a directed lower set");
      return r;
    case ideal::Kind::finite: {
      if (i.parts.empty()) {
        r.fail("nonempty", "the empty set is not directed");
        return r;
      }
      auto pts = c.sample(depth);
      bool exhaustive = c.finite() && pts.size() < depth;
      for (const auto& m : i.parts)
        if (!c.contains(m)) {
          r.fail("carrier", "member outside the carrier", c.show(m));
          return r;
        }
      json cx;
      for (const auto& m : i.parts) {
        for (const auto& x : pts)
          if (c.leq(x, m) && !std::binary_search(i.parts.begin(), i.parts.end(), x)) {
            cx = {c.show(x), c.show(m)};
            break;
          }
        if (!cx.is_null()) break;
      }
      if (!cx.is_null()) r.fail("lower", "x <= m with m a member but x missing", cx);
      else if (exhaustive) r.pass("lower");
      else r.bounded("lower", pts.size());
      cx = nullptr;
      for (std::size_t a = 0; a < i.parts.size() && cx.is_null(); ++a)
        for (std::size_t b = a + 1; b < i.parts.size() && cx.is_null(); ++b) {
          bool ub = false;
          for (const auto& u : i.parts)
            if (c.leq(i.parts[a], u) && c.leq(i.parts[b], u)) ub = true;
          if (!ub) cx = {c.show(i.parts[a]), c.show(i.parts[b])};
        }
      r.expect("directed", cx.is_null(), cx.is_null() ? "" : "two members without an upper bound in the set", cx);
      return r;
    }
    case ideal::Kind::generated: {
      json cx;
      for (std::size_t n = 0; n + 1 < depth && cx.is_null(); ++n)
        if (!c.leq(c.chain_member(i[0], n), c.chain_member(i[0], n + 1))) cx = {n, n + 1};
      if (!cx.is_null()) r.fail("chain monotone", "chain(n) not <= chain(n+1)", cx);
      else r.bounded("chain monotone", depth);
      bool members = true;
      for (std::size_t n = 0; n < depth && members; ++n) {
        auto j = ideal_member(c, i, c.chain_member(i[0], n));
        if (!j.value) members = false;
      }
      r.expect("chain members belong", members);
      // Two sampled members: the witness upper bound is the later chain element.
      r.bounded("directed", depth, "witness chain(max(m,n)) bounds chain(m), chain(n)");
      return r;
    }
  }
  return r;
}

}  // namespace dspace
