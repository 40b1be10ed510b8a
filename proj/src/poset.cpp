#include "dspace/poset.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace dspace {

// ---------------------------------------------------------------- FinitePoset

FinitePoset::FinitePoset(std::vector<std::string> names, std::vector<std::uint8_t> leq)
    : names_(std::move(names)), leq_(std::move(leq)) {
  if (leq_.size() != names_.size() * names_.size())
    throw std::invalid_argument("order matrix size does not match element count");
}

FinitePoset FinitePoset::from_pairs(std::vector<std::string> names,
                                    const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  std::size_t n = names.size();
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) throw std::out_of_range("order pair refers to a missing element");
    m[a * n + b] = 1;
  }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (m[i * n + k])
        for (std::size_t j = 0; j < n; ++j)
          if (m[k * n + j]) m[i * n + j] = 1;
  return FinitePoset(std::move(names), std::move(m));
}

FinitePoset FinitePoset::chain(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    for (std::size_t j = i; j < n; ++j) m[i * n + j] = 1;
  }
  return FinitePoset(std::move(names), std::move(m));
}

FinitePoset FinitePoset::antichain(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::uint8_t> m(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(n <= 26 ? std::string(1, char('a' + i)) : "a" + std::to_string(i));
    m[i * n + i] = 1;
  }
  return FinitePoset(std::move(names), std::move(m));
}

std::optional<std::size_t> FinitePoset::index_of(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  return std::nullopt;
}

std::vector<std::pair<std::size_t, std::size_t>> FinitePoset::covers() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t n = size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j || !leq(i, j)) continue;
      bool direct = true;
      for (std::size_t k = 0; k < n && direct; ++k)
        if (k != i && k != j && leq(i, k) && leq(k, j)) direct = false;
      if (direct) out.emplace_back(i, j);
    }
  return out;
}

const char* theory_name(Theory t) {
  switch (t) {
    case Theory::lower: return "lower";
    case Theory::upper: return "upper";
    case Theory::convex: return "convex";
  }
  return "?";
}

Theory theory_from_name(const std::string& s) {
  if (s == "lower") return Theory::lower;
  if (s == "upper") return Theory::upper;
  if (s == "convex") return Theory::convex;
  throw std::invalid_argument("unknown theory: " + s);
}

// ---------------------------------------------------------------- Poset nodes

struct Poset::Node {
  PosetKind kind;
  std::vector<Poset> kids;
  FinitePoset table;  // explicit, chain, antichain
  Theory theory = Theory::lower;
  bool finite = false;
};

namespace {

constexpr std::int64_t kMaxDyadicExp = 60;

Elem dy(std::int64_t k, std::int64_t e) {
  while (e > 0 && k % 2 == 0) {
    k /= 2;
    --e;
  }
  if (k == 0) e = 0;
  return Elem(k, {Elem(e)});
}

bool dy_leq(const Elem& a, const Elem& b) {
  __int128 ka = a.tag, kb = b.tag;
  std::int64_t ea = a[0].tag, eb = b[0].tag;
  return (ka << eb) <= (kb << ea);
}

std::string dy_show(const Elem& a) {
  if (a[0].tag == 0) return std::to_string(a.tag);
  return std::to_string(a.tag) + "/" + std::to_string(std::int64_t{1} << a[0].tag);
}

Elem wrap(std::int64_t tag, Elem inner) { return Elem(tag, {std::move(inner)}); }

// Shell enumeration of tuples: all tuples with max coordinate m, for m = 0,1,...
// `sizes[i]` is the number of available coordinates for factor i (SIZE_MAX if unbounded).
template <class Emit>
void tuple_shell(const std::vector<std::size_t>& sizes, std::size_t m, Emit&& emit) {
  std::size_t k = sizes.size();
  std::vector<std::size_t> t(k, 0);
  std::vector<std::size_t> lim(k);
  for (std::size_t i = 0; i < k; ++i) lim[i] = std::min(m, sizes[i] - 1);
  for (;;) {
    bool hit = false;
    for (std::size_t i = 0; i < k; ++i)
      if (t[i] == m) hit = true;
    if (hit && !emit(t)) return;
    std::size_t i = k;
    while (i > 0) {
      --i;
      if (t[i] < lim[i]) {
        ++t[i];
        for (std::size_t j = i + 1; j < k; ++j) t[j] = 0;
        goto next;
      }
    }
    return;
  next:;
  }
}

bool normal_member_ok(const Poset& p, Theory t, const std::vector<Elem>& set, const Elem& x) {
  // Hereditary normality: lower/upper normal forms are antichains; convex normal forms
  // contain only elements that are maximal or minimal.
  if (t != Theory::convex) {
    for (const auto& y : set)
      if (p.leq(x, y) || p.leq(y, x)) return false;
    return true;
  }
  std::vector<Elem> all = set;
  all.push_back(x);
  for (const auto& a : all) {
    bool has_above = false, has_below = false;
    for (const auto& b : all) {
      if (a == b) continue;
      if (p.leq(a, b)) has_above = true;
      if (p.leq(b, a)) has_below = true;
    }
    if (has_above && has_below) return false;
  }
  return true;
}

}  // namespace

Poset Poset::explicit_finite(FinitePoset table) {
  auto n = std::make_shared<Node>();
  n->kind = PosetKind::explicit_finite;
  n->table = std::move(table);
  n->finite = true;
  return Poset(n);
}

Poset Poset::chain(std::size_t k) {
  if (k == 0) throw std::invalid_argument("chain needs n >= 1");
  auto n = std::make_shared<Node>();
  n->kind = PosetKind::chain;
  n->table = FinitePoset::chain(k);
  n->finite = true;
  return Poset(n);
}

Poset Poset::antichain(std::size_t k) {
  if (k == 0) throw std::invalid_argument("antichain needs n >= 1");
  auto n = std::make_shared<Node>();
  n->kind = PosetKind::antichain;
  n->table = FinitePoset::antichain(k);
  n->finite = true;
  return Poset(n);
}

Poset Poset::omega() {
  auto n = std::make_shared<Node>();
  n->kind = PosetKind::omega;
  return Poset(n);
}

Poset Poset::flat_nat() {
  auto n = std::make_shared<Node>();
  n->kind = PosetKind::flat_nat;
  return Poset(n);
}

Poset Poset::dyadic() {
  auto n = std::make_shared<Node>();
  n->kind = PosetKind::dyadic;
  return Poset(n);
}

Poset Poset::lift(Poset p) {
  auto n = std::make_shared<Node>();
  n->kind = PosetKind::lift;
  n->finite = p.finite();
  n->kids = {std::move(p)};
  return Poset(n);
}

Poset Poset::adjoin_top(Poset p) {
  auto n = std::make_shared<Node>();
  n->kind = PosetKind::adjoin_top;
  n->finite = p.finite();
  n->kids = {std::move(p)};
  return Poset(n);
}

Poset Poset::sum(Poset p, Poset q) {
  auto n = std::make_shared<Node>();
  n->kind = PosetKind::sum;
  n->finite = p.finite() && q.finite();
  n->kids = {std::move(p), std::move(q)};
  return Poset(n);
}

Poset Poset::product(std::vector<Poset> factors) {
  auto n = std::make_shared<Node>();
  n->kind = PosetKind::product;
  n->finite = std::all_of(factors.begin(), factors.end(), [](const Poset& f) { return f.finite(); });
  n->kids = std::move(factors);
  return Poset(n);
}

Poset Poset::powerbasis(Theory t, Poset p) {
  auto n = std::make_shared<Node>();
  n->kind = PosetKind::powerbasis;
  n->theory = t;
  n->finite = p.finite();
  n->kids = {std::move(p)};
  return Poset(n);
}

PosetKind Poset::kind() const { return node_->kind; }
const std::vector<Poset>& Poset::children() const { return node_->kids; }
const FinitePoset& Poset::table() const { return node_->table; }
std::size_t Poset::param() const { return node_->table.size(); }
Theory Poset::theory() const { return node_->theory; }
bool Poset::finite() const { return node_->finite; }

std::size_t Poset::size() const {
  if (!finite()) throw std::logic_error("size() of an infinite poset: " + describe());
  const auto& k = node_->kids;
  switch (kind()) {
    case PosetKind::explicit_finite:
    case PosetKind::chain:
    case PosetKind::antichain: return node_->table.size();
    case PosetKind::lift:
    case PosetKind::adjoin_top: return k[0].size() + 1;
    case PosetKind::sum: return k[0].size() + k[1].size();
    case PosetKind::product: {
      std::size_t s = 1;
      for (const auto& f : k) s *= f.size();
      return s;
    }
    case PosetKind::powerbasis: return prefix(SIZE_MAX).size();
    default: break;
  }
  throw std::logic_error("size() of an infinite poset");
}

std::vector<Elem> Poset::prefix(std::size_t n) const {
  std::vector<Elem> out;
  if (n == 0) return out;
  const auto& k = node_->kids;
  switch (kind()) {
    case PosetKind::explicit_finite:
    case PosetKind::chain:
    case PosetKind::antichain:
      for (std::size_t i = 0; i < node_->table.size() && out.size() < n; ++i)
        out.push_back(Elem(static_cast<std::int64_t>(i)));
      return out;
    case PosetKind::omega:
    case PosetKind::flat_nat:
      for (std::size_t i = 0; i < n; ++i) out.push_back(Elem(static_cast<std::int64_t>(i)));
      return out;
    case PosetKind::dyadic: {
      out.push_back(dy(0, 0));
      if (n > 1) out.push_back(dy(1, 0));
      for (std::int64_t e = 1; out.size() < n && e <= kMaxDyadicExp; ++e)
        for (std::int64_t j = 1; j < (std::int64_t{1} << e) && out.size() < n; j += 2)
          out.push_back(dy(j, e));
      return out;
    }
    case PosetKind::lift:
      out.push_back(Elem(0));
      for (auto& x : k[0].prefix(n - 1)) out.push_back(wrap(1, std::move(x)));
      return out;
    case PosetKind::adjoin_top:
      if (k[0].finite()) {
        for (auto& x : k[0].prefix(n)) out.push_back(wrap(0, std::move(x)));
        if (out.size() < n) out.push_back(Elem(1));
      } else {
        out.push_back(Elem(1));
        for (auto& x : k[0].prefix(n - 1)) out.push_back(wrap(0, std::move(x)));
      }
      return out;
    case PosetKind::sum: {
      if (k[0].finite() || k[1].finite()) {
        std::size_t first = k[0].finite() ? 0 : 1;
        for (auto& x : k[first].prefix(n)) out.push_back(wrap(first, std::move(x)));
        if (out.size() < n)
          for (auto& x : k[1 - first].prefix(n - out.size())) out.push_back(wrap(1 - first, std::move(x)));
        return out;
      }
      auto l = k[0].prefix((n + 1) / 2), r = k[1].prefix(n / 2);
      for (std::size_t i = 0; out.size() < n; ++i) {
        if (i < l.size()) out.push_back(wrap(0, l[i]));
        if (i < r.size() && out.size() < n) out.push_back(wrap(1, r[i]));
      }
      return out;
    }
    case PosetKind::product: {
      std::vector<std::function<std::vector<Elem>(std::size_t)>> pre;
      std::vector<bool> fin;
      for (const auto& f : k) {
        pre.push_back([&f](std::size_t m) { return f.prefix(m); });
        fin.push_back(f.finite());
      }
      return product_prefix(pre, fin, n);
    }
    case PosetKind::powerbasis: {
      const Poset& c = k[0];
      Theory t = theory();
      std::vector<Elem> pre;
      for (std::size_t m = 0; out.size() < n; ++m) {
        if (pre.size() <= m) {
          if (c.finite() && pre.size() == c.size()) break;
          pre = c.prefix(std::max<std::size_t>(m + 1, 2 * pre.size()));
          if (pre.size() <= m) break;
        }
        // Normal forms whose largest enumeration index is m.
        std::vector<Elem> cur{pre[m]};
        std::function<bool(std::size_t)> rec = [&](std::size_t below) -> bool {
          std::vector<Elem> sorted = cur;
          std::sort(sorted.begin(), sorted.end());
          out.push_back(Elem(0, std::move(sorted)));
          if (out.size() >= n) return false;
          for (std::size_t j = below; j-- > 0;) {
            if (!normal_member_ok(c, t, cur, pre[j])) continue;
            cur.push_back(pre[j]);
            bool go = rec(j);
            cur.pop_back();
            if (!go) return false;
          }
          return true;
        };
        if (!rec(m)) break;
      }
      return out;
    }
  }
  return out;
}

std::vector<Elem> Poset::elements() const {
  if (!finite()) throw std::logic_error("elements() of an infinite poset: " + describe());
  return prefix(SIZE_MAX);
}

bool Poset::contains(const Elem& e) const {
  const auto& k = node_->kids;
  switch (kind()) {
    case PosetKind::explicit_finite:
    case PosetKind::chain:
    case PosetKind::antichain:
      return e.parts.empty() && e.tag >= 0 && static_cast<std::size_t>(e.tag) < node_->table.size();
    case PosetKind::omega:
    case PosetKind::flat_nat: return e.parts.empty() && e.tag >= 0;
    case PosetKind::dyadic: {
      if (e.parts.size() != 1 || !e[0].parts.empty()) return false;
      std::int64_t ex = e[0].tag;
      if (ex < 0 || ex > kMaxDyadicExp || e.tag < 0) return false;
      if (e.tag > (std::int64_t{1} << ex)) return false;
      return dy(e.tag, ex) == e;
    }
    case PosetKind::lift:
      if (e.tag == 0) return e.parts.empty();
      return e.tag == 1 && e.parts.size() == 1 && k[0].contains(e[0]);
    case PosetKind::adjoin_top:
      if (e.tag == 1) return e.parts.empty();
      return e.tag == 0 && e.parts.size() == 1 && k[0].contains(e[0]);
    case PosetKind::sum:
      return (e.tag == 0 || e.tag == 1) && e.parts.size() == 1 && k[e.tag].contains(e[0]);
    case PosetKind::product:
      if (e.tag != 0 || e.parts.size() != k.size()) return false;
      for (std::size_t i = 0; i < k.size(); ++i)
        if (!k[i].contains(e[i])) return false;
      return true;
    case PosetKind::powerbasis: {
      if (e.tag != 0 || e.parts.empty()) return false;
      for (const auto& x : e.parts)
        if (!k[0].contains(x)) return false;
      if (!std::is_sorted(e.parts.begin(), e.parts.end())) return false;
      return k[0].set_normal_form(theory(), e.parts) == e.parts;
    }
  }
  return false;
}

bool Poset::leq(const Elem& a, const Elem& b) const {
  const auto& k = node_->kids;
  switch (kind()) {
    case PosetKind::explicit_finite:
    case PosetKind::chain:
    case PosetKind::antichain:
      return node_->table.leq(static_cast<std::size_t>(a.tag), static_cast<std::size_t>(b.tag));
    case PosetKind::omega: return a.tag <= b.tag;
    case PosetKind::flat_nat: return a.tag == b.tag;
    case PosetKind::dyadic: return dy_leq(a, b);
    case PosetKind::lift:
      if (a.tag == 0) return true;
      if (b.tag == 0) return false;
      return k[0].leq(a[0], b[0]);
    case PosetKind::adjoin_top:
      if (b.tag == 1) return true;
      if (a.tag == 1) return false;
      return k[0].leq(a[0], b[0]);
    case PosetKind::sum: return a.tag == b.tag && k[a.tag].leq(a[0], b[0]);
    case PosetKind::product:
      for (std::size_t i = 0; i < k.size(); ++i)
        if (!k[i].leq(a[i], b[i])) return false;
      return true;
    case PosetKind::powerbasis: return k[0].set_leq(theory(), a.parts, b.parts);
  }
  return false;
}

bool Poset::set_leq(Theory t, const std::vector<Elem>& f, const std::vector<Elem>& g) const {
  auto hoare = [&] {
    for (const auto& x : f) {
      bool ok = false;
      for (const auto& y : g)
        if (leq(x, y)) { ok = true; break; }
      if (!ok) return false;
    }
    return true;
  };
  auto smyth = [&] {
    for (const auto& y : g) {
      bool ok = false;
      for (const auto& x : f)
        if (leq(x, y)) { ok = true; break; }
      if (!ok) return false;
    }
    return true;
  };
  switch (t) {
    case Theory::lower: return hoare();
    case Theory::upper: return smyth();
    case Theory::convex: return hoare() && smyth();
  }
  return false;
}

std::vector<Elem> Poset::set_normal_form(Theory t, std::vector<Elem> members) const {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  std::vector<Elem> out;
  for (const auto& a : members) {
    bool maximal = true, minimal = true;
    for (const auto& b : members) {
      if (a == b) continue;
      if (leq(a, b)) maximal = false;
      if (leq(b, a)) minimal = false;
    }
    bool keep = t == Theory::lower ? maximal : t == Theory::upper ? minimal : (maximal || minimal);
    if (keep) out.push_back(a);
  }
  return out;
}

namespace {

std::string top_name(const Poset& p) {
  std::string s = "⊤";
  for (const Poset* c = &p.children()[0]; c->kind() == PosetKind::adjoin_top; c = &c->children()[0])
    s += "'";
  return s;
}

}  // namespace

std::string Poset::show(const Elem& e) const {
  const auto& k = node_->kids;
  switch (kind()) {
    case PosetKind::explicit_finite:
    case PosetKind::chain:
    case PosetKind::antichain: return node_->table.name(static_cast<std::size_t>(e.tag));
    case PosetKind::omega:
    case PosetKind::flat_nat: return std::to_string(e.tag);
    case PosetKind::dyadic: return dy_show(e);
    case PosetKind::lift: return e.tag == 0 ? "⊥" : k[0].show(e[0]);
    case PosetKind::adjoin_top: return e.tag == 1 ? top_name(*this) : k[0].show(e[0]);
    case PosetKind::sum: return (e.tag == 0 ? "inl(" : "inr(") + k[e.tag].show(e[0]) + ")";
    case PosetKind::product: {
      std::string s = "(";
      for (std::size_t i = 0; i < k.size(); ++i) {
        if (i) s += ",";
        s += k[i].show(e[i]);
      }
      return s + ")";
    }
    case PosetKind::powerbasis: {
      std::string s = "{";
      for (std::size_t i = 0; i < e.parts.size(); ++i) {
        if (i) s += ",";
        s += k[0].show(e.parts[i]);
      }
      return s + "}";
    }
  }
  return "?";
}

Elem Poset::parse(const std::string& text, std::size_t search) const {
  if (!text.empty() && text[0] == '#') {
    Elem e = elem_from_string(text.substr(1));
    if (!contains(e)) throw std::domain_error("element " + text + " is not in " + describe());
    return e;
  }
  for (auto& e : prefix(search))
    if (show(e) == text) return e;
  throw std::domain_error("no element shown as '" + text + "' among the first " +
                          std::to_string(search) + " elements of " + describe());
}

std::string Poset::describe() const {
  const auto& k = node_->kids;
  switch (kind()) {
    case PosetKind::explicit_finite: {
      const auto& t = node_->table;
      std::string s = "explicit{";
      for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += t.name(i);
      }
      s += "|";
      bool first = true;
      for (auto [a, b] : t.covers()) {
        if (!first) s += ",";
        first = false;
        s += t.name(a) + "<" + t.name(b);
      }
      return s + "}";
    }
    case PosetKind::chain: return "chain(" + std::to_string(param()) + ")";
    case PosetKind::antichain: return "antichain(" + std::to_string(param()) + ")";
    case PosetKind::omega: return "omega";
    case PosetKind::flat_nat: return "flat_nat";
    case PosetKind::dyadic: return "dyadic";
    case PosetKind::lift: return "lift(" + k[0].describe() + ")";
    case PosetKind::adjoin_top: return "adjoin_top(" + k[0].describe() + ")";
    case PosetKind::sum: return "sum(" + k[0].describe() + "," + k[1].describe() + ")";
    case PosetKind::product: {
      std::string s = "product(";
      for (std::size_t i = 0; i < k.size(); ++i) {
        if (i) s += ",";
        s += k[i].describe();
      }
      return s + ")";
    }
    case PosetKind::powerbasis:
      return std::string("powerbasis(") + theory_name(theory()) + "," + k[0].describe() + ")";
  }
  return "?";
}

json Poset::to_json() const {
  const auto& k = node_->kids;
  switch (kind()) {
    case PosetKind::explicit_finite: {
      const auto& t = node_->table;
      json j = {{"kind", "explicit"}, {"elements", t.names()}, {"leq", json::array()}};
      for (auto [a, b] : t.covers()) j["leq"].push_back({t.name(a), t.name(b)});
      return j;
    }
    case PosetKind::chain: return {{"kind", "chain"}, {"n", param()}};
    case PosetKind::antichain: return {{"kind", "antichain"}, {"n", param()}};
    case PosetKind::omega: return {{"kind", "omega"}};
    case PosetKind::flat_nat: return {{"kind", "flat_nat"}};
    case PosetKind::dyadic: return {{"kind", "dyadic"}};
    case PosetKind::lift: return {{"kind", "lift"}, {"of", k[0].to_json()}};
    case PosetKind::adjoin_top: return {{"kind", "adjoin_top"}, {"of", k[0].to_json()}};
    case PosetKind::sum: return {{"kind", "sum"}, {"left", k[0].to_json()}, {"right", k[1].to_json()}};
    case PosetKind::product: {
      json f = json::array();
      for (const auto& x : k) f.push_back(x.to_json());
      return {{"kind", "product"}, {"factors", f}};
    }
    case PosetKind::powerbasis:
      return {{"kind", "powerbasis"}, {"theory", theory_name(theory())}, {"of", k[0].to_json()}};
  }
  return nullptr;
}

namespace {

void only_fields(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* a : allowed)
      if (it.key() == a) ok = true;
    if (!ok) throw std::invalid_argument(where + ": unknown field '" + it.key() + "'");
  }
}

std::size_t count_field(const json& j, const std::string& where) {
  if (!j.contains("n") || !j["n"].is_number_integer() || j["n"].get<std::int64_t>() <= 0)
    throw std::invalid_argument(where + ": field 'n' must be a positive integer");
  return j["n"].get<std::size_t>();
}

Poset poset_from_json_at(const json& j, const std::string& where) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw std::invalid_argument(where + ": poset node needs a string 'kind'");
  std::string kind = j["kind"];
  std::string here = where + "(" + kind + ")";
  auto child = [&](const char* f) {
    if (!j.contains(f)) throw std::invalid_argument(here + ": missing field '" + f + "'");
    return poset_from_json_at(j[f], here + "." + f);
  };
  if (kind == "explicit") {
    only_fields(j, {"kind", "elements", "leq"}, here);
    if (!j.contains("elements") || !j["elements"].is_array() || j["elements"].empty())
      throw std::invalid_argument(here + ": 'elements' must be a non-empty array of names");
    std::vector<std::string> names = j["elements"].get<std::vector<std::string>>();
    std::set<std::string> uniq(names.begin(), names.end());
    if (uniq.size() != names.size()) throw std::invalid_argument(here + ": duplicate element names");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (const auto& p : j.value("leq", json::array())) {
      if (!p.is_array() || p.size() != 2) throw std::invalid_argument(here + ".leq: pairs must be [a, b]");
      auto idx = [&](const json& n) {
        auto it = std::find(names.begin(), names.end(), n.get<std::string>());
        if (it == names.end()) throw std::invalid_argument(here + ".leq: unknown element " + n.dump());
        return static_cast<std::size_t>(it - names.begin());
      };
      pairs.emplace_back(idx(p[0]), idx(p[1]));
    }
    FinitePoset t = FinitePoset::from_pairs(names, pairs);
    Report r = check_partial_order(t);
    if (!r.ok()) throw std::invalid_argument(here + ": not a partial order (" + r.first_failure()->detail + ")");
    return Poset::explicit_finite(std::move(t));
  }
  if (kind == "chain") {
    only_fields(j, {"kind", "n"}, here);
    return Poset::chain(count_field(j, here));
  }
  if (kind == "antichain") {
    only_fields(j, {"kind", "n"}, here);
    return Poset::antichain(count_field(j, here));
  }
  if (kind == "omega") {
    only_fields(j, {"kind"}, here);
    return Poset::omega();
  }
  if (kind == "omega_plus") {
    only_fields(j, {"kind", "n"}, here);
    Poset p = Poset::omega();
    for (std::size_t i = 0, n = count_field(j, here); i < n; ++i) p = Poset::adjoin_top(p);
    return p;
  }
  if (kind == "flat_nat") {
    only_fields(j, {"kind"}, here);
    return Poset::flat_nat();
  }
  if (kind == "flat_nat_top") {
    only_fields(j, {"kind"}, here);
    return Poset::adjoin_top(Poset::flat_nat());
  }
  if (kind == "dyadic") {
    only_fields(j, {"kind"}, here);
    return Poset::dyadic();
  }
  if (kind == "lift") {
    only_fields(j, {"kind", "of"}, here);
    return Poset::lift(child("of"));
  }
  if (kind == "adjoin_top") {
    only_fields(j, {"kind", "of"}, here);
    return Poset::adjoin_top(child("of"));
  }
  if (kind == "sum") {
    only_fields(j, {"kind", "left", "right"}, here);
    return Poset::sum(child("left"), child("right"));
  }
  if (kind == "product") {
    only_fields(j, {"kind", "factors"}, here);
    if (!j.contains("factors") || !j["factors"].is_array())
      throw std::invalid_argument(here + ": 'factors' must be an array");
    std::vector<Poset> fs;
    for (std::size_t i = 0; i < j["factors"].size(); ++i)
      fs.push_back(poset_from_json_at(j["factors"][i], here + ".factors[" + std::to_string(i) + "]"));
    return Poset::product(std::move(fs));
  }
  if (kind == "powerbasis") {
    only_fields(j, {"kind", "theory", "of"}, here);
    if (!j.contains("theory") || !j["theory"].is_string())
      throw std::invalid_argument(here + ": missing string 'theory'");
    return Poset::powerbasis(theory_from_name(j["theory"]), child("of"));
  }
  throw std::invalid_argument(where + ": unknown poset kind '" + kind + "'");
}

}  // namespace

Poset Poset::from_json(const json& j) { return poset_from_json_at(j, "poset"); }

// ---------------------------------------------------------------- chains

std::vector<Elem> Poset::chains(std::size_t bound) const {
  std::vector<Elem> out;
  const auto& k = node_->kids;
  switch (kind()) {
    case PosetKind::omega:
      out = {Elem(0), Elem(1)};
      break;
    case PosetKind::dyadic:
      for (auto& x : prefix(bound))
        if (x.tag != 0) out.push_back(wrap(0, x));
      break;
    case PosetKind::lift:
    case PosetKind::adjoin_top:
      for (auto& c : k[0].chains(bound)) out.push_back(wrap(0, c));
      break;
    case PosetKind::sum:
      for (std::int64_t s = 0; s < 2; ++s)
        for (auto& c : k[s].chains(bound)) out.push_back(Elem(s, {c}));
      break;
    case PosetKind::product: {
      std::size_t r = std::max<std::size_t>(2, bound / 8);
      std::vector<std::vector<Elem>> opts(k.size());
      std::vector<std::size_t> nchains(k.size());
      for (std::size_t i = 0; i < k.size(); ++i) {
        auto cs = k[i].chains(bound);
        if (cs.size() > 2) cs.resize(2);
        nchains[i] = cs.size();
        for (auto& c : cs) opts[i].push_back(wrap(0, c));
        for (auto& x : k[i].prefix(r)) opts[i].push_back(wrap(1, x));
      }
      std::vector<std::size_t> t(k.size(), 0);
      if (k.empty()) break;
      for (;;) {
        bool has_chain = false;
        std::vector<Elem> coords;
        for (std::size_t i = 0; i < k.size(); ++i) {
          if (t[i] < nchains[i]) has_chain = true;
          coords.push_back(opts[i][t[i]]);
        }
        if (has_chain) out.push_back(Elem(0, std::move(coords)));
        std::size_t i = k.size();
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
      break;
    }
    case PosetKind::powerbasis: {
      auto cs = k[0].chains(bound);
      if (cs.size() > 2) cs.resize(2);
      std::size_t r = std::max<std::size_t>(2, bound / 8);
      auto consts = k[0].prefix(r);
      for (auto& c : cs) out.push_back(Elem(0, {wrap(0, c)}));
      for (auto& c : cs)
        for (auto& x : consts) out.push_back(Elem(0, {wrap(0, c), wrap(1, x)}));
      for (std::size_t i = 0; i < cs.size(); ++i)
        for (std::size_t j = i + 1; j < cs.size(); ++j)
          out.push_back(Elem(0, {wrap(0, cs[i]), wrap(0, cs[j])}));
      break;
    }
    default:
      break;
  }
  return out;
}

bool Poset::valid_chain(const Elem& c) const {
  const auto& k = node_->kids;
  auto coord_ok = [&](const Poset& p, const Elem& co, bool& has_chain) {
    if (co.parts.size() != 1) return false;
    if (co.tag == 0) {
      has_chain = true;
      return p.valid_chain(co[0]);
    }
    return co.tag == 1 && p.contains(co[0]);
  };
  switch (kind()) {
    case PosetKind::omega: return c.parts.empty() && c.tag >= 0;
    case PosetKind::dyadic: return c.tag == 0 && c.parts.size() == 1 && contains(c[0]) && c[0].tag != 0;
    case PosetKind::lift:
    case PosetKind::adjoin_top: return c.tag == 0 && c.parts.size() == 1 && k[0].valid_chain(c[0]);
    case PosetKind::sum: return (c.tag == 0 || c.tag == 1) && c.parts.size() == 1 && k[c.tag].valid_chain(c[0]);
    case PosetKind::product: {
      if (c.tag != 0 || c.parts.size() != k.size()) return false;
      bool has_chain = false;
      for (std::size_t i = 0; i < k.size(); ++i)
        if (!coord_ok(k[i], c[i], has_chain)) return false;
      return has_chain;
    }
    case PosetKind::powerbasis: {
      if (c.tag != 0 || c.parts.empty()) return false;
      bool has_chain = false;
      for (const auto& co : c.parts)
        if (!coord_ok(k[0], co, has_chain)) return false;
      return has_chain;
    }
    default: return false;
  }
}

namespace {

// Coordinate helpers for product and powerbasis chain descriptors.
Elem coord_member(const Poset& p, const Elem& co, std::size_t n) {
  return co.tag == 0 ? p.chain_member(co[0], n) : co[0];
}

bool coord_down_contains(const Poset& p, const Elem& co, const Elem& a) {
  return co.tag == 0 ? p.chain_down_contains(co[0], a) : p.leq(a, co[0]);
}

bool coord_below(const Poset& p, const Elem& co, const Elem& b) {
  return co.tag == 0 ? p.chain_below(co[0], b) : p.leq(co[0], b);
}

std::optional<bool> coord_included(const Poset& p, const Elem& c, const Elem& d) {
  if (c.tag == 0 && d.tag == 0) return p.chain_included(c[0], d[0]);
  if (c.tag == 0) return p.chain_below(c[0], d[0]);
  if (d.tag == 0) return p.chain_down_contains(d[0], c[0]);
  return p.leq(c[0], d[0]);
}

std::optional<Elem> coord_sup(const Poset& p, const Elem& co) {
  return co.tag == 0 ? p.chain_sup(co[0]) : std::optional<Elem>(co[0]);
}

}  // namespace

Elem Poset::chain_member(const Elem& c, std::size_t n) const {
  const auto& k = node_->kids;
  switch (kind()) {
    case PosetKind::omega: return Elem(c.tag + static_cast<std::int64_t>(n));
    case PosetKind::dyadic: {
      const Elem& x = c[0];
      std::int64_t e = x[0].tag;
      std::int64_t s = std::min<std::int64_t>(static_cast<std::int64_t>(n), kMaxDyadicExp - e);
      return dy((x.tag << s) - 1, e + s);
    }
    case PosetKind::lift: return wrap(1, k[0].chain_member(c[0], n));
    case PosetKind::adjoin_top: return wrap(0, k[0].chain_member(c[0], n));
    case PosetKind::sum: return wrap(c.tag, k[c.tag].chain_member(c[0], n));
    case PosetKind::product: {
      std::vector<Elem> coords;
      for (std::size_t i = 0; i < k.size(); ++i) coords.push_back(coord_member(k[i], c[i], n));
      return Elem(0, std::move(coords));
    }
    case PosetKind::powerbasis: {
      std::vector<Elem> all;
      for (const auto& co : c.parts) all.push_back(coord_member(k[0], co, n));
      return Elem(0, k[0].set_normal_form(theory(), std::move(all)));
    }
    default: throw std::logic_error("chain_member on a poset without chains: " + describe());
  }
}

bool Poset::chain_down_contains(const Elem& c, const Elem& a) const {
  const auto& k = node_->kids;
  switch (kind()) {
    case PosetKind::omega: return true;
    case PosetKind::dyadic: return dy_leq(a, c[0]) && !(a == c[0]);
    case PosetKind::lift: return a.tag == 0 || k[0].chain_down_contains(c[0], a[0]);
    case PosetKind::adjoin_top: return a.tag == 0 && k[0].chain_down_contains(c[0], a[0]);
    case PosetKind::sum: return a.tag == c.tag && k[c.tag].chain_down_contains(c[0], a[0]);
    case PosetKind::product:
      for (std::size_t i = 0; i < k.size(); ++i)
        if (!coord_down_contains(k[i], c[i], a[i])) return false;
      return true;
    case PosetKind::powerbasis: {
      const Poset& p = k[0];
      auto hoare = [&] {
        for (const auto& f : a.parts) {
          bool ok = false;
          for (const auto& co : c.parts)
            if (coord_down_contains(p, co, f)) { ok = true; break; }
          if (!ok) return false;
        }
        return true;
      };
      auto smyth = [&] {
        for (const auto& co : c.parts) {
          bool ok = false;
          for (const auto& f : a.parts)
            if (coord_down_contains(p, co, f)) { ok = true; break; }
          if (!ok) return false;
        }
        return true;
      };
      Theory t = theory();
      return (t == Theory::upper || hoare()) && (t == Theory::lower || smyth());
    }
    default: throw std::logic_error("chain query on a poset without chains: " + describe());
  }
}

bool Poset::chain_below(const Elem& c, const Elem& b) const {
  const auto& k = node_->kids;
  switch (kind()) {
    case PosetKind::omega: return false;
    case PosetKind::dyadic: return dy_leq(c[0], b);
    case PosetKind::lift: return b.tag == 1 && k[0].chain_below(c[0], b[0]);
    case PosetKind::adjoin_top: return b.tag == 1 || k[0].chain_below(c[0], b[0]);
    case PosetKind::sum: return b.tag == c.tag && k[c.tag].chain_below(c[0], b[0]);
    case PosetKind::product:
      for (std::size_t i = 0; i < k.size(); ++i)
        if (!coord_below(k[i], c[i], b[i])) return false;
      return true;
    case PosetKind::powerbasis: {
      const Poset& p = k[0];
      auto hoare = [&] {
        for (const auto& co : c.parts) {
          bool ok = false;
          for (const auto& g : b.parts)
            if (coord_below(p, co, g)) { ok = true; break; }
          if (!ok) return false;
        }
        return true;
      };
      auto smyth = [&] {
        for (const auto& g : b.parts) {
          bool ok = false;
          for (const auto& co : c.parts)
            if (coord_below(p, co, g)) { ok = true; break; }
          if (!ok) return false;
        }
        return true;
      };
      Theory t = theory();
      return (t == Theory::upper || hoare()) && (t == Theory::lower || smyth());
    }
    default: throw std::logic_error("chain query on a poset without chains: " + describe());
  }
}

std::optional<bool> Poset::chain_included(const Elem& c, const Elem& d) const {
  const auto& k = node_->kids;
  switch (kind()) {
    case PosetKind::omega: return true;
    case PosetKind::dyadic: return dy_leq(c[0], d[0]);
    case PosetKind::lift:
    case PosetKind::adjoin_top: return k[0].chain_included(c[0], d[0]);
    case PosetKind::sum:
      if (c.tag != d.tag) return false;
      return k[c.tag].chain_included(c[0], d[0]);
    case PosetKind::product: {
      bool all = true;
      for (std::size_t i = 0; i < k.size(); ++i) {
        auto r = coord_included(k[i], c[i], d[i]);
        if (!r) return std::nullopt;
        all = all && *r;
      }
      return all;
    }
    case PosetKind::powerbasis: {
      // lower: every c-component fits under one d-component; upper: every
      // d-component is reached by one c-component; convex: both.
      const Poset& p = k[0];
      bool undecided = false;
      auto hoare = [&] {
        for (const auto& x : c.parts) {
          bool ok = false;
          for (const auto& y : d.parts) {
            auto r = coord_included(p, x, y);
            if (!r) undecided = true;
            if (r.value_or(false)) { ok = true; break; }
          }
          if (!ok) return false;
        }
        return true;
      };
      auto smyth = [&] {
        for (const auto& y : d.parts) {
          bool ok = false;
          for (const auto& x : c.parts) {
            auto r = coord_included(p, x, y);
            if (!r) undecided = true;
            if (r.value_or(false)) { ok = true; break; }
          }
          if (!ok) return false;
        }
        return true;
      };
      Theory t = theory();
      bool v = (t == Theory::upper || hoare()) && (t == Theory::lower || smyth());
      if (undecided) return std::nullopt;
      return v;
    }
    default: throw std::logic_error("chain query on a poset without chains: " + describe());
  }
}

std::optional<Elem> Poset::chain_sup(const Elem& c) const {
  const auto& k = node_->kids;
  switch (kind()) {
    case PosetKind::omega: return std::nullopt;
    case PosetKind::dyadic: return c[0];
    case PosetKind::lift: {
      auto s = k[0].chain_sup(c[0]);
      if (!s) return std::nullopt;
      return wrap(1, *s);
    }
    case PosetKind::adjoin_top: {
      auto s = k[0].chain_sup(c[0]);
      if (!s) return Elem(1);
      return wrap(0, *s);
    }
    case PosetKind::sum: {
      auto s = k[c.tag].chain_sup(c[0]);
      if (!s) return std::nullopt;
      return wrap(c.tag, *s);
    }
    case PosetKind::product: {
      std::vector<Elem> coords;
      for (std::size_t i = 0; i < k.size(); ++i) {
        auto s = coord_sup(k[i], c[i]);
        if (!s) return std::nullopt;
        coords.push_back(*s);
      }
      return Elem(0, std::move(coords));
    }
    case PosetKind::powerbasis: {
      std::vector<Elem> sups;
      for (const auto& co : c.parts) {
        auto s = coord_sup(k[0], co);
        if (!s) return std::nullopt;
        sups.push_back(*s);
      }
      return Elem(0, k[0].set_normal_form(theory(), std::move(sups)));
    }
    default: return std::nullopt;
  }
}

bool Poset::has_unbounded_chain() const {
  for (const auto& c : chains(8))
    if (!chain_sup(c)) return true;
  return false;
}

bool Poset::scott_supported() const {
  const auto& k = node_->kids;
  switch (kind()) {
    case PosetKind::dyadic: return false;
    case PosetKind::adjoin_top:
      if ((k[0].kind() == PosetKind::sum || k[0].kind() == PosetKind::product) && k[0].has_unbounded_chain())
        return false;
      return k[0].scott_supported();
    default:
      for (const auto& c : k)
        if (!c.scott_supported()) return false;
      return true;
  }
}

bool Poset::scott_compact(const Elem& x) const {
  const auto& k = node_->kids;
  switch (kind()) {
    case PosetKind::dyadic: return x.tag == 0;
    case PosetKind::lift: return x.tag == 0 || k[0].scott_compact(x[0]);
    case PosetKind::adjoin_top: return x.tag == 1 ? !k[0].has_unbounded_chain() : k[0].scott_compact(x[0]);
    case PosetKind::sum: return k[x.tag].scott_compact(x[0]);
    case PosetKind::product:
      for (std::size_t i = 0; i < k.size(); ++i)
        if (!k[i].scott_compact(x[i])) return false;
      return true;
    case PosetKind::powerbasis:
      for (const auto& m : x.parts)
        if (!k[0].scott_compact(m)) return false;
      return true;
    default: return true;
  }
}

// ---------------------------------------------------------------- maps and checks

MonotoneMap MonotoneMap::table(Poset dom, Poset cod, std::vector<Elem> images, std::string name) {
  auto elems = dom.elements();
  if (elems.size() != images.size()) throw std::invalid_argument("map table size does not match domain");
  auto tab = std::make_shared<std::map<Elem, Elem>>();
  for (std::size_t i = 0; i < elems.size(); ++i) (*tab)[elems[i]] = images[i];
  auto rule = [tab](const Elem& x) {
    auto it = tab->find(x);
    if (it == tab->end()) throw std::domain_error("map applied outside its domain: " + to_string(x));
    return it->second;
  };
  return MonotoneMap{std::move(dom), std::move(cod), rule, std::move(name)};
}

MonotoneMap MonotoneMap::identity(Poset p) {
  return MonotoneMap{p, p, [](const Elem& x) { return x; }, "id"};
}

namespace {

template <class Leq, class Show>
void order_laws(Report& r, std::size_t n, Leq leq, Show show, bool exhaustive, std::size_t bound) {
  auto verdict = [&](const char* name, bool ok, std::string detail, json cx) {
    if (!ok) r.fail(name, std::move(detail), std::move(cx));
    else if (exhaustive) r.pass(name);
    else r.bounded(name, bound);
  };
  bool ok = true;
  json cx;
  for (std::size_t i = 0; i < n && ok; ++i)
    if (!leq(i, i)) {
      ok = false;
      cx = {show(i)};
    }
  verdict("reflexive", ok, ok ? "" : "x <= x fails", cx);
  ok = true;
  for (std::size_t i = 0; i < n && ok; ++i)
    for (std::size_t j = i + 1; j < n && ok; ++j)
      if (leq(i, j) && leq(j, i)) {
        ok = false;
        cx = {show(i), show(j)};
      }
  verdict("antisymmetric", ok, ok ? "" : "a <= b and b <= a with a != b", cx);
  ok = true;
  for (std::size_t i = 0; i < n && ok; ++i)
    for (std::size_t j = 0; j < n && ok; ++j) {
      if (!leq(i, j)) continue;
      for (std::size_t k = 0; k < n && ok; ++k)
        if (leq(j, k) && !leq(i, k)) {
          ok = false;
          cx = {show(i), show(j), show(k)};
        }
    }
  verdict("transitive", ok, ok ? "" : "a <= b <= c but not a <= c", cx);
}

}  // namespace

Report check_partial_order(const Poset& p, std::size_t depth) {
  if (depth == 0) throw std::invalid_argument("depth must be >= 1");
  Report r("partial order " + p.describe());
  auto elems = p.prefix(depth);
  bool exhaustive = p.finite() && depth >= p.size();
  std::set<Elem> seen;
  json dup;
  for (const auto& e : elems) {
    if (!seen.insert(e).second && dup.is_null()) dup = p.show(e);
  }
  if (!dup.is_null()) r.fail("enumeration injective", "element enumerated twice", dup);
  else if (exhaustive) r.pass("enumeration injective");
  else r.bounded("enumeration injective", elems.size());
  if (p.finite() && exhaustive && elems.size() != p.size())
    r.fail("enumeration size", "finite enumeration does not match size");
  order_laws(
      r, elems.size(), [&](std::size_t i, std::size_t j) { return p.leq(elems[i], elems[j]); },
      [&](std::size_t i) { return p.show(elems[i]); }, exhaustive, elems.size());
  return r;
}

Report check_partial_order(const FinitePoset& t) {
  Report r("partial order (table)");
  order_laws(
      r, t.size(), [&](std::size_t i, std::size_t j) { return t.leq(i, j); },
      [&](std::size_t i) { return t.name(i); }, true, t.size());
  return r;
}

Report is_monotone(const MonotoneMap& f, std::size_t depth) {
  if (depth == 0) throw std::invalid_argument("depth must be >= 1");
  Report r("monotone " + (f.name.empty() ? std::string("map") : f.name));
  auto elems = f.dom.prefix(depth);
  bool exhaustive = f.dom.finite() && depth >= f.dom.size();
  std::vector<Elem> img;
  for (const auto& x : elems) {
    img.push_back(f(x));
    if (!f.cod.contains(img.back())) {
      r.fail("codomain", "image outside the codomain", {f.dom.show(x)});
      return r;
    }
  }
  for (std::size_t i = 0; i < elems.size(); ++i)
    for (std::size_t j = 0; j < elems.size(); ++j)
      if (f.dom.leq(elems[i], elems[j]) && !f.cod.leq(img[i], img[j])) {
        r.fail("monotone", "x <= y but f(x) not <= f(y)", {f.dom.show(elems[i]), f.dom.show(elems[j])});
        return r;
      }
  if (exhaustive) r.pass("monotone");
  else r.bounded("monotone", elems.size());
  return r;
}

std::vector<Elem> product_prefix(const std::vector<std::function<std::vector<Elem>(std::size_t)>>& prefixes,
                                 const std::vector<bool>& finite, std::size_t n) {
  std::vector<Elem> out;
  std::size_t k = prefixes.size();
  if (n == 0) return out;
  if (k == 0) {
    out.push_back(Elem(0, {}));
    return out;
  }
  std::vector<std::vector<Elem>> pre(k);
  std::vector<bool> exhausted(k, false);
  std::vector<std::size_t> sizes(k);
  for (std::size_t m = 0; out.size() < n; ++m) {
    bool any = false;
    for (std::size_t i = 0; i < k; ++i) {
      if (pre[i].size() <= m && !exhausted[i]) {
        std::size_t want = std::max<std::size_t>(m + 1, 2 * pre[i].size());
        pre[i] = prefixes[i](want);
        if (finite[i] && pre[i].size() < want) exhausted[i] = true;
      }
      sizes[i] = pre[i].size();
      if (sizes[i] > m) any = true;
    }
    if (!any) break;
    tuple_shell(sizes, m, [&](const std::vector<std::size_t>& t) {
      std::vector<Elem> coords;
      for (std::size_t i = 0; i < t.size(); ++i) coords.push_back(pre[i][t[i]]);
      out.push_back(Elem(0, std::move(coords)));
      return out.size() < n;
    });
  }
  return out;
}

std::vector<std::vector<std::size_t>> monotone_maps(const FinitePoset& a, const FinitePoset& b) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> m(a.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == a.size()) {
      out.push_back(m);
      return;
    }
    for (std::size_t v = 0; v < b.size(); ++v) {
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j) {
        if (a.leq(j, i) && !b.leq(m[j], v)) ok = false;
        if (a.leq(i, j) && !b.leq(v, m[j])) ok = false;
      }
      if (!ok) continue;
      m[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

}  // namespace dspace
