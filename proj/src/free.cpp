#include "dspace/free.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "dspace/corpus.hpp"

namespace dspace {

// ---------------------------------------------------------------- signatures and terms

std::optional<std::size_t> Signature::find(const std::string& symbol) const {
  for (std::size_t i = 0; i < ops.size(); ++i)
    if (ops[i].symbol == symbol) return i;
  return std::nullopt;
}

Signature Signature::from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("signature: expected an array of {symbol, arity}");
  Signature s;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const json& o = j[i];
    std::string at = "signature[" + std::to_string(i) + "]";
    if (!o.is_object() || !o.contains("symbol") || !o.contains("arity") || !o["symbol"].is_string() ||
        !o["arity"].is_number_unsigned())
      throw std::invalid_argument(at + ": expected {\"symbol\": string, \"arity\": n}");
    for (auto it = o.begin(); it != o.end(); ++it)
      if (it.key() != "symbol" && it.key() != "arity") throw std::invalid_argument(at + ": unknown field " + it.key());
    OpSymbol op{o["symbol"].get<std::string>(), o["arity"].get<std::size_t>()};
    if (op.symbol.empty() || s.find(op.symbol)) throw std::invalid_argument(at + ": empty or repeated symbol");
    for (char c : op.symbol)
      if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')')
        throw std::invalid_argument(at + ": symbol may not contain spaces or parentheses");
    s.ops.push_back(op);
  }
  return s;
}

json Signature::to_json() const {
  json out = json::array();
  for (const auto& o : ops) out.push_back({{"symbol", o.symbol}, {"arity", o.arity}});
  return out;
}

namespace term {
Elem var(std::size_t v) { return Elem(-1, {Elem(static_cast<std::int64_t>(v))}); }
Elem apply(std::size_t op, std::vector<Elem> args) { return Elem(static_cast<std::int64_t>(op), std::move(args)); }
bool is_var(const Elem& t) { return t.tag < 0; }
std::size_t var_index(const Elem& t) { return static_cast<std::size_t>(t[0].tag); }
std::size_t depth(const Elem& t) {
  if (is_var(t)) return 0;
  std::size_t d = 0;
  for (const auto& a : t.parts) d = std::max(d, depth(a));
  return d + 1;
}
std::size_t size(const Elem& t) {
  if (is_var(t)) return 1;
  std::size_t s = 1;
  for (const auto& a : t.parts) s += size(a);
  return s;
}
std::size_t arity(const Elem& t) {
  if (is_var(t)) return var_index(t) + 1;
  std::size_t n = 0;
  for (const auto& a : t.parts) n = std::max(n, arity(a));
  return n;
}
}  // namespace term

namespace {

struct SexpParser {
  const Signature& sig;
  const std::string& s;
  std::vector<std::string>& vars;
  std::size_t pos = 0;

  [[noreturn]] void error(const std::string& msg) const {
    throw std::invalid_argument("term \"" + s + "\" at " + std::to_string(pos) + ": " + msg);
  }
  void skip() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  std::string atom() {
    std::size_t b = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos])) && s[pos] != '(' && s[pos] != ')') ++pos;
    if (b == pos) error("expected a symbol");
    return s.substr(b, pos - b);
  }
  Elem parse() {
    skip();
    if (pos >= s.size()) error("unexpected end");
    if (s[pos] == '(') {
      ++pos;
      skip();
      std::string head = atom();
      auto op = sig.find(head);
      if (!op) error("unknown operation " + head);
      std::vector<Elem> args;
      for (;;) {
        skip();
        if (pos >= s.size()) error("missing )");
        if (s[pos] == ')') break;
        args.push_back(parse());
      }
      ++pos;
      if (args.size() != sig.ops[*op].arity)
        error(head + " takes " + std::to_string(sig.ops[*op].arity) + " arguments, got " + std::to_string(args.size()));
      return term::apply(*op, std::move(args));
    }
    if (s[pos] == ')') error("unexpected )");
    std::string name = atom();
    if (auto op = sig.find(name)) {
      if (sig.ops[*op].arity != 0) error(name + " is not a constant");
      return term::apply(*op, {});
    }
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) {
      vars.push_back(name);
      return term::var(vars.size() - 1);
    }
    return term::var(static_cast<std::size_t>(it - vars.begin()));
  }
};

std::string show_rec(const Signature& s, const Elem& t, const std::vector<std::string>& vars, bool top) {
  if (term::is_var(t)) {
    std::size_t v = term::var_index(t);
    return v < vars.size() ? vars[v] : "v" + std::to_string(v);
  }
  const OpSymbol& op = s.ops.at(static_cast<std::size_t>(t.tag));
  if (op.arity == 0) return op.symbol;
  if (op.arity == 2) {
    std::string body = show_rec(s, t[0], vars, false) + op.symbol + show_rec(s, t[1], vars, false);
    return top ? body : "(" + body + ")";
  }
  std::string out = op.symbol + "(";
  for (std::size_t i = 0; i < t.parts.size(); ++i) out += (i ? "," : "") + show_rec(s, t[i], vars, true);
  return out + ")";
}

}  // namespace

Elem parse_term(const Signature& s, const std::string& text, std::vector<std::string>& vars) {
  SexpParser p{s, text, vars};
  Elem t = p.parse();
  p.skip();
  if (p.pos != text.size()) p.error("trailing input");
  return t;
}

std::string show_term(const Signature& s, const Elem& t, const std::vector<std::string>& vars) {
  return show_rec(s, t, vars, true);
}

std::string AlgebraTheory::show(const Inequality& q) const {
  return show_term(sig, q.lhs, vars) + " ≤ " + show_term(sig, q.rhs, vars);
}

AlgebraTheory AlgebraTheory::from_json(const json& j) {
  if (j.is_string()) return power_theory(theory_from_name(j.get<std::string>()));
  if (!j.is_object() || !j.contains("signature") || !j.contains("inequalities"))
    throw std::invalid_argument("theory: expected {\"signature\", \"inequalities\"} or a theory name");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "signature" && it.key() != "inequalities" && it.key() != "name")
      throw std::invalid_argument("theory: unknown field " + it.key());
  AlgebraTheory e;
  e.name = j.value("name", std::string("custom"));
  e.sig = Signature::from_json(j["signature"]);
  const json& qs = j["inequalities"];
  if (!qs.is_array()) throw std::invalid_argument("theory.inequalities: expected an array");
  for (std::size_t i = 0; i < qs.size(); ++i) {
    std::string at = "theory.inequalities[" + std::to_string(i) + "]";
    if (!qs[i].is_array() || qs[i].size() != 2 || !qs[i][0].is_string() || !qs[i][1].is_string())
      throw std::invalid_argument(at + ": expected [lhs, rhs] s-expressions");
    try {
      Elem l = parse_term(e.sig, qs[i][0].get<std::string>(), e.vars);
      Elem r = parse_term(e.sig, qs[i][1].get<std::string>(), e.vars);
      e.laws.push_back({l, r});
    } catch (const std::invalid_argument& ex) {
      throw std::invalid_argument(at + ": " + ex.what());
    }
  }
  return e;
}

namespace {
std::string sexp(const Signature& s, const Elem& t, const std::vector<std::string>& vars) {
  if (term::is_var(t)) return vars.at(term::var_index(t));
  const OpSymbol& op = s.ops.at(static_cast<std::size_t>(t.tag));
  if (op.arity == 0) return op.symbol;
  std::string out = "(" + op.symbol;
  for (const auto& a : t.parts) out += " " + sexp(s, a, vars);
  return out + ")";
}
}  // namespace

json AlgebraTheory::to_json() const {
  json qs = json::array();
  for (const auto& q : laws) qs.push_back({sexp(sig, q.lhs, vars), sexp(sig, q.rhs, vars)});
  return {{"name", name}, {"signature", sig.to_json()}, {"inequalities", qs}};
}

AlgebraTheory semilattice_theory() {
  AlgebraTheory e;
  e.name = "semilattice";
  e.sig.ops.push_back({"+", 2});
  for (auto [l, r] : {std::pair{"(+ x x)", "x"}, std::pair{"x", "(+ x x)"}, std::pair{"(+ x y)", "(+ y x)"},
                      std::pair{"(+ (+ x y) z)", "(+ x (+ y z))"}, std::pair{"(+ x (+ y z))", "(+ (+ x y) z)"}})
    e.laws.push_back({parse_term(e.sig, l, e.vars), parse_term(e.sig, r, e.vars)});
  return e;
}

AlgebraTheory power_theory(Theory t) {
  AlgebraTheory e = semilattice_theory();
  e.name = theory_name(t);
  auto add = [&](const std::string& l, const std::string& r) {
    e.laws.push_back({parse_term(e.sig, l, e.vars), parse_term(e.sig, r, e.vars)});
  };
  if (t == Theory::lower) add("x", "(+ x y)");
  if (t == Theory::upper) add("(+ x y)", "x");
  return e;
}

// ---------------------------------------------------------------- finite algebras

namespace {

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e--) r *= b;
  return r;
}

std::size_t encode(const std::vector<std::size_t>& args, std::size_t n) {
  std::size_t code = 0;
  for (auto a : args) code = code * n + a;
  return code;
}

std::vector<std::size_t> decode(std::size_t code, std::size_t k, std::size_t n) {
  std::vector<std::size_t> args(k);
  for (std::size_t i = k; i-- > 0; code /= n) args[i] = code % n;
  return args;
}

// Odometer over {0..n-1}^k; calls f for each tuple, stops early when f returns false.
template <class F>
bool for_tuples(std::size_t k, std::size_t n, F&& f) {
  std::vector<std::size_t> t(k, 0);
  if (k > 0 && n == 0) return true;
  for (;;) {
    if (!f(t)) return false;
    std::size_t i = k;
    while (i > 0) {
      if (++t[i - 1] < n) break;
      t[i - 1] = 0;
      --i;
    }
    if (i == 0) return true;
  }
}

FinitePoset to_finite(const Poset& p) {
  if (p.kind() == PosetKind::explicit_finite) return p.table();
  if (!p.finite()) throw std::invalid_argument("expected a finite poset, got " + p.describe());
  auto els = p.elements();
  std::vector<std::string> names;
  std::vector<std::uint8_t> leq(els.size() * els.size());
  for (const auto& e : els) names.push_back(p.show(e));
  for (std::size_t i = 0; i < els.size(); ++i)
    for (std::size_t j = 0; j < els.size(); ++j) leq[i * els.size() + j] = p.leq(els[i], els[j]);
  return FinitePoset(names, leq);
}

json assignment(const AlgebraTheory& e, const FinitePoset& p, const std::vector<std::size_t>& env) {
  json cx = json::object();
  for (std::size_t v = 0; v < env.size(); ++v) cx[v < e.vars.size() ? e.vars[v] : "v" + std::to_string(v)] = p.name(env[v]);
  return cx;
}

json names_of(const FinitePoset& p, const std::vector<std::size_t>& xs) {
  json a = json::array();
  for (auto x : xs) a.push_back(p.name(x));
  return a;
}

}  // namespace

FiniteAlgebra::FiniteAlgebra(Signature s, FinitePoset carrier, std::vector<std::vector<std::size_t>> tables)
    : sig_(std::move(s)), p_(std::move(carrier)), t_(std::move(tables)) {
  if (t_.size() != sig_.ops.size()) throw std::invalid_argument("algebra: one table per operation expected");
  for (std::size_t i = 0; i < t_.size(); ++i) {
    if (t_[i].size() != ipow(p_.size(), sig_.ops[i].arity))
      throw std::invalid_argument("algebra: table for " + sig_.ops[i].symbol + " has the wrong size");
    for (auto v : t_[i])
      if (v >= p_.size()) throw std::invalid_argument("algebra: table for " + sig_.ops[i].symbol + " leaves the carrier");
  }
}

std::size_t FiniteAlgebra::apply(std::size_t op, const std::vector<std::size_t>& args) const {
  return t_.at(op).at(encode(args, p_.size()));
}

std::size_t FiniteAlgebra::eval(const Elem& t, const std::vector<std::size_t>& env) const {
  if (term::is_var(t)) return env.at(term::var_index(t));
  std::vector<std::size_t> args;
  args.reserve(t.parts.size());
  for (const auto& a : t.parts) args.push_back(eval(a, env));
  return apply(static_cast<std::size_t>(t.tag), args);
}

json FiniteAlgebra::to_json() const {
  json ops = json::object();
  for (std::size_t i = 0; i < t_.size(); ++i) ops[sig_.ops[i].symbol] = names_of(p_, t_[i]);
  return {{"signature", sig_.to_json()}, {"carrier", Poset::explicit_finite(p_).to_json()}, {"ops", ops}};
}

FiniteAlgebra FiniteAlgebra::from_json(const json& j, const Signature& s) {
  if (!j.is_object() || !j.contains("carrier") || !j.contains("ops"))
    throw std::invalid_argument("algebra: expected {\"carrier\", \"ops\"}");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (it.key() != "carrier" && it.key() != "ops" && it.key() != "signature")
      throw std::invalid_argument("algebra: unknown field " + it.key());
  FinitePoset p = to_finite(Poset::from_json(j["carrier"]));
  auto index = [&](const json& v, const std::string& at) -> std::size_t {
    if (v.is_number_unsigned() && v.get<std::size_t>() < p.size()) return v.get<std::size_t>();
    if (v.is_string())
      if (auto i = p.index_of(v.get<std::string>())) return *i;
    throw std::invalid_argument(at + ": not an element of the carrier: " + v.dump());
  };
  std::vector<std::vector<std::size_t>> tables;
  for (const auto& op : s.ops) {
    std::string at = "algebra.ops." + op.symbol;
    if (!j["ops"].contains(op.symbol)) throw std::invalid_argument(at + ": missing");
    const json& t = j["ops"][op.symbol];
    std::vector<std::size_t> flat;
    if (!t.is_array()) {
      flat.push_back(index(t, at));
    } else {
      for (std::size_t r = 0; r < t.size(); ++r) {
        if (t[r].is_array()) {
          for (std::size_t c = 0; c < t[r].size(); ++c)
            flat.push_back(index(t[r][c], at + "[" + std::to_string(r) + "][" + std::to_string(c) + "]"));
        } else {
          flat.push_back(index(t[r], at + "[" + std::to_string(r) + "]"));
        }
      }
    }
    if (flat.size() != ipow(p.size(), op.arity))
      throw std::invalid_argument(at + ": expected " + std::to_string(ipow(p.size(), op.arity)) + " entries");
    tables.push_back(std::move(flat));
  }
  for (auto it = j["ops"].begin(); it != j["ops"].end(); ++it)
    if (!s.find(it.key())) throw std::invalid_argument("algebra.ops: unknown operation " + it.key());
  return FiniteAlgebra(s, p, tables);
}

namespace {

// First failing instance of a law, as an assignment.
std::optional<std::vector<std::size_t>> law_counterexample(const FiniteAlgebra& a, const Inequality& q,
                                                           std::size_t& instances) {
  std::size_t k = std::max(term::arity(q.lhs), term::arity(q.rhs));
  std::optional<std::vector<std::size_t>> bad;
  for_tuples(k, a.size(), [&](const std::vector<std::size_t>& env) {
    ++instances;
    if (!a.carrier().leq(a.eval(q.lhs, env), a.eval(q.rhs, env))) {
      bad = env;
      return false;
    }
    return true;
  });
  return bad;
}

// First pair of tuples differing in one coordinate, in order, whose images are not.
std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> monotone_counterexample(
    const FiniteAlgebra& a, std::size_t op) {
  const FinitePoset& p = a.carrier();
  std::size_t k = a.signature().ops[op].arity;
  std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> bad;
  for_tuples(k, p.size(), [&](const std::vector<std::size_t>& t) {
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t b = 0; b < p.size(); ++b) {
        if (b == t[i] || !p.leq(t[i], b)) continue;
        auto u = t;
        u[i] = b;
        if (!p.leq(a.apply(op, t), a.apply(op, u))) {
          bad = std::make_pair(t, u);
          return false;
        }
      }
    return true;
  });
  return bad;
}

}  // namespace

Report check_algebra(const FiniteAlgebra& a, const AlgebraTheory& e) {
  Report r("algebra");
  if (a.signature().to_json() != e.sig.to_json()) {
    r.fail("signature", "algebra and theory have different signatures");
    return r;
  }
  for (std::size_t op = 0; op < e.sig.ops.size(); ++op) {
    std::string name = e.sig.ops[op].symbol + " monotone";
    if (auto bad = monotone_counterexample(a, op))
      r.fail(name, "larger arguments give a smaller value",
             {{"args", names_of(a.carrier(), bad->first)}, {"larger", names_of(a.carrier(), bad->second)}});
    else
      r.pass(name, "exhaustive over single-coordinate increases");
  }
  for (const auto& q : e.laws) {
    std::size_t n = 0;
    if (auto bad = law_counterexample(a, q, n))
      r.fail(e.show(q), "fails under this assignment", assignment(e, a.carrier(), *bad));
    else
      r.pass(e.show(q), std::to_string(n) + " assignments");
  }
  return r;
}

bool satisfies(const FiniteAlgebra& a, const AlgebraTheory& e) { return check_algebra(a, e).ok(); }

bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const std::vector<std::size_t>& h) {
  const FinitePoset& p = a.carrier();
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if (p.leq(i, j) && !b.carrier().leq(h[i], h[j])) return false;
  for (std::size_t op = 0; op < a.signature().ops.size(); ++op) {
    bool ok = for_tuples(a.signature().ops[op].arity, p.size(), [&](const std::vector<std::size_t>& t) {
      std::vector<std::size_t> ht;
      for (auto x : t) ht.push_back(h[x]);
      return h[a.apply(op, t)] == b.apply(op, ht);
    });
    if (!ok) return false;
  }
  return true;
}

std::vector<std::vector<std::size_t>> homomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  std::vector<std::vector<std::size_t>> out;
  for (auto& h : monotone_maps(a.carrier(), b.carrier()))
    if (is_homomorphism(a, b, h)) out.push_back(std::move(h));
  return out;
}

std::vector<FiniteAlgebra> algebras_up_to(const AlgebraTheory& e, std::size_t n) {
  std::vector<FiniteAlgebra> out;
  for (std::size_t m = 1; m <= n; ++m)
    for (const auto& p : posets_up_to_iso(m)) {
      // Order automorphisms, for choosing one table per orbit.
      std::vector<std::vector<std::size_t>> auts;
      std::vector<std::size_t> perm(m);
      for (std::size_t i = 0; i < m; ++i) perm[i] = i;
      do {
        bool ok = true;
        for (std::size_t i = 0; i < m && ok; ++i)
          for (std::size_t j = 0; j < m && ok; ++j) ok = p.leq(i, j) == p.leq(perm[i], perm[j]);
        if (ok) auts.push_back(perm);
      } while (std::next_permutation(perm.begin(), perm.end()));

      std::vector<std::size_t> cells;
      std::size_t total = 1;
      for (const auto& op : e.sig.ops) {
        cells.push_back(ipow(m, op.arity));
        for (std::size_t c = 0; c < cells.back(); ++c) {
          total *= m;
          if (total > 50'000'000) throw BudgetExceeded("algebra enumeration on " + std::to_string(m) + " points is too large");
        }
      }
      std::size_t width = 0;
      for (auto c : cells) width += c;
      for_tuples(width, m, [&](const std::vector<std::size_t>& flat) {
        std::vector<std::vector<std::size_t>> tables;
        std::size_t at = 0;
        for (auto c : cells) {
          tables.emplace_back(flat.begin() + static_cast<std::ptrdiff_t>(at), flat.begin() + static_cast<std::ptrdiff_t>(at + c));
          at += c;
        }
        // Keep the lexicographically least table of each automorphism orbit.
        for (const auto& s : auts) {
          std::vector<std::size_t> moved(flat.size());
          std::size_t off = 0;
          for (std::size_t op = 0; op < cells.size(); ++op) {
            std::size_t k = e.sig.ops[op].arity;
            for (std::size_t c = 0; c < cells[op]; ++c) {
              auto args = decode(c, k, m);
              for (auto& x : args) x = s[x];
              moved[off + encode(args, m)] = s[flat[off + c]];
            }
            off += cells[op];
          }
          if (moved < flat) return true;
        }
        FiniteAlgebra a(e.sig, p, tables);
        for (std::size_t op = 0; op < e.sig.ops.size(); ++op)
          if (monotone_counterexample(a, op)) return true;
        for (const auto& q : e.laws) {
          std::size_t cnt = 0;
          if (law_counterexample(a, q, cnt)) return true;
        }
        out.push_back(std::move(a));
        return true;
      });
    }
  return out;
}

// ---------------------------------------------------------------- products and equalizers

ProductAlgebra algebra_product(const Signature& s, const std::vector<FiniteAlgebra>& as) {
  for (const auto& a : as)
    if (a.signature().to_json() != s.to_json()) throw std::invalid_argument("algebra_product: signature mismatch");
  std::vector<std::size_t> sizes;
  std::size_t n = 1;
  for (const auto& a : as) {
    sizes.push_back(a.size());
    n *= a.size();
  }
  auto coords = [&](std::size_t x) {
    std::vector<std::size_t> c(as.size());
    for (std::size_t i = as.size(); i-- > 0; x /= sizes[i]) c[i] = x % sizes[i];
    return c;
  };
  auto index = [&](const std::vector<std::size_t>& c) {
    std::size_t x = 0;
    for (std::size_t i = 0; i < c.size(); ++i) x = x * sizes[i] + c[i];
    return x;
  };
  std::vector<std::string> names;
  std::vector<std::uint8_t> leq(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    auto c = coords(x);
    std::string nm = "(";
    for (std::size_t i = 0; i < c.size(); ++i) nm += (i ? "," : "") + as[i].carrier().name(c[i]);
    names.push_back(nm + ")");
  }
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      auto cx = coords(x), cy = coords(y);
      bool le = true;
      for (std::size_t i = 0; i < as.size() && le; ++i) le = as[i].carrier().leq(cx[i], cy[i]);
      leq[x * n + y] = le;
    }
  std::vector<std::vector<std::size_t>> tables;
  for (std::size_t op = 0; op < s.ops.size(); ++op) {
    std::size_t k = s.ops[op].arity;
    std::vector<std::size_t> t(ipow(n, k));
    for (std::size_t code = 0; code < t.size(); ++code) {
      auto args = decode(code, k, n);
      std::vector<std::size_t> out(as.size());
      for (std::size_t i = 0; i < as.size(); ++i) {
        std::vector<std::size_t> ai;
        for (auto x : args) ai.push_back(coords(x)[i]);
        out[i] = as[i].apply(op, ai);
      }
      t[code] = index(out);
    }
    tables.push_back(std::move(t));
  }
  std::vector<std::vector<std::size_t>> proj(as.size(), std::vector<std::size_t>(n));
  for (std::size_t x = 0; x < n; ++x) {
    auto c = coords(x);
    for (std::size_t i = 0; i < as.size(); ++i) proj[i][x] = c[i];
  }
  return {FiniteAlgebra(s, FinitePoset(names, leq), tables), proj};
}

Report check_product(const ProductAlgebra& p, const std::vector<FiniteAlgebra>& factors,
                     const std::vector<FiniteAlgebra>& tests) {
  Report r("product");
  bool homs = true;
  for (std::size_t i = 0; i < factors.size(); ++i)
    if (!is_homomorphism(p.algebra, factors[i], p.projections[i])) {
      r.fail("projections are homomorphisms", "projection " + std::to_string(i) + " is not", json(i));
      homs = false;
      break;
    }
  if (homs) r.pass("projections are homomorphisms", std::to_string(factors.size()) + " projections");

  std::size_t cones = 0;
  for (std::size_t ti = 0; ti < tests.size(); ++ti) {
    const FiniteAlgebra& c = tests[ti];
    // Group homomorphisms C → P by their composites with the projections.
    std::map<std::vector<std::vector<std::size_t>>, std::size_t> mediators;
    for (const auto& m : homomorphisms(c, p.algebra)) {
      std::vector<std::vector<std::size_t>> leg;
      for (const auto& pr : p.projections) {
        std::vector<std::size_t> l;
        for (auto x : m) l.push_back(pr[x]);
        leg.push_back(std::move(l));
      }
      ++mediators[leg];
    }
    std::vector<std::vector<std::vector<std::size_t>>> legs;
    for (const auto& f : factors) legs.push_back(homomorphisms(c, f));
    std::vector<std::size_t> choice(factors.size(), 0);
    bool empty = false;
    for (const auto& l : legs) empty = empty || l.empty();
    if (empty) continue;
    for (;;) {
      std::vector<std::vector<std::size_t>> cone;
      for (std::size_t i = 0; i < factors.size(); ++i) cone.push_back(legs[i][choice[i]]);
      ++cones;
      auto it = mediators.find(cone);
      std::size_t count = it == mediators.end() ? 0 : it->second;
      if (count != 1) {
        r.fail("cones factor uniquely", std::to_string(count) + " mediating maps",
               {{"test", c.to_json()}, {"cone", cone}});
        return r;
      }
      std::size_t i = factors.size();
      while (i > 0) {
        if (++choice[i - 1] < legs[i - 1].size()) break;
        choice[i - 1] = 0;
        --i;
      }
      if (i == 0) break;
    }
  }
  r.pass("cones factor uniquely",
         std::to_string(cones) + " cones over " + std::to_string(tests.size()) + " test algebras, one mediating map each");
  return r;
}

Equalizer algebra_equalizer(const FiniteAlgebra& a, const FiniteAlgebra& b, const std::vector<std::size_t>& f,
                            const std::vector<std::size_t>& g) {
  if (!is_homomorphism(a, b, f)) throw std::invalid_argument("algebra_equalizer: f is not a homomorphism");
  if (!is_homomorphism(a, b, g)) throw std::invalid_argument("algebra_equalizer: g is not a homomorphism");
  std::vector<std::size_t> keep;
  std::vector<long> pos(a.size(), -1);
  for (std::size_t x = 0; x < a.size(); ++x)
    if (f[x] == g[x]) {
      pos[x] = static_cast<long>(keep.size());
      keep.push_back(x);
    }
  std::size_t n = keep.size();
  std::vector<std::string> names;
  std::vector<std::uint8_t> leq(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(a.carrier().name(keep[i]));
    for (std::size_t j = 0; j < n; ++j) leq[i * n + j] = a.carrier().leq(keep[i], keep[j]);
  }
  std::vector<std::vector<std::size_t>> tables;
  for (std::size_t op = 0; op < a.signature().ops.size(); ++op) {
    std::size_t k = a.signature().ops[op].arity;
    std::vector<std::size_t> t(ipow(n, k));
    for (std::size_t code = 0; code < t.size(); ++code) {
      auto args = decode(code, k, n);
      for (auto& x : args) x = keep[x];
      long y = pos[a.apply(op, args)];
      if (y < 0) throw std::logic_error("algebra_equalizer: subset not closed under " + a.signature().ops[op].symbol);
      t[code] = static_cast<std::size_t>(y);
    }
    tables.push_back(std::move(t));
  }
  return {FiniteAlgebra(a.signature(), FinitePoset(names, leq), tables), keep};
}

Report check_equalizer(const Equalizer& q, const FiniteAlgebra& a, const FiniteAlgebra& b,
                       const std::vector<std::size_t>& f, const std::vector<std::size_t>& g,
                       const std::vector<FiniteAlgebra>& tests) {
  (void)b;
  Report r("equalizer");
  r.expect("embedding is a homomorphism", is_homomorphism(q.algebra, a, q.embedding));
  bool eq = true;
  for (auto x : q.embedding) eq = eq && f[x] == g[x];
  r.expect("f ∘ e = g ∘ e", eq);
  std::size_t forks = 0;
  for (const auto& c : tests) {
    std::map<std::vector<std::size_t>, std::size_t> through;
    for (const auto& k : homomorphisms(c, q.algebra)) {
      std::vector<std::size_t> ek;
      for (auto x : k) ek.push_back(q.embedding[x]);
      ++through[ek];
    }
    for (const auto& h : homomorphisms(c, a)) {
      bool fork = true;
      for (auto x : h) fork = fork && f[x] == g[x];
      if (!fork) continue;
      ++forks;
      auto it = through.find(h);
      std::size_t count = it == through.end() ? 0 : it->second;
      if (count != 1) {
        r.fail("forks factor uniquely", std::to_string(count) + " factorizations",
               {{"test", c.to_json()}, {"h", names_of(a.carrier(), h)}});
        return r;
      }
    }
  }
  r.pass("forks factor uniquely", std::to_string(forks) + " forks over " + std::to_string(tests.size()) + " test algebras");
  return r;
}

// ---------------------------------------------------------------- free ordered algebra

namespace {

using Bits = std::vector<std::uint64_t>;

struct Rel {
  std::size_t n, w;
  std::vector<Bits> rows;
  explicit Rel(std::size_t n_) : n(n_), w((n_ + 63) / 64), rows(n_, Bits((n_ + 63) / 64, 0)) {}
  bool get(std::size_t i, std::size_t j) const { return rows[i][j / 64] >> (j % 64) & 1; }
  bool set(std::size_t i, std::size_t j) {
    if (get(i, j)) return false;
    rows[i][j / 64] |= std::uint64_t{1} << (j % 64);
    return true;
  }
  bool close() {
    bool changed = false;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (get(i, k))
          for (std::size_t x = 0; x < w; ++x) {
            std::uint64_t nv = rows[i][x] | rows[k][x];
            if (nv != rows[i][x]) {
              rows[i][x] = nv;
              changed = true;
            }
          }
    return changed;
  }
};

bool term_less(const Elem& a, const Elem& b) {
  std::size_t sa = term::size(a), sb = term::size(b);
  if (sa != sb) return sa < sb;
  return a < b;
}

using OpTables = std::vector<std::map<std::vector<std::size_t>, std::size_t>>;

std::optional<std::size_t> eval_partial(const OpTables& t, const Elem& tm, const std::vector<std::size_t>& env) {
  if (term::is_var(tm)) return env.at(term::var_index(tm));
  std::vector<std::size_t> args;
  for (const auto& a : tm.parts) {
    auto v = eval_partial(t, a, env);
    if (!v) return std::nullopt;
    args.push_back(*v);
  }
  auto it = t[static_cast<std::size_t>(tm.tag)].find(args);
  if (it == t[static_cast<std::size_t>(tm.tag)].end()) return std::nullopt;
  return it->second;
}

}  // namespace

FreeAlgebraResult free_ordered_algebra(const FinitePoset& x, const AlgebraTheory& e, std::size_t depth,
                                       std::size_t budget) {
  if (depth < 1) throw std::invalid_argument("free_ordered_algebra: depth must be at least 1");
  const Signature& sig = e.sig;
  std::size_t m = x.size();
  std::vector<Elem> terms;
  for (std::size_t i = 0; i < m; ++i) terms.push_back(term::var(i));
  std::vector<std::uint8_t> order(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) order[i * m + j] = x.leq(i, j);
  OpTables tables(sig.ops.size());
  std::vector<std::size_t> unit(m);
  for (std::size_t i = 0; i < m; ++i) unit[i] = i;

  FreeAlgebraResult res;
  res.log = json::array();
  auto show = [&](const Elem& t) { return show_term(sig, t, x.names()); };

  for (std::size_t level = 1; level <= depth; ++level) {
    // Every operation applied to every tuple of current classes.
    std::size_t n = m;
    std::vector<Elem> all = terms;
    for (std::size_t op = 0; op < sig.ops.size(); ++op)
      for_tuples(sig.ops[op].arity, m, [&](const std::vector<std::size_t>& t) {
        if (tables[op].count(t)) return true;
        std::vector<Elem> args;
        for (auto a : t) args.push_back(terms[a]);
        all.push_back(term::apply(op, std::move(args)));
        tables[op][t] = n++;
        if (n > budget) {
          json partial = res.log;
          partial.push_back({{"depth", level}, {"terms", n}, {"aborted", true}});
          throw BudgetExceeded("free algebra: level " + std::to_string(level) + " exceeds the budget of " +
                                   std::to_string(budget) + " terms",
                               partial);
        }
        return true;
      });

    Rel r(n);
    for (std::size_t i = 0; i < n; ++i) r.set(i, i);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (order[i * m + j]) r.set(i, j);
    std::size_t instances = 0;
    for (const auto& q : e.laws) {
      std::size_t k = std::max(term::arity(q.lhs), term::arity(q.rhs));
      if (ipow(m, k) > 50'000'000) throw BudgetExceeded("free algebra: too many law instances", res.log);
      for_tuples(k, m, [&](const std::vector<std::size_t>& env) {
        auto l = eval_partial(tables, q.lhs, env);
        auto rr = eval_partial(tables, q.rhs, env);
        if (l && rr) {
          r.set(*l, *rr);
          ++instances;
        }
        return true;
      });
    }
    // Monotonicity one coordinate at a time; the table is total on the m old
    // classes, so joint monotonicity follows through transitivity.
    for (bool changed = true; changed;) {
      changed = r.close();
      for (std::size_t op = 0; op < sig.ops.size(); ++op)
        for (const auto& [t, v] : tables[op])
          for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t b = 0; b < m; ++b) {
              if (b == t[i] || !r.get(t[i], b)) continue;
              auto u = t;
              u[i] = b;
              changed = r.set(v, tables[op].at(u)) || changed;
            }
    }

    // Antisymmetrize; classes numbered by first member, so old classes keep their order.
    std::vector<std::size_t> cls(n, SIZE_MAX), reps;
    for (std::size_t i = 0; i < n; ++i) {
      if (cls[i] != SIZE_MAX) continue;
      cls[i] = reps.size();
      for (std::size_t j = i + 1; j < n; ++j)
        if (cls[j] == SIZE_MAX && r.get(i, j) && r.get(j, i)) cls[j] = reps.size();
      reps.push_back(i);
    }
    std::size_t c = reps.size();
    std::vector<Elem> canon(c);
    std::vector<bool> seen(c, false);
    for (std::size_t i = 0; i < n; ++i)
      if (!seen[cls[i]] || term_less(all[i], canon[cls[i]])) {
        canon[cls[i]] = all[i];
        seen[cls[i]] = true;
      }
    bool stable = c == m;
    for (std::size_t i = 0; i < m && stable; ++i) stable = cls[i] == i;
    for (std::size_t i = 0; i < m && stable; ++i)
      for (std::size_t j = 0; j < m && stable; ++j) stable = r.get(i, j) == (order[i * m + j] != 0);

    res.log.push_back({{"depth", level}, {"terms", n}, {"instances", instances}, {"classes", c}, {"stable", stable}});

    OpTables next(sig.ops.size());
    for (std::size_t op = 0; op < sig.ops.size(); ++op)
      for (const auto& [t, v] : tables[op]) {
        std::vector<std::size_t> u;
        for (auto a : t) u.push_back(cls[a]);
        auto [it, fresh] = next[op].emplace(u, cls[v]);
        if (!fresh && it->second != cls[v]) throw std::logic_error("free algebra: precongruence is not a congruence");
      }
    std::vector<std::uint8_t> nord(c * c);
    for (std::size_t i = 0; i < c; ++i)
      for (std::size_t j = 0; j < c; ++j) nord[i * c + j] = r.get(reps[i], reps[j]);
    for (auto& u : unit) u = cls[u];
    m = c;
    terms = canon;
    order = std::move(nord);
    tables = std::move(next);
    res.depth = level;
    if (stable) {
      res.stabilized = true;
      break;
    }
  }

  std::vector<std::string> names;
  for (const auto& t : terms) names.push_back(show(t));
  res.carrier = FinitePoset(names, order);
  res.unit = unit;
  res.terms = terms;
  if (res.stabilized) {
    std::vector<std::vector<std::size_t>> flat;
    for (std::size_t op = 0; op < sig.ops.size(); ++op) {
      std::vector<std::size_t> t(ipow(m, sig.ops[op].arity));
      for (std::size_t code = 0; code < t.size(); ++code) t[code] = tables[op].at(decode(code, sig.ops[op].arity, m));
      flat.push_back(std::move(t));
    }
    res.algebra = FiniteAlgebra(sig, res.carrier, flat);
  }
  return res;
}

// ---------------------------------------------------------------- powerspaces

SetPreorder set_preorder(Theory t) {
  auto hoare = [](const FinitePoset& p, std::uint32_t f, std::uint32_t g) {
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (!(f >> i & 1)) continue;
      bool ok = false;
      for (std::size_t j = 0; j < p.size() && !ok; ++j) ok = (g >> j & 1) && p.leq(i, j);
      if (!ok) return false;
    }
    return true;
  };
  auto smyth = [](const FinitePoset& p, std::uint32_t f, std::uint32_t g) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      if (!(g >> j & 1)) continue;
      bool ok = false;
      for (std::size_t i = 0; i < p.size() && !ok; ++i) ok = (f >> i & 1) && p.leq(i, j);
      if (!ok) return false;
    }
    return true;
  };
  switch (t) {
    case Theory::lower: return hoare;
    case Theory::upper: return smyth;
    case Theory::convex:
      return [hoare, smyth](const FinitePoset& p, std::uint32_t f, std::uint32_t g) {
        return hoare(p, f, g) && smyth(p, f, g);
      };
  }
  return hoare;
}

namespace {

std::string mask_name(const FinitePoset& p, std::uint32_t s) {
  std::string out = "{";
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (s >> i & 1) {
      out += (first ? "" : ",") + p.name(i);
      first = false;
    }
  return out + "}";
}

std::vector<std::uint32_t> nonempty_masks(std::size_t n) {
  if (n > 20) throw BudgetExceeded("powerspace: " + std::to_string(n) + " points is beyond brute force");
  std::vector<std::uint32_t> out;
  for (std::uint32_t s = 1; s < (std::uint32_t{1} << n); ++s) out.push_back(s);
  std::stable_sort(out.begin(), out.end(),
                   [](std::uint32_t a, std::uint32_t b) { return __builtin_popcount(a) < __builtin_popcount(b); });
  return out;
}

}  // namespace

FreeAlgebraResult powerspace(const FinitePoset& x, Theory t, SetPreorder order) {
  if (x.size() == 0) throw std::invalid_argument("powerspace: empty carrier");
  if (!order) order = set_preorder(t);
  auto masks = nonempty_masks(x.size());
  std::vector<std::uint32_t> reps;
  std::map<std::uint32_t, std::size_t> cls;
  for (auto s : masks) {
    bool found = false;
    for (std::size_t c = 0; c < reps.size() && !found; ++c)
      if (order(x, s, reps[c]) && order(x, reps[c], s)) {
        cls[s] = c;
        found = true;
      }
    if (!found) {
      cls[s] = reps.size();
      reps.push_back(s);
    }
  }
  std::size_t n = reps.size();
  std::vector<std::string> names;
  std::vector<std::uint8_t> leq(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(mask_name(x, reps[i]));
    for (std::size_t j = 0; j < n; ++j) leq[i * n + j] = order(x, reps[i], reps[j]);
  }
  FreeAlgebraResult res;
  AlgebraTheory e = power_theory(t);
  std::vector<std::size_t> join(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) join[i * n + j] = cls.at(reps[i] | reps[j]);
  res.carrier = FinitePoset(names, leq);
  res.algebra = FiniteAlgebra(e.sig, res.carrier, {join});
  for (std::size_t i = 0; i < x.size(); ++i) res.unit.push_back(cls.at(std::uint32_t{1} << i));
  for (auto s : reps) {
    std::optional<Elem> tm;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (s >> i & 1) tm = tm ? term::apply(0, {*tm, term::var(i)}) : term::var(i);
    res.terms.push_back(*tm);
  }
  res.stabilized = true;
  res.log = json::array({{{"subsets", masks.size()}, {"classes", n}}});
  return res;
}

FinitePoset nonempty_lower_sets(const FinitePoset& x) {
  std::vector<std::uint32_t> sets;
  for (auto s : nonempty_masks(x.size())) {
    bool lower = true;
    for (std::size_t j = 0; j < x.size() && lower; ++j)
      if (s >> j & 1)
        for (std::size_t i = 0; i < x.size() && lower; ++i) lower = !x.leq(i, j) || (s >> i & 1);
    if (lower) sets.push_back(s);
  }
  std::size_t n = sets.size();
  std::vector<std::string> names;
  std::vector<std::uint8_t> leq(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(mask_name(x, sets[i]));
    for (std::size_t j = 0; j < n; ++j) leq[i * n + j] = (sets[i] & ~sets[j]) == 0;
  }
  return FinitePoset(names, leq);
}

std::optional<std::vector<std::size_t>> unit_iso(const FreeAlgebraResult& a, const FreeAlgebraResult& b) {
  if (!a.algebra || !b.algebra || a.unit.size() != b.unit.size()) return std::nullopt;
  std::size_t n = a.carrier.size();
  if (b.carrier.size() != n) return std::nullopt;
  std::vector<std::size_t> h(n);
  for (std::size_t c = 0; c < n; ++c) h[c] = b.algebra->eval(a.terms[c], b.unit);
  std::vector<bool> hit(n, false);
  for (auto y : h) {
    if (hit[y]) return std::nullopt;
    hit[y] = true;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (a.carrier.leq(i, j) != b.carrier.leq(h[i], h[j])) return std::nullopt;
  if (!is_homomorphism(*a.algebra, *b.algebra, h)) return std::nullopt;
  for (std::size_t g = 0; g < a.unit.size(); ++g)
    if (h[a.unit[g]] != b.unit[g]) return std::nullopt;
  return h;
}

Report verify_universal_property(const FinitePoset& x, const FreeAlgebraResult& fa, const FiniteAlgebra& b,
                                 const AlgebraTheory& e) {
  Report target = check_algebra(b, e);
  if (!target.ok())
    throw std::invalid_argument("target algebra does not satisfy the theory: " + target.first_failure()->name);
  if (!fa.algebra) throw std::invalid_argument("free algebra did not stabilize");
  Report r("universal property");
  const FiniteAlgebra& f_alg = *fa.algebra;
  std::map<std::vector<std::size_t>, std::size_t> extensions;
  for (const auto& h : homomorphisms(f_alg, b)) {
    std::vector<std::size_t> restricted;
    for (auto u : fa.unit) restricted.push_back(h[u]);
    ++extensions[restricted];
  }
  std::size_t maps = 0;
  for (const auto& f : monotone_maps(x, b.carrier())) {
    ++maps;
    std::vector<std::size_t> fbar(f_alg.size());
    for (std::size_t c = 0; c < f_alg.size(); ++c) fbar[c] = b.eval(fa.terms[c], f);
    json cx = {{"f", names_of(b.carrier(), f)}};
    bool commutes = true;
    for (std::size_t g = 0; g < x.size(); ++g) commutes = commutes && fbar[fa.unit[g]] == f[g];
    if (!commutes) {
      r.fail("f̄ ∘ η = f", "the term extension does not restrict to f", cx);
      return r;
    }
    if (!is_homomorphism(f_alg, b, fbar)) {
      r.fail("f̄ is a continuous homomorphism", "the term extension is not a monotone homomorphism", cx);
      return r;
    }
    auto it = extensions.find(f);
    std::size_t count = it == extensions.end() ? 0 : it->second;
    if (count != 1) {
      r.fail("extension is unique", std::to_string(count) + " homomorphisms restrict to f", cx);
      return r;
    }
  }
  std::string d = std::to_string(maps) + " continuous maps into a " + std::to_string(b.size()) + "-point algebra";
  r.pass("f̄ ∘ η = f", d);
  r.pass("f̄ is a continuous homomorphism", d);
  r.pass("extension is unique", d);
  return r;
}

// ---------------------------------------------------------------- presented powerspaces

namespace {

// A union chain can be constant even when its chain components have no sup
// (a Smyth minimum fixed by a constant); treat those as principal.
Elem settle(const Carrier& c, const Elem& d) {
  Elem n = normalize_ideal(c, d);
  if (ideal::kind_of(n) != ideal::Kind::generated) return n;
  Elem last = c.chain_member(ideal::chain(n), kChainProbe);
  if (c.chain_member(ideal::chain(n), kChainProbe / 2) == last) return ideal::principal(last);
  return n;
}

std::vector<Elem> union_comps(const Elem& d) {
  std::vector<Elem> comps;
  if (ideal::is_principal(d)) {
    for (const auto& k : Poset::members(ideal::point(d))) comps.push_back(Elem(1, {k}));
  } else {
    for (const auto& c : ideal::chain(d).parts) comps.push_back(c);
  }
  return comps;
}

}  // namespace

PresentedPower powerspace_presented(SpacePtr x, Theory t, Bound b) {
  auto ps = std::dynamic_pointer_cast<const PosetSpace>(x);
  if (!ps) throw std::invalid_argument("presented powerspace needs a poset space, got " + x->name());
  const Poset& p = ps->poset();
  PresentedPower pp{t, x, p, p, nullptr, nullptr, nullptr};
  bool limit_chains = false;
  std::function<Elem(const Elem&)> to_k = [](const Elem& e) { return e; };
  std::optional<Elem> top_chain;
  if (ps->topology() == TopologyKind::alexandrov || (ps->topology() == TopologyKind::scott && p.finite())) {
    // Every point is compact and every ideal of compacts is principal.
  } else if (ps->topology() == TopologyKind::scott && p.kind() == PosetKind::adjoin_top) {
    const Poset& inner = p.children()[0];
    for (const auto& e : inner.prefix(16))
      if (!p.scott_compact(Elem(0, {e})))
        throw std::invalid_argument("presented powerspace: " + p.show(Elem(0, {e})) + " is not compact");
    auto cs = inner.chains(1);
    if (p.scott_compact(Elem(1)) || cs.empty())
      throw std::invalid_argument("presented powerspace: the added top must be the sup of a chain");
    pp.compacts = inner;
    limit_chains = true;
    top_chain = cs[0];
    to_k = [](const Elem& e) { return e[0]; };
  } else {
    throw std::invalid_argument("presented powerspace supports Alexandrov spaces and Scott spaces P + ⊤, not " +
                                x->name());
  }
  pp.basis = Poset::powerbasis(t, pp.compacts);
  auto carrier = std::make_shared<PosetCarrier>(pp.basis);
  std::vector<Elem> extra;
  if (limit_chains)
    for (const auto& c : pp.basis.chains(b.depth)) {
      Elem d = settle(*carrier, ideal::generated(c));
      if (ideal::is_principal(d)) continue;
      bool dup = false;
      for (const auto& e : extra) dup = dup || ideal_equal(*carrier, e, d).value;
      if (!dup) extra.push_back(d);
    }
  // Lifted chain ideals: every chain of K(X) generates a member of I(K(X)).
  std::function<bool(const Elem&)> has = [limit_chains](const Elem& d) {
    return limit_chains && ideal::kind_of(d) == ideal::Kind::generated;
  };
  std::string label = std::string("UF_") + theory_name(t) + "(" + x->name() + ")";
  pp.space = std::make_shared<IdealFamilySpace>(carrier, extra, has, label);

  Poset basis = pp.basis;
  pp.unit = [basis, carrier, to_k, top_chain](const Elem& e) {
    if (top_chain && e.tag == 1) return settle(*carrier, ideal::generated(Elem(0, {Elem(0, {*top_chain})})));
    return ideal::principal(Elem(0, {to_k(e)}));
  };
  Poset k = pp.compacts;
  pp.join = [k, t, carrier](const Elem& a, const Elem& b2) {
    auto comps = union_comps(a);
    for (auto& c : union_comps(b2)) comps.push_back(c);
    bool principal = true;
    for (const auto& c : comps) principal = principal && c.tag == 1;
    if (principal) {
      std::vector<Elem> members;
      for (const auto& c : comps) members.push_back(c[0]);
      return ideal::principal(Elem(0, k.set_normal_form(t, members)));
    }
    return settle(*carrier, ideal::generated(Elem(0, comps)));
  };
  return pp;
}

Report check_preservation(SpacePtr x, Theory t, Bound b) {
  Report r(std::string("preservation ") + theory_name(t) + " " + x->name());
  Classification cx = classify(*x, b);
  if (cx.kind != SpaceClass::algebraic)
    throw std::invalid_argument("check_preservation: " + x->name() + " is classified " + space_class_name(cx.kind) +
                                "; the presented construction needs an algebraic space");
  PresentedPower pp = powerspace_presented(x, t, b);
  const Space& uf = *pp.space;
  const Carrier& bc = pp.space->carrier();
  bool finite = uf.finite();
  auto judge = [&](bool v) { return finite ? Judgement::sure(v) : Judgement::sampled(v, b.depth); };

  // (i)
  Classification cu = classify(uf, b);
  r.judge("UF(X) is algebraic", {cu.kind == SpaceClass::algebraic, cu.exact && finite, cu.bound},
          space_class_name(cu.kind));

  // (ii)
  auto pts = x->sample(b.points());
  json cont_cx;
  Judgement cont = is_continuous(*x, uf, pp.unit, b, &cont_cx);
  r.judge("η continuous", cont, {}, cont_cx);
  bool wb_ok = true;
  json wb_cx;
  for (const auto& p : pts)
    for (const auto& q : pts)
      if (wb_ok && way_below(*x, p, q, b).verdict && !way_below(uf, pp.unit(p), pp.unit(q), b).verdict) {
        wb_ok = false;
        wb_cx = {{"x", x->show(p)}, {"y", x->show(q)}};
      }
  r.judge("η preserves ≪", judge(wb_ok), std::to_string(pts.size() * pts.size()) + " pairs", wb_cx);

  // (iii)
  auto us = uf.sample(finite ? SIZE_MAX : 10);
  // Approximants: the ideal itself when principal, else its first chain members.
  auto approx = [&](const Elem& d, std::size_t n) {
    if (ideal::is_principal(d)) return d;
    return ideal::principal(bc.chain_member(ideal::chain(d), n));
  };
  std::vector<Elem> probes;
  for (const auto& d : uf.sample(finite ? SIZE_MAX : 16))
    if (ideal::is_principal(d)) probes.push_back(d);
  bool pres = true, eq = true;
  json pres_cx, eq_cx;
  for (const auto& a : us)
    for (const auto& c : us) {
      Elem ac = pp.join(a, c);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) {
          Elem a2 = approx(a, i), c2 = approx(c, j);
          if (pres && !way_below(uf, pp.join(a2, c2), ac, b).verdict) {
            pres = false;
            pres_cx = {{"A", uf.show(a)}, {"B", uf.show(c)}, {"A'", uf.show(a2)}, {"B'", uf.show(c2)}};
          }
        }
      // Chains are cofinal, so the diagonal A'ₙ ∪ B'ₙ is cofinal in ⇓A ∪ ⇓B.
      std::vector<Elem> lower;
      for (std::size_t n = 0; n < kChainProbe; n += (ideal::is_principal(a) && ideal::is_principal(c)) ? kChainProbe : 1)
        lower.push_back(pp.join(approx(a, n), approx(c, n)));
      for (const auto& pr : probes) {
        bool lhs = way_below(uf, pr, ac, b).verdict;
        bool rhs = false;
        for (const auto& l : lower) rhs = rhs || uf.leq(pr, l);
        if (eq && lhs != rhs) {
          eq = false;
          eq_cx = {{"A", uf.show(a)}, {"B", uf.show(c)}, {"C", uf.show(pr)}, {"C ≪ A∪B", lhs}};
        }
      }
    }
  r.judge("∪ preserves ≪", judge(pres), std::to_string(us.size() * us.size()) + " pairs", pres_cx);
  r.judge("⇓(A ∪ B) = ↓(⇓A ∪ ⇓B)", judge(eq), std::to_string(probes.size()) + " probes", eq_cx);

  // (iv)
  auto it = it_space(pp.space, b);
  bool sup_ok = true;
  json sup_cx;
  std::string sup_detail;
  for (const auto& a : us) {
    try {
      Elem w = wb_ideal(*it, a, b);
      Elem s = it->sup(w);
      if (!(uf.leq(s, a) && uf.leq(a, s)) && sup_ok) {
        sup_ok = false;
        sup_cx = {{"A", uf.show(a)}, {"sup ⇓A", uf.show(s)}};
      }
    } catch (const std::exception& ex) {
      if (sup_ok) {
        sup_ok = false;
        sup_cx = {{"A", uf.show(a)}};
        sup_detail = ex.what();
      }
    }
  }
  r.judge("sup ∘ ⇓ = id", judge(sup_ok), sup_detail.empty() ? std::to_string(us.size()) + " points" : sup_detail, sup_cx);

  // (v)
  bool closure_ok = true;
  std::size_t deepest = 0;
  json cl_cx;
  for (const auto& c : cu.compacts) {
    if (!ideal::is_principal(c)) {
      closure_ok = false;
      cl_cx = {{"compact", uf.show(c)}};
      break;
    }
    const auto& members = Poset::members(ideal::point(c));
    std::optional<Elem> acc;
    for (const auto& k : members) {
      Elem single = ideal::principal(Elem(0, {k}));
      acc = acc ? pp.join(*acc, single) : single;
    }
    std::size_t n = 0;
    while ((std::size_t{1} << n) < members.size()) ++n;
    deepest = std::max(deepest, n);
    if (!acc || !ideal_equal(bc, *acc, c).value) {
      closure_ok = false;
      cl_cx = {{"compact", uf.show(c)}};
      break;
    }
  }
  for (const auto& d : us) {
    bool compact = way_below(uf, d, d, b).verdict;
    if (compact != ideal::is_principal(d) && closure_ok) {
      closure_ok = false;
      cl_cx = {{"point", uf.show(d)}, {"compact", compact}};
    }
  }
  r.judge("K(UF(X)) = closure of η(K(X))", judge(closure_ok),
          std::to_string(cu.compacts.size()) + " compacts, each in S_n with n ≤ " + std::to_string(deepest), cl_cx);
  return r;
}

// ---------------------------------------------------------------- lifted functors

namespace {

// ↓ of a monotone sequence as an ideal of I_T(X).
std::optional<Elem> match_sequence(const IdealSpace& it, const std::function<Elem(std::size_t)>& seq) {
  const Space& x = it.base();
  Elem last = seq(kChainProbe), mid = seq(kChainProbe / 2);
  if (last == mid) return ideal::principal(last);
  for (const auto& ti : it.inventory()) {
    const Elem& body = ti.body;
    bool ok = true;
    for (std::size_t n = 0; n < 16 && ok; ++n) ok = ideal_member(x, body, seq(n)).value;
    if (ok && ideal::kind_of(body) == ideal::Kind::generated)
      for (std::size_t n = 0; n < 16 && ok; ++n) {
        Elem c = x.chain_member(ideal::chain(body), n);
        bool below = false;
        for (std::size_t m = 0; m <= kChainProbe && !below; m += 8) below = x.leq(c, seq(m));
        ok = below;
      }
    if (ok) return body;
  }
  return std::nullopt;
}

std::function<Elem(std::size_t)> members_of(const Space& x, const Elem& d) {
  switch (ideal::kind_of(d)) {
    case ideal::Kind::principal: {
      Elem a = ideal::point(d);
      return [a](std::size_t) { return a; };
    }
    case ideal::Kind::generated: {
      Elem c = ideal::chain(d);
      return [&x, c](std::size_t n) { return x.chain_member(c, n); };
    }
    case ideal::Kind::finite: {
      Elem nd = normalize_ideal(x, d);
      if (ideal::is_principal(nd)) {
        Elem a = ideal::point(nd);
        return [a](std::size_t) { return a; };
      }
      break;
    }
  }
  throw std::domain_error("ideal without a maximum or a generating chain: " + show_ideal(x, d));
}

}  // namespace

std::optional<Elem> lift_T(const IdealSpace& ix, const IdealSpace& iy, const PointMap& f, const Elem& d) {
  auto m = members_of(ix.base(), d);
  return match_sequence(iy, [&](std::size_t n) { return f(m(n)); });
}

namespace {

std::vector<Elem> lift_samples(const IdealSpace& it, Bound b) {
  std::vector<Elem> out;
  for (const auto& ti : it.inventory()) out.push_back(ti.body);
  for (const auto& d : it.sample(b.points()))
    if (ideal::is_principal(d)) out.push_back(d);
  return out;
}

bool same_ideal(const IdealSpace& it, const Elem& a, const Elem& b) { return ideal_equal(it.base(), a, b).value; }

}  // namespace

Report check_lift_T(const IdealSpace& ix, const IdealSpace& iy, const PointMap& f, Bound b) {
  Report r("T(f)");
  bool exact = ix.finite();
  auto jd = [&](bool v) { return exact ? Judgement::sure(v) : Judgement::sampled(v, b.depth); };
  auto ds = lift_samples(ix, b);
  bool member = true, principal = true, sup = true;
  json m_cx, p_cx, s_cx;
  for (const auto& d : ds) {
    auto t = lift_T(ix, iy, f, d);
    if (!t) {
      if (member) m_cx = {{"D", ix.show(d)}};
      member = false;
      continue;
    }
    if (ideal::is_principal(d) && !same_ideal(iy, *t, ideal::principal(f(ideal::point(d))))) {
      if (principal) p_cx = {{"x", ix.base().show(ideal::point(d))}};
      principal = false;
    }
    Elem lhs = iy.sup(*t), rhs = f(ix.sup(d));
    if (!(iy.base().leq(lhs, rhs) && iy.base().leq(rhs, lhs))) {
      if (sup) s_cx = {{"D", ix.show(d)}, {"sup T(f)(D)", iy.base().show(lhs)}, {"f(sup D)", iy.base().show(rhs)}};
      sup = false;
    }
  }
  r.judge("↓f(D) ∈ I_T(Y)", jd(member), std::to_string(ds.size()) + " ideals", m_cx);
  r.judge("T(f)(↓x) = ↓f(x)", jd(principal), {}, p_cx);
  r.judge("sup T(f)(D) = f(sup D)", jd(sup), {}, s_cx);
  if (member) {
    PointMap tf = [&](const Elem& d) { return *lift_T(ix, iy, f, d); };
    json c_cx;
    Judgement c = is_continuous(ix, iy, tf, b, &c_cx);
    r.judge("T(f) continuous", c, {}, c_cx);
  }
  return r;
}

Report check_T_functor(const IdealSpace& ix, const IdealSpace& iy, const IdealSpace& iz, const PointMap& f,
                       const PointMap& g, Bound b) {
  Report r("T functor");
  bool exact = ix.finite();
  auto jd = [&](bool v) { return exact ? Judgement::sure(v) : Judgement::sampled(v, b.depth); };
  PointMap id = [](const Elem& e) { return e; };
  PointMap gf = [&](const Elem& e) { return g(f(e)); };
  bool ident = true, comp = true;
  json i_cx, c_cx;
  for (const auto& d : lift_samples(ix, b)) {
    auto t = lift_T(ix, ix, id, d);
    if (!t || !same_ideal(ix, *t, d)) {
      if (ident) i_cx = {{"D", ix.show(d)}};
      ident = false;
    }
    auto lhs = lift_T(ix, iz, gf, d);
    auto mid = lift_T(ix, iy, f, d);
    std::optional<Elem> rhs = mid ? lift_T(iy, iz, g, *mid) : std::nullopt;
    if (!lhs || !rhs || !same_ideal(iz, *lhs, *rhs)) {
      if (comp) c_cx = {{"D", ix.show(d)}};
      comp = false;
    }
  }
  r.judge("T(id) = id", jd(ident), {}, i_cx);
  r.judge("T(g ∘ f) = T(g) ∘ T(f)", jd(comp), {}, c_cx);
  return r;
}

std::optional<Elem> lift_op(const IdealSpace& it, const OpN& f, const std::vector<Elem>& ideals) {
  std::vector<std::function<Elem(std::size_t)>> ms;
  for (const auto& d : ideals) ms.push_back(members_of(it.base(), d));
  // Chains are cofinal in their ideals, so the diagonal is cofinal in the product.
  return match_sequence(it, [&](std::size_t n) {
    std::vector<Elem> args;
    for (const auto& m : ms) args.push_back(m(n));
    return f(args);
  });
}

namespace {

std::optional<Elem> eval_lifted(const IdealSpace& it, const std::vector<OpN>& ops, const Elem& t,
                                const std::vector<Elem>& env) {
  if (term::is_var(t)) return env.at(term::var_index(t));
  std::vector<Elem> args;
  for (const auto& a : t.parts) {
    auto v = eval_lifted(it, ops, a, env);
    if (!v) return std::nullopt;
    args.push_back(*v);
  }
  return lift_op(it, ops.at(static_cast<std::size_t>(t.tag)), args);
}

}  // namespace

Report check_lifted_algebra(const IdealSpace& it, const AlgebraTheory& e, const std::vector<OpN>& ops, Bound b) {
  Report r("T̄");
  bool exact = it.finite();
  auto jd = [&](bool v) { return exact ? Judgement::sure(v) : Judgement::sampled(v, b.depth); };
  auto ds = lift_samples(it, b);
  if (!exact && ds.size() > 6) ds.resize(6);
  const Space& x = it.base();

  bool agree = true, closed = true, mono = true;
  json a_cx, c_cx, m_cx;
  for (std::size_t op = 0; op < e.sig.ops.size(); ++op) {
    std::size_t k = e.sig.ops[op].arity;
    for_tuples(k, ds.size(), [&](const std::vector<std::size_t>& t) {
      std::vector<Elem> args;
      for (auto i : t) args.push_back(ds[i]);
      auto v = lift_op(it, ops[op], args);
      json cx = {{"op", e.sig.ops[op].symbol}, {"args", json::array()}};
      for (const auto& a : args) cx["args"].push_back(it.show(a));
      if (!v || !it.contains(*v)) {
        if (closed) c_cx = cx;
        closed = false;
        return true;
      }
      bool all_principal = true;
      std::vector<Elem> pts;
      for (const auto& a : args) {
        all_principal = all_principal && ideal::is_principal(a);
        if (ideal::is_principal(a)) pts.push_back(ideal::point(a));
      }
      if (all_principal && !same_ideal(it, *v, ideal::principal(ops[op](pts)))) {
        if (agree) a_cx = cx;
        agree = false;
      }
      for (std::size_t i = 0; i < k; ++i)
        for (const auto& bigger : ds) {
          if (!it.leq(args[i], bigger)) continue;
          auto moved = args;
          moved[i] = bigger;
          auto w = lift_op(it, ops[op], moved);
          if (w && !it.leq(*v, *w)) {
            if (mono) m_cx = cx;
            mono = false;
          }
        }
      return true;
    });
  }
  r.judge("results lie in I_T(X)", jd(closed), std::to_string(ds.size()) + " ideals", c_cx);
  r.judge("T̄ agrees with the operations on principal ideals", jd(agree), {}, a_cx);
  r.judge("lifted operations monotone", jd(mono), {}, m_cx);
  for (const auto& q : e.laws) {
    std::size_t k = std::max(term::arity(q.lhs), term::arity(q.rhs));
    bool ok = true;
    json cx;
    std::size_t count = 0;
    for_tuples(k, ds.size(), [&](const std::vector<std::size_t>& t) {
      std::vector<Elem> env;
      for (auto i : t) env.push_back(ds[i]);
      ++count;
      auto l = eval_lifted(it, ops, q.lhs, env);
      auto rr = eval_lifted(it, ops, q.rhs, env);
      if (!l || !rr || !ideal_subset(x, *l, *rr).value) {
        ok = false;
        cx = json::object();
        for (std::size_t v = 0; v < env.size(); ++v) cx[v < e.vars.size() ? e.vars[v] : "v" + std::to_string(v)] = it.show(env[v]);
        return false;
      }
      return true;
    });
    r.judge("lifted " + e.show(q), jd(ok), std::to_string(count) + " assignments", cx);
  }
  return r;
}

FiniteAlgebra lift_Tbar(const FiniteAlgebra& a) {
  const FinitePoset& p = a.carrier();
  auto x = make_poset_space(Poset::explicit_finite(p), TopologyKind::alexandrov);
  auto it = it_space(x);
  auto ideals = it->sample(SIZE_MAX);
  std::size_t n = ideals.size();
  auto index = [&](const Elem& d) -> std::size_t {
    for (std::size_t i = 0; i < n; ++i)
      if (same_ideal(*it, ideals[i], d)) return i;
    throw std::logic_error("lift_Tbar: ideal outside I_T: " + it->show(d));
  };
  std::vector<std::string> names;
  std::vector<std::uint8_t> leq(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(it->show(ideals[i]));
    for (std::size_t j = 0; j < n; ++j) leq[i * n + j] = it->leq(ideals[i], ideals[j]);
  }
  std::vector<std::vector<std::size_t>> tables;
  for (std::size_t op = 0; op < a.signature().ops.size(); ++op) {
    OpN f = [&](const std::vector<Elem>& args) {
      std::vector<std::size_t> is;
      for (const auto& e : args) is.push_back(static_cast<std::size_t>(e.tag));
      return Elem(static_cast<std::int64_t>(a.apply(op, is)));
    };
    std::size_t k = a.signature().ops[op].arity;
    std::vector<std::size_t> t(ipow(n, k));
    for (std::size_t code = 0; code < t.size(); ++code) {
      std::vector<Elem> args;
      for (auto i : decode(code, k, n)) args.push_back(ideals[i]);
      auto v = lift_op(*it, f, args);
      if (!v) throw std::logic_error("lift_Tbar: inventory not closed");
      t[code] = index(*v);
    }
    tables.push_back(std::move(t));
  }
  return FiniteAlgebra(a.signature(), FinitePoset(names, leq), tables);
}

}  // namespace dspace
