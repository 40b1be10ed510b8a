// dspace: directed spaces, ideal completions, b-posets, abstract bases and free algebras.
// Exit codes: 0 pass, 1 refuted, 2 usage error, 3 budget exceeded.
#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include "dspace/bposet.hpp"
#include "dspace/corpus.hpp"
#include "dspace/describe.hpp"
#include "dspace/free.hpp"
#include "dspace/nab.hpp"
#include "dspace/suite.hpp"

using namespace dspace;

namespace {

enum Exit { kPass = 0, kRefuted = 1, kUsage = 2, kBudget = 3 };

struct Options {
  std::size_t depth = 64;
  std::size_t budget = 20000;
  std::string format = "text";
  std::uint64_t seed = 1;
  std::size_t jobs = 1;
  std::optional<std::size_t> prefix;
  std::string theory;
  std::string x, y, set;

  json to_json() const {
    json j = {{"depth", depth}, {"budget", budget}, {"seed", seed}};
    if (prefix) j["prefix"] = *prefix;
    if (!theory.empty()) j["theory"] = theory;
    if (!x.empty()) j["x"] = x;
    if (!y.empty()) j["y"] = y;
    if (!set.empty()) j["set"] = set;
    return j;
  }
  static Options from_json(const json& j) {
    Options o;
    o.depth = j.value("depth", o.depth);
    o.budget = j.value("budget", o.budget);
    o.seed = j.value("seed", o.seed);
    if (j.contains("prefix")) o.prefix = j["prefix"].get<std::size_t>();
    o.theory = j.value("theory", std::string{});
    o.x = j.value("x", std::string{});
    o.y = j.value("y", std::string{});
    o.set = j.value("set", std::string{});
    return o;
  }
};

// A parsed invocation; reports carry it as replay data.
struct Command {
  std::string verb, subverb;
  std::vector<json> inputs;
  Options opt;

  json to_json() const {
    return {{"verb", verb}, {"subverb", subverb}, {"descriptions", inputs}, {"options", opt.to_json()}};
  }
};

struct Output {
  Report report;
  json result;       // constructed object, null when the command only checks
  std::string text;  // extra human-readable lines
  std::string dot;   // set when the object can be drawn
  bool brief = false;  // text mode shows only `text`
};

struct Usage : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string fnv_digest(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------- inputs

const json& need(const json& d, const char* field) {
  if (!d.contains(field)) throw std::invalid_argument(std::string("description: missing field '") + field + "'");
  return d[field];
}

const json& input(const Command& c, std::size_t i) {
  if (i >= c.inputs.size())
    throw Usage(c.verb + " " + c.subverb + " needs " + std::to_string(i + 1) + " description file(s)");
  return c.inputs[i];
}

SpacePtr space_of(const json& d) {
  if (d.contains("space")) return space_from_json(d["space"]);
  if (d.contains("poset")) return make_poset_space(Poset::from_json(d["poset"]), TopologyKind::alexandrov);
  throw std::invalid_argument("description: needs 'space' or 'poset'");
}

FinitePoset finite_of(const json& d) { return finite_table(Poset::from_json(need(d, "poset"))); }

FinitePoset carrier_table(const Carrier& c) {
  if (!c.finite()) throw std::invalid_argument("the carrier is infinite; this command needs a finite one");
  auto pts = c.sample(std::size_t{1} << 16);
  std::vector<std::string> names;
  std::vector<std::uint8_t> leq(pts.size() * pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    names.push_back(c.show(pts[i]));
    for (std::size_t k = 0; k < pts.size(); ++k) leq[i * pts.size() + k] = c.leq(pts[i], pts[k]);
  }
  return FinitePoset(names, leq);
}

Theory theory_opt(const Options& o) {
  if (o.theory.empty()) throw Usage("--theory lower|upper|convex is required");
  try {
    return theory_from_name(o.theory);
  } catch (const std::exception& e) {
    throw Usage(e.what());
  }
}

AlgebraTheory theory_of(const json& d) { return AlgebraTheory::from_json(need(d, "theory")); }

// A map between finite posets: an array of target names in source order, or
// an object from source names to target names.
std::vector<std::size_t> map_of(const json& j, const FinitePoset& a, const FinitePoset& b, const std::string& where) {
  std::vector<std::size_t> f(a.size());
  auto target = [&](const json& v, const std::string& at) {
    if (v.is_number_unsigned() && v.get<std::size_t>() < b.size()) return v.get<std::size_t>();
    if (v.is_string())
      if (auto i = b.index_of(v.get<std::string>())) return *i;
    throw std::invalid_argument(at + ": unknown target element " + v.dump());
  };
  if (j.is_array()) {
    if (j.size() != a.size()) throw std::invalid_argument(where + ": expected " + std::to_string(a.size()) + " entries");
    for (std::size_t i = 0; i < a.size(); ++i) f[i] = target(j[i], where + "[" + std::to_string(i) + "]");
  } else if (j.is_object()) {
    if (j.size() != a.size()) throw std::invalid_argument(where + ": expected " + std::to_string(a.size()) + " entries");
    for (auto it = j.begin(); it != j.end(); ++it) {
      auto i = a.index_of(it.key());
      if (!i) throw std::invalid_argument(where + ": unknown source element '" + it.key() + "'");
      f[*i] = target(it.value(), where + "." + it.key());
    }
  } else {
    throw std::invalid_argument(where + ": expected an array or object");
  }
  return f;
}

Elem point_of(const Space& x, const std::string& name, const char* flag) {
  if (name.empty()) throw Usage(std::string(flag) + " is required");
  for (const auto& e : x.sample(4096))
    if (x.show(e) == name) return e;
  throw std::invalid_argument(std::string(flag) + ": no point named '" + name + "' in " + x.name());
}

std::vector<Elem> points_of(const Space& x, const std::string& list) {
  std::vector<Elem> out;
  std::stringstream ss(list);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(point_of(x, item, "--set"));
  return out;
}

json poset_json(const FinitePoset& p) { return Poset::explicit_finite(p).to_json(); }

// ---------------------------------------------------------------- verbs

Output run_space(const Command& c) {
  Output o;
  SpacePtr x = space_of(input(c, 0));
  Bound b{c.opt.depth};
  const std::string& v = c.subverb;
  if (v == "classify" || v == "coreflect") {
    SpacePtr s = v == "coreflect" ? coreflect(x, b) : x;
    Classification cl = classify(*s, b);
    o.report = Report(v + " " + s->name());
    Judgement j{true, cl.exact, cl.bound};
    o.report.judge(std::string("classified ") + space_class_name(cl.kind), j, cl.detail);
    json ks = json::array();
    for (const auto& k : cl.compacts) {
      if (ks.size() == 32) {
        ks.push_back("…");
        break;
      }
      ks.push_back(s->show(k));
    }
    o.result = {{"space", s->to_json()}, {"class", space_class_name(cl.kind)}, {"compacts", ks}, {"witness", cl.witness}};
  } else if (v == "directed-open") {
    auto r = is_directed_open(*x, Subset::of(points_of(*x, c.opt.set)), b);
    o.report = Report("directed-open " + x->name());
    o.report.judge(open_verdict_name(r.verdict), {true, r.exact, r.bound}, r.detail);
    o.result = {{"verdict", open_verdict_name(r.verdict)}, {"counterexample", r.counterexample}};
  } else if (v == "way-below") {
    Elem a = point_of(*x, c.opt.x, "--x"), e = point_of(*x, c.opt.y, "--y");
    auto w = way_below(*x, a, e, b);
    o.report = Report("way-below " + x->name());
    o.report.judge(c.opt.x + " ≪ " + c.opt.y, w.judgement(), w.evidence, w.refuting_family);
  } else if (v == "specialization") {
    o.report = check_specialization(*x, b);
  } else if (v == "dot") {
    o.report = Report("dot " + x->name());
    o.dot = export_dot(*x, c.opt.prefix);
    o.report.pass("exported");
  } else {
    throw Usage("space: unknown action '" + v + "' (classify, coreflect, directed-open, way-below, specialization, dot)");
  }
  return o;
}

Output run_ideal(const Command& c) {
  Output o;
  Bound b{c.opt.depth};
  SpacePtr x = space_of(input(c, 0));
  const std::string& v = c.subverb;
  if (v == "build" || v == "sup") {
    auto it = it_space(x, b);
    o.report = check_ideal_completion(*it, b);
    json inv = json::array();
    for (const auto& t : it->inventory()) inv.push_back({{"ideal", it->show(t.body)}, {"sup", x->show(t.sup)}});
    o.result = {{"space", x->to_json()}, {"inventory", inv}};
  } else if (v == "wb") {
    auto it = it_space(x, b);
    Elem p = point_of(*x, c.opt.x, "--x");
    o.report = Report("⇓" + c.opt.x);
    Elem d = wb_ideal(*it, p, b);
    o.report.pass("⇓" + c.opt.x + " = " + it->show(d));
    o.result = {{"ideal", it->show(d)}};
  } else if (v == "adjunction") {
    o.report = check_adjunction(x, b);
  } else if (v == "product-check") {
    o.report = it_product_check(x, space_of(input(c, 1)), b);
  } else {
    throw Usage("ideal: unknown action '" + v + "' (build, sup, wb, adjunction, product-check)");
  }
  return o;
}

Output run_bposet(const Command& c) {
  Output o;
  Bound b{c.opt.depth};
  const std::string& v = c.subverb;
  auto bp = [&](std::size_t i) { return BPoset::from_json(need(input(c, i), "bposet")); };
  if (v == "check") {
    o.report = check_bposet(bp(0), c.opt.depth);
  } else if (v == "g") {
    BPoset g = functor_G(space_of(input(c, 0)), b);
    o.report = check_bposet(g, c.opt.depth);
    o.result = g.to_json();
  } else if (v == "h" || v == "sobrify") {
    BPoset p = bp(0);
    std::shared_ptr<const IdealFamilySpace> h = v == "h" ? functor_H(p) : sobrification(p, b);
    Classification cl = classify(*h, b);
    o.report = Report(v + " " + p.label());
    o.report.judge(std::string("classified ") + space_class_name(cl.kind), {cl.kind == SpaceClass::algebraic, cl.exact, cl.bound},
                   cl.detail, cl.witness);
    o.result = h->to_json();
  } else if (v == "roundtrip") {
    const json& d = input(c, 0);
    o.report = d.contains("bposet") ? roundtrip_bposet(bp(0), b) : roundtrip_space(space_of(d), b);
  } else if (v == "product") {
    BPoset p = BPoset::product(bp(0), bp(1), b);
    o.report = check_bposet(p, c.opt.depth);
    o.result = p.to_json();
  } else if (v == "exp") {
    FiniteBPoset p = finite_pi(carrier_table(bp(0).base())), q = finite_pi(carrier_table(bp(1).base()));
    std::vector<FiniteBPoset> tests;
    for (std::size_t n = 1; n <= 2; ++n)
      for (const auto& fp : posets_up_to_iso(n)) tests.push_back(finite_pi(fp));
    o.report = check_finite_exponential_laws(p, q, tests);
    FiniteExponential e = finite_exponential(p, q);
    o.result = {{"base", poset_json(e.exp.base)}, {"ideals", e.exp.ideals.size()}};
    o.dot = export_dot(e.exp.base, std::vector<bool>(e.exp.base.size(), true));
  } else if (v == "reflect") {
    BPoset r = reflect(bp(0), b);
    o.report = check_bposet(r, c.opt.depth);
    o.result = r.to_json();
  } else {
    throw Usage("bposet: unknown action '" + v + "' (check, g, h, roundtrip, product, exp, reflect, sobrify)");
  }
  return o;
}

Output run_nab(const Command& c) {
  Output o;
  Bound b{c.opt.depth};
  const std::string& v = c.subverb;
  auto nab = [&](std::size_t i) { return Nab::from_json(need(input(c, i), "nab")); };
  if (v == "check") {
    o.report = check_nab(nab(0), c.opt.depth);
  } else if (v == "space") {
    Nab a = nab(0);
    o.report = roundtrip_nab_space(a, b);
    Classification cl = classify(*nab_space(a, c.opt.depth), b);
    o.result = {{"class", space_class_name(cl.kind)}};
  } else if (v == "to-nab") {
    Nab a = Nab::of_space(space_of(input(c, 0)), b);
    o.report = roundtrip_space_nab(space_of(input(c, 0)), b);
    o.result = a.to_json();
  } else if (v == "normal-map") {
    const json& d = input(c, 0);
    Nab a = Nab::from_json(need(d, "nab")), t = Nab::from_json(need(d, "target"));
    if (!a.poset() || !t.poset() || !a.poset()->finite())
      throw std::invalid_argument("normal-map: the map table needs a finite source basis");
    FinitePoset fa = finite_table(*a.poset()), ft = carrier_table(t.carrier());
    auto f = map_of(need(d, "map"), fa, ft, "description.map");
    auto src = a.poset()->elements();
    auto dst = t.carrier().sample(std::size_t{1} << 16);
    PointMap pf = [&](const Elem& e) {
      for (std::size_t i = 0; i < src.size(); ++i)
        if (src[i] == e) return dst.at(f[i]);
      throw std::domain_error("normal-map: point outside the source basis");
    };
    o.report = check_normal_map(pf, a, t, c.opt.depth);
  } else if (v == "exp") {
    FiniteMapSpace e = con_exponential(finite_of(input(c, 0)), finite_of(input(c, 1)));
    o.report = check_con_exponential(e);
    o.result = {{"maps", e.maps.size()}, {"order", poset_json(e.order)}};
    o.dot = export_dot(e.order, std::vector<bool>(e.order.size(), true));
  } else if (v == "ev-curry") {
    const json& d = input(c, 0);
    FinitePoset z = finite_table(Poset::from_json(need(d, "z"))), x = finite_table(Poset::from_json(need(d, "x"))),
                y = finite_table(Poset::from_json(need(d, "y")));
    auto f = map_of(need(d, "map"), finite_product(z, x), y, "description.map");
    o.report = eval_and_curry(z, x, y, f);
  } else {
    throw Usage("nab: unknown action '" + v + "' (check, space, to-nab, normal-map, exp, ev-curry)");
  }
  return o;
}

std::vector<FiniteAlgebra> algebras_of(const json& d, const char* field, const Signature& s) {
  std::vector<FiniteAlgebra> out;
  const json& a = need(d, field);
  if (!a.is_array()) throw std::invalid_argument(std::string("description.") + field + ": expected an array");
  for (const auto& j : a) out.push_back(FiniteAlgebra::from_json(j, s));
  return out;
}

json free_json(const FreeAlgebraResult& f) {
  json unit = json::array();
  for (auto u : f.unit) unit.push_back(f.carrier.name(u));
  json j = {{"carrier", poset_json(f.carrier)}, {"unit", unit}, {"stabilized", f.stabilized}, {"depth", f.depth},
            {"log", f.log}};
  if (f.algebra) j["algebra"] = f.algebra->to_json();
  return j;
}

Output run_free(const Command& c) {
  Output o;
  const std::string& v = c.subverb;
  if (v == "check-algebra") {
    const json& d = input(c, 0);
    AlgebraTheory e = theory_of(d);
    o.report = check_algebra(FiniteAlgebra::from_json(need(d, "algebra"), e.sig), e);
  } else if (v == "product") {
    const json& d = input(c, 0);
    AlgebraTheory e = theory_of(d);
    auto fs = algebras_of(d, "algebras", e.sig);
    ProductAlgebra p = algebra_product(e.sig, fs);
    o.report = check_product(p, fs, algebras_up_to(e, 2));
    o.result = p.algebra.to_json();
  } else if (v == "equalizer") {
    const json& d = input(c, 0);
    AlgebraTheory e = theory_of(d);
    FiniteAlgebra a = FiniteAlgebra::from_json(need(d, "algebra"), e.sig);
    FiniteAlgebra b = FiniteAlgebra::from_json(need(d, "target"), e.sig);
    auto f = map_of(need(d, "f"), a.carrier(), b.carrier(), "description.f");
    auto g = map_of(need(d, "g"), a.carrier(), b.carrier(), "description.g");
    Equalizer q = algebra_equalizer(a, b, f, g);
    o.report = check_equalizer(q, a, b, f, g, algebras_up_to(e, 2));
    o.result = q.algebra.to_json();
  } else if (v == "free") {
    const json& d = input(c, 0);
    AlgebraTheory e = theory_of(d);
    FreeAlgebraResult f = free_ordered_algebra(finite_of(d), e, c.opt.depth, c.opt.budget);
    o.report = Report("free algebra over " + std::to_string(f.unit.size()) + " generators");
    if (f.stabilized) {
      o.report.pass("stabilized", "at level " + std::to_string(f.depth) + " with " + std::to_string(f.carrier.size()) +
                                      " classes");
      o.report.merge(check_algebra(*f.algebra, e));
    } else {
      o.report.bounded("stabilized", c.opt.depth, "no fixpoint up to depth " + std::to_string(c.opt.depth));
    }
    o.result = free_json(f);
    o.dot = export_dot(f.carrier, std::vector<bool>(f.carrier.size(), true));
  } else if (v == "power") {
    const json& d = input(c, 0);
    Theory t = theory_opt(c.opt);
    FreeAlgebraResult f = powerspace(finite_of(d), t);
    o.report = check_algebra(*f.algebra, power_theory(t));
    o.result = free_json(f);
    o.dot = export_dot(f.carrier, std::vector<bool>(f.carrier.size(), true));
  } else if (v == "verify-universal") {
    const json& d = input(c, 0);
    AlgebraTheory e = theory_of(d);
    FinitePoset x = finite_of(d);
    FreeAlgebraResult f = free_ordered_algebra(x, e, c.opt.depth, c.opt.budget);
    if (!f.stabilized) throw BudgetExceeded("free algebra did not stabilize up to depth " + std::to_string(c.opt.depth), f.log);
    o.report = verify_universal_property(x, f, FiniteAlgebra::from_json(need(d, "target"), e.sig), e);
  } else if (v == "preservation") {
    o.report = check_preservation(space_of(input(c, 0)), theory_opt(c.opt), Bound{c.opt.depth});
  } else {
    throw Usage("free: unknown action '" + v +
                "' (check-algebra, product, equalizer, free, power, verify-universal, preservation)");
  }
  return o;
}

Output run_suite(const Command& c) {
  std::vector<int> ids;
  try {
    ids = suite::suite_members(c.subverb);
  } catch (const std::invalid_argument& e) {
    throw Usage(e.what());
  }
  suite::Options so;
  so.seed = c.opt.seed;
  std::vector<Report> reports(ids.size());
  std::size_t jobs = std::max<std::size_t>(1, c.opt.jobs);
  for (std::size_t start = 0; start < ids.size(); start += jobs) {
    std::vector<std::future<Report>> batch;
    for (std::size_t k = start; k < std::min(ids.size(), start + jobs); ++k)
      batch.push_back(std::async(std::launch::async, [&, k] { return suite::run_criterion(ids[k], so); }));
    for (std::size_t k = 0; k < batch.size(); ++k) reports[start + k] = batch[k].get();
  }
  Output o;
  o.report = Report("suite " + c.subverb);
  json replays = json::array();
  std::ostringstream lines;
  for (const auto& r : reports) {
    o.report.merge(r, r.title());
    lines << (r.ok() ? "PASS " : "FAIL ") << r.title() << " (" << r.seconds << " s)"
          << (r.ok() && r.has_bounded() ? " [verified up to bound]" : "") << "\n";
    if (!r.ok()) lines << r.to_text();
    if (r.inputs.is_object() && r.inputs.contains("replays"))
      for (const auto& x : r.inputs["replays"]) replays.push_back(x);
  }
  o.text = lines.str();
  o.brief = true;
  if (!replays.empty()) o.result = {{"replays", replays}};
  return o;
}

Output run(const Command& c) {
  if (c.verb == "space") return run_space(c);
  if (c.verb == "ideal") return run_ideal(c);
  if (c.verb == "bposet") return run_bposet(c);
  if (c.verb == "nab") return run_nab(c);
  if (c.verb == "free") return run_free(c);
  if (c.verb == "suite") return run_suite(c);
  throw Usage("unknown command '" + c.verb + "'");
}

// ---------------------------------------------------------------- output

void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out);
  if (!f) throw std::runtime_error(out + ": cannot write");
  f << text;
}

std::string render(const Output& o, const std::string& format) {
  if (format == "json") {
    json j = o.report.to_json();
    if (!o.result.is_null()) j["result"] = o.result;
    return j.dump(2) + "\n";
  }
  if (format == "dot") {
    if (o.dot.empty()) throw Usage("this command has no finite object to draw; --format dot is unavailable");
    return o.dot;
  }
  if (o.brief) return o.text + (o.report.ok() ? "=> pass\n" : "=> FAIL\n");
  std::string s = o.text + o.report.to_text();
  if (!o.result.is_null()) s += "  result " + o.result.dump() + "\n";
  return s;
}

int exit_code(const Report& r) { return r.ok() ? kPass : kRefuted; }

// Replays a saved report: suite mutations by their recorded instance, other
// commands by re-running the recorded invocation.
int replay(const std::string& path, const std::string& format, const std::string& out) {
  std::ifstream in(path);
  if (!in) throw Usage(path + ": cannot open");
  json saved = json::parse(in);
  const json& inputs = saved.contains("inputs") ? saved["inputs"] : saved;
  std::vector<json> entries;
  if (inputs.contains("replays")) entries = inputs["replays"].get<std::vector<json>>();
  else if (saved.contains("result") && saved["result"].contains("replays"))
    entries = saved["result"]["replays"].get<std::vector<json>>();
  else if (inputs.contains("mutation")) entries = {inputs};
  std::string text;
  bool refuted = false, mismatch = false;
  if (!entries.empty()) {
    Report all("replay " + path);
    for (const auto& e : entries) {
      Report r = suite::replay(e);
      const Check* f = r.first_failure();
      if (e.contains("expect")) {
        bool same = f && f->name == e["expect"]["check"] && f->counterexample == e["expect"]["counterexample"];
        all.expect("reproduces " + e["mutation"].get<std::string>(), same,
                   f ? f->name + ": " + f->counterexample.dump() : "no failure");
        mismatch = mismatch || !same;
      }
      refuted = refuted || !r.ok();
      all.merge(r, e["mutation"].get<std::string>());
    }
    text = format == "json" ? all.to_json().dump(2) + "\n" : all.to_text();
    emit(text, out);
    return mismatch ? kUsage : refuted ? kRefuted : kPass;
  }
  if (!inputs.contains("verb")) throw Usage(path + ": no replay data");
  Command c{inputs["verb"], inputs.value("subverb", std::string{}), inputs["descriptions"].get<std::vector<json>>(),
            Options::from_json(inputs.value("options", json::object()))};
  Output o = run(c);
  o.report.inputs = c.to_json();
  o.report.digest = fnv_digest(c.to_json().dump());
  emit(render(o, format), out);
  return exit_code(o.report);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dspace: directed spaces, ideal completions, b-posets, abstract bases and free algebras"};
  app.require_subcommand(0, 1);
  Options opt;
  std::string out, replay_path;
  std::vector<std::string> files;
  std::string action;
  app.add_option("--replay", replay_path, "Re-run the instance recorded in a saved JSON report");
  app.add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text", "dot"}));
  app.add_option("--out", out, "Write output to this file");

  auto add_common = [&](CLI::App* s) {
    s->add_option("--depth", opt.depth, "Sampling depth, or term depth for free algebras")->check(CLI::PositiveNumber);
    s->add_option("--budget", opt.budget, "Maximum terms per level")->check(CLI::PositiveNumber);
    s->add_option("--format", opt.format, "Output format")->check(CLI::IsMember({"json", "text", "dot"}));
    s->add_option("--seed", opt.seed, "Seed for sampled instances");
    s->add_option("--out", out, "Write output to this file");
  };
  struct Verb {
    const char* name;
    const char* help;
  };
  std::vector<Verb> verbs = {
      {"space", "classify, coreflect, directed-open, way-below, specialization, dot"},
      {"ideal", "build, sup, wb, adjunction, product-check"},
      {"bposet", "check, g, h, roundtrip, product, exp, reflect, sobrify"},
      {"nab", "check, space, to-nab, normal-map, exp, ev-curry"},
      {"free", "check-algebra, product, equalizer, free, power, verify-universal, preservation"},
  };
  for (const auto& v : verbs) {
    auto* s = app.add_subcommand(v.name, v.help);
    s->add_option("action", action, v.help)->required();
    s->add_option("files", files, "Description files ({\"schema\": 1, ...})");
    add_common(s);
    s->add_option("--prefix", opt.prefix, "Export only the first N points of an infinite space")
        ->check(CLI::PositiveNumber);
    s->add_option("--theory", opt.theory, "Powerspace theory")->check(CLI::IsMember({"lower", "upper", "convex"}));
    s->add_option("--x", opt.x, "Point name");
    s->add_option("--y", opt.y, "Point name");
    s->add_option("--set", opt.set, "Comma-separated point names");
  }
  auto* su = app.add_subcommand("suite", "Run the acceptance matrix: paper or quick");
  su->add_option("name", action, "paper | quick")->required();
  su->add_option("--jobs", opt.jobs, "Criteria run concurrently")->check(CLI::PositiveNumber);
  add_common(su);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kPass : kUsage;
  }

  try {
    if (!replay_path.empty()) return replay(replay_path, opt.format, out);
    if (app.get_subcommands().empty()) {
      std::cerr << app.help();
      return kUsage;
    }
    Command c{app.get_subcommands().front()->get_name(), action, {}, opt};
    static const std::map<std::string, std::vector<std::string>> fields = {
        {"space", {"space", "poset"}},
        {"ideal", {"space", "poset"}},
        {"bposet", {"bposet", "space", "poset"}},
        {"nab", {"nab", "target", "map", "space", "poset", "x", "y", "z"}},
        {"free", {"theory", "poset", "space", "algebra", "algebras", "target", "f", "g"}},
    };
    if (c.verb != "suite")
      for (const auto& f : files) {
        try {
          c.inputs.push_back(read_description(f, fields.at(c.verb)));
        } catch (const std::invalid_argument& e) {
          throw Usage(e.what());
        }
      }
    Output o = run(c);
    o.report.inputs = c.verb == "suite" ? o.result : c.to_json();
    o.report.digest = fnv_digest(c.to_json().dump());
    emit(render(o, opt.format), out);
    return exit_code(o.report);
  } catch (const Usage& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    if (!e.partial_log.is_null()) std::cerr << e.partial_log.dump(2) << "\n";
    return kBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
}
