#include "dspace/describe.hpp"

#include <fstream>
#include <sstream>

#include "dspace/ideal_space.hpp"
#include "dspace/nab.hpp"

namespace dspace {

namespace {

void only(const json& j, const std::vector<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end())
      throw std::invalid_argument(where + ": unknown field '" + it.key() + "'");
}

std::vector<Elem> parse_names(const Poset& p, const json& names, const std::string& where) {
  if (!names.is_array()) throw std::invalid_argument(where + ": expected an array of element names");
  std::vector<Elem> out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (!names[i].is_string()) throw std::invalid_argument(where + "[" + std::to_string(i) + "]: expected a name");
    try {
      out.push_back(p.parse(names[i].get<std::string>()));
    } catch (const std::exception& e) {
      throw std::invalid_argument(where + "[" + std::to_string(i) + "]: " + e.what());
    }
  }
  return out;
}

SpacePtr space_at(const json& j, const std::string& where) {
  if (!j.is_object()) throw std::invalid_argument(where + ": expected an object");
  if (j.contains("product")) {
    only(j, {"product"}, where);
    if (!j["product"].is_array()) throw std::invalid_argument(where + ".product: expected an array");
    std::vector<SpacePtr> fs;
    for (std::size_t i = 0; i < j["product"].size(); ++i)
      fs.push_back(space_at(j["product"][i], where + ".product[" + std::to_string(i) + "]"));
    return product(std::move(fs));
  }
  if (j.contains("nab")) {
    only(j, {"nab", "depth"}, where);
    std::size_t depth = j.value("depth", std::size_t{64});
    try {
      return nab_space(Nab::from_json(j["nab"]), depth);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + ".nab: " + e.what());
    }
  }
  if (j.contains("ideal_completion")) {
    only(j, {"ideal_completion"}, where);
    return it_space(space_at(j["ideal_completion"], where + ".ideal_completion"));
  }
  only(j, {"poset", "topology", "opens", "families"}, where);
  if (!j.contains("poset")) throw std::invalid_argument(where + ": missing field 'poset'");
  Poset p = Poset::from_json(j["poset"]);
  std::string t = j.value("topology", std::string("alexandrov"));
  if (t == "declared") {
    if (!p.finite()) throw std::invalid_argument(where + ": declared topologies need a finite poset");
    if (!j.contains("opens") || !j["opens"].is_array())
      throw std::invalid_argument(where + ": declared topology needs 'opens'");
    std::vector<std::string> names;
    for (const auto& e : p.elements()) names.push_back(p.show(e));
    std::vector<std::vector<std::string>> opens;
    for (const auto& o : j["opens"]) opens.push_back(o.get<std::vector<std::string>>());
    try {
      return PosetSpace::declared(names, opens);
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument(where + ".opens: " + e.what());
    }
  }
  if (j.contains("opens")) throw std::invalid_argument(where + ": 'opens' is only valid with topology 'declared'");
  TopologyKind kind;
  if (t == "alexandrov") kind = TopologyKind::alexandrov;
  else if (t == "scott") kind = TopologyKind::scott;
  else if (t == "upper") kind = TopologyKind::upper;
  else throw std::invalid_argument(where + ".topology: unknown topology '" + t + "'");
  std::vector<DirectedFamily> fams;
  if (j.contains("families")) {
    if (!j["families"].is_array()) throw std::invalid_argument(where + ".families: expected an array");
    for (std::size_t i = 0; i < j["families"].size(); ++i)
      fams.push_back(DirectedFamily::of_set(
          parse_names(p, j["families"][i], where + ".families[" + std::to_string(i) + "]")));
  }
  try {
    if (fams.empty()) return make_poset_space(p, kind);
    return std::make_shared<PosetSpace>(p, kind, std::move(fams));
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(where + ": " + e.what());
  }
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

}  // namespace

const json& check_description(const json& j, const std::vector<std::string>& allowed) {
  if (!j.is_object()) throw std::invalid_argument("description: expected a JSON object");
  if (!j.contains("schema")) throw std::invalid_argument("description: missing field 'schema'");
  if (j["schema"] != 1) throw std::invalid_argument("description.schema: unsupported version " + j["schema"].dump());
  std::vector<std::string> all = allowed;
  all.push_back("schema");
  only(j, all, "description");
  return j;
}

json read_description(const std::string& path, const std::vector<std::string>& allowed) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument(path + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(path + ": " + e.what());
  }
  check_description(j, allowed);
  return j;
}

SpacePtr space_from_json(const json& j) { return space_at(j, "space"); }

FinitePoset finite_table(const Poset& p) {
  if (!p.finite()) throw std::invalid_argument(p.describe() + " is infinite");
  if (p.kind() == PosetKind::explicit_finite) return p.table();
  auto es = p.elements();
  std::vector<std::string> names;
  std::vector<std::uint8_t> leq(es.size() * es.size());
  for (std::size_t i = 0; i < es.size(); ++i) {
    names.push_back(p.show(es[i]));
    for (std::size_t k = 0; k < es.size(); ++k) leq[i * es.size() + k] = p.leq(es[i], es[k]);
  }
  return FinitePoset(names, leq);
}

std::string export_dot(const FinitePoset& p, const std::vector<bool>& compact, const std::vector<std::string>& notes) {
  std::ostringstream out;
  out << "digraph order {\n  rankdir=BT;\n";
  for (const auto& n : notes) out << "  // " << n << "\n";
  if (!notes.empty()) {
    std::string label;
    for (const auto& n : notes) label += n + "\\l";
    out << "  label=" << quote(label) << ";\n";
  }
  for (std::size_t i = 0; i < p.size(); ++i)
    out << "  " << quote(p.name(i)) << " [shape=" << (i < compact.size() && compact[i] ? "doublecircle" : "circle")
        << "];\n";
  for (auto [a, b] : p.covers()) out << "  " << quote(p.name(a)) << " -> " << quote(p.name(b)) << ";\n";
  out << "}\n";
  return out.str();
}

std::string export_dot(const Space& x, std::optional<std::size_t> prefix) {
  if (!x.finite() && !prefix)
    throw std::invalid_argument(x.name() + " is infinite; pass a prefix bound (--prefix N) to export a window");
  std::vector<Elem> pts = x.sample(prefix ? *prefix : std::size_t{1} << 20);
  std::size_t n = pts.size();
  std::vector<std::string> names;
  std::vector<std::uint8_t> leq(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(x.show(pts[i]));
    for (std::size_t k = 0; k < n; ++k) leq[i * n + k] = x.leq(pts[i], pts[k]);
  }
  FinitePoset p(names, leq);
  Classification cl = classify(x);
  std::vector<bool> compact(n);
  for (std::size_t i = 0; i < n; ++i)
    compact[i] = std::find(cl.compacts.begin(), cl.compacts.end(), pts[i]) != cl.compacts.end();
  std::vector<std::string> notes{x.name() + ": " + space_class_name(cl.kind)};
  if (!x.finite()) notes.push_back("first " + std::to_string(n) + " points");
  if (x.finite() && n <= 10) {
    for (std::uint32_t u = 0; u < (1u << n); ++u) {
      std::vector<Elem> ms;
      std::string s = "open {";
      for (std::size_t i = 0; i < n; ++i)
        if (u >> i & 1) {
          ms.push_back(pts[i]);
          s += (ms.size() > 1 ? "," : "") + names[i];
        }
      if (is_open(x, Subset::of(ms)).value) notes.push_back(s + "}");
    }
  }
  return export_dot(p, compact, notes);
}

}  // namespace dspace
