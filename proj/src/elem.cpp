#include "dspace/elem.hpp"

#include <stdexcept>

namespace dspace {

std::strong_ordering Elem::operator<=>(const Elem& o) const {
  if (auto c = tag <=> o.tag; c != 0) return c;
  std::size_t n = std::min(parts.size(), o.parts.size());
  for (std::size_t i = 0; i < n; ++i)
    if (auto c = parts[i] <=> o.parts[i]; c != 0) return c;
  return parts.size() <=> o.parts.size();
}

std::string to_string(const Elem& e) {
  std::string s = std::to_string(e.tag);
  if (!e.parts.empty()) {
    s += '[';
    for (std::size_t i = 0; i < e.parts.size(); ++i) {
      if (i) s += ',';
      s += to_string(e.parts[i]);
    }
    s += ']';
  }
  return s;
}

namespace {

Elem parse_elem(const std::string& s, std::size_t& pos) {
  std::size_t start = pos;
  if (pos < s.size() && s[pos] == '-') ++pos;
  while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') ++pos;
  if (pos == start) throw std::invalid_argument("bad element text: " + s);
  Elem e(std::stoll(s.substr(start, pos - start)));
  if (pos < s.size() && s[pos] == '[') {
    ++pos;
    for (;;) {
      e.parts.push_back(parse_elem(s, pos));
      if (pos < s.size() && s[pos] == ',') { ++pos; continue; }
      if (pos < s.size() && s[pos] == ']') { ++pos; break; }
      throw std::invalid_argument("bad element text: " + s);
    }
  }
  return e;
}

}  // namespace

Elem elem_from_string(const std::string& s) {
  std::size_t pos = 0;
  Elem e = parse_elem(s, pos);
  if (pos != s.size()) throw std::invalid_argument("trailing text in element: " + s);
  return e;
}

json to_json(const Elem& e) {
  if (e.parts.empty()) return e.tag;
  json a = json::array();
  a.push_back(e.tag);
  for (const auto& p : e.parts) a.push_back(to_json(p));
  return a;
}

Elem elem_from_json(const json& j) {
  if (j.is_number_integer()) return Elem(j.get<std::int64_t>());
  if (!j.is_array() || j.empty() || !j[0].is_number_integer())
    throw std::invalid_argument("element JSON must be an integer or [tag, parts...]");
  Elem e(j[0].get<std::int64_t>());
  for (std::size_t i = 1; i < j.size(); ++i) e.parts.push_back(elem_from_json(j[i]));
  return e;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace dspace
