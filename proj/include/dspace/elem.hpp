#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace dspace {

using json = nlohmann::json;

// Canonical tagged value. Every carrier element, chain descriptor, ideal
// descriptor and open descriptor is one of these; equality is structural.
struct Elem {
  std::int64_t tag = 0;
  std::vector<Elem> parts;

  Elem() = default;
  explicit Elem(std::int64_t t) : tag(t) {}
  Elem(std::int64_t t, std::vector<Elem> p) : tag(t), parts(std::move(p)) {}

  const Elem& operator[](std::size_t i) const { return parts.at(i); }
  std::size_t size() const { return parts.size(); }

  bool operator==(const Elem& o) const {
    return tag == o.tag && parts == o.parts;
  }
  std::strong_ordering operator<=>(const Elem& o) const;
};

// Compact text form: "5" or "5[1,2[0]]".
std::string to_string(const Elem& e);
Elem elem_from_string(const std::string& s);

// JSON form: integer, or array [tag, part...].
json to_json(const Elem& e);
Elem elem_from_json(const json& j);

std::uint64_t fnv1a(const std::string& s);

}  // namespace dspace
