#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dspace/space.hpp"

namespace dspace {

// A description is a JSON object with "schema": 1 and fields from `allowed`.
// Throws std::invalid_argument naming the offending field.
const json& check_description(const json& j, const std::vector<std::string>& allowed);
json read_description(const std::string& path, const std::vector<std::string>& allowed);

// {"poset": <expr>, "topology": "alexandrov"|"scott"|"upper"|"declared",
//  "opens": [[names]] (declared only), "families": [[names]]}
// {"product": [<space>...]}, {"nab": <basis>}, {"ideal_completion": <space>}
SpacePtr space_from_json(const json& j);

// The order of a finite poset as a table; throws std::invalid_argument when infinite.
FinitePoset finite_table(const Poset& p);

// DOT digraph of the transitive reduction. Compact points are drawn as double
// circles; `notes` become comment lines and the graph label.
std::string export_dot(const FinitePoset& p, const std::vector<bool>& compact,
                       const std::vector<std::string>& notes = {});
// Finite spaces in full; infinite ones only with a prefix bound.
std::string export_dot(const Space& x, std::optional<std::size_t> prefix = std::nullopt);

}  // namespace dspace
