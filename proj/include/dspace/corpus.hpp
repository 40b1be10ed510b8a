#pragma once

#include <optional>
#include <vector>

#include "dspace/poset.hpp"

namespace dspace {

// All posets on exactly n elements, one per isomorphism class, elements
// numbered along a linear extension.
std::vector<FinitePoset> posets_up_to_iso(std::size_t n);
// Same, for every size 1..max_n.
std::vector<FinitePoset> posets_up_to(std::size_t max_n);

// Product order; element (i, j) has index i * b.size() + j.
FinitePoset finite_product(const FinitePoset& a, const FinitePoset& b);

// Order isomorphism search between finite posets (permutation backtracking).
std::optional<std::vector<std::size_t>> find_order_iso(const FinitePoset& a, const FinitePoset& b);

}  // namespace dspace
