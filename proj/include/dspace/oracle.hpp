#pragma once

#include <cstdint>
#include <vector>

#include "dspace/poset.hpp"

// Independent brute-force models used to cross-check the main engine.
namespace dspace::oracle {

// A finite topology as bitmasks over points 0..n-1.
struct FiniteTopology {
  std::size_t n = 0;
  std::vector<std::uint32_t> opens;
  bool is_open(std::uint32_t u) const;
};

// All upper sets, by enumerating every subset.
FiniteTopology alexandrov(const FinitePoset& p);
// Generated by the complements of principal lower sets.
FiniteTopology upper(const FinitePoset& p);

// Nonempty subsets in which any two members have an upper bound inside.
std::vector<std::uint32_t> directed_subsets(const FinitePoset& p);
bool converges(const FiniteTopology& t, std::uint32_t d, std::size_t x);
bool directed_open(const FiniteTopology& t, const FinitePoset& p, std::uint32_t u);
bool way_below(const FiniteTopology& t, const FinitePoset& p, std::size_t x, std::size_t y);

// Nonempty subsets as lower sets by inclusion (lower), upper sets by reverse
// inclusion (upper), or both at once (convex): C ≤ D iff ↓C ⊆ ↓D and ↑C ⊇ ↑D.
FinitePoset power_model(const FinitePoset& p, Theory t);

}  // namespace dspace::oracle
