#include "dspace/corpus.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

namespace dspace {

namespace {

std::vector<std::uint8_t> permuted(const std::vector<std::uint8_t>& m, std::size_t n,
                                   const std::vector<std::size_t>& perm) {
  std::vector<std::uint8_t> out(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out[perm[i] * n + perm[j]] = m[i * n + j];
  return out;
}

}  // namespace

std::vector<FinitePoset> posets_up_to_iso(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> slots;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::set<std::vector<std::uint8_t>> seen;
  std::vector<FinitePoset> out;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(std::string(1, char('a' + i)));
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<std::uint8_t> m(n * n, 0);
    for (std::size_t i = 0; i < n; ++i) m[i * n + i] = 1;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (mask >> s & 1) m[slots[s].first * n + slots[s].second] = 1;
    bool transitive = true;
    for (std::size_t i = 0; i < n && transitive; ++i)
      for (std::size_t j = 0; j < n && transitive; ++j)
        for (std::size_t k = 0; k < n && transitive; ++k)
          if (m[i * n + j] && m[j * n + k] && !m[i * n + k]) transitive = false;
    if (!transitive) continue;
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::uint8_t> canon = m;
    do {
      canon = std::min(canon, permuted(m, n, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (seen.insert(canon).second) out.emplace_back(names, m);
  }
  return out;
}

std::vector<FinitePoset> posets_up_to(std::size_t max_n) {
  std::vector<FinitePoset> out;
  for (std::size_t n = 1; n <= max_n; ++n)
    for (auto& p : posets_up_to_iso(n)) out.push_back(std::move(p));
  return out;
}

std::optional<std::vector<std::size_t>> find_order_iso(const FinitePoset& a, const FinitePoset& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::size_t n = a.size();
  std::vector<std::size_t> m(n);
  std::vector<bool> used(n, false);
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == n) return true;
    for (std::size_t v = 0; v < n; ++v) {
      if (used[v]) continue;
      bool ok = true;
      for (std::size_t j = 0; j < i && ok; ++j)
        ok = a.leq(i, j) == b.leq(v, m[j]) && a.leq(j, i) == b.leq(m[j], v);
      if (!ok) continue;
      used[v] = true;
      m[i] = v;
      if (rec(i + 1)) return true;
      used[v] = false;
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return m;
}

FinitePoset finite_product(const FinitePoset& a, const FinitePoset& b) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) names.push_back("(" + a.name(i) + "," + b.name(j) + ")");
  std::size_t n = names.size();
  std::vector<std::uint8_t> leq(n * n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y)
      leq[x * n + y] = a.leq(x / b.size(), y / b.size()) && b.leq(x % b.size(), y % b.size());
  return FinitePoset(names, leq);
}

}  // namespace dspace
