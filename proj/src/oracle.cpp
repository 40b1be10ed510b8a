#include "dspace/oracle.hpp"

#include <algorithm>
#include <set>

namespace dspace::oracle {

namespace {

std::uint32_t full(std::size_t n) { return n >= 32 ? ~0u : (1u << n) - 1; }

bool upper_set(const FinitePoset& p, std::uint32_t u) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (u >> i & 1)
      for (std::size_t j = 0; j < p.size(); ++j)
        if (p.leq(i, j) && !(u >> j & 1)) return false;
  return true;
}

}  // namespace

bool FiniteTopology::is_open(std::uint32_t u) const {
  return std::find(opens.begin(), opens.end(), u) != opens.end();
}

FiniteTopology alexandrov(const FinitePoset& p) {
  FiniteTopology t{p.size(), {}};
  for (std::uint32_t u = 0; u <= full(p.size()); ++u) {
    if (upper_set(p, u)) t.opens.push_back(u);
    if (u == full(p.size())) break;
  }
  return t;
}

FiniteTopology upper(const FinitePoset& p) {
  std::size_t n = p.size();
  std::set<std::uint32_t> fam{full(n)};
  for (std::size_t x = 0; x < n; ++x) {
    std::uint32_t down = 0;
    for (std::size_t y = 0; y < n; ++y)
      if (p.leq(y, x)) down |= 1u << y;
    fam.insert(full(n) & ~down);
  }
  // Close under binary intersections and unions until stable.
  for (bool grew = true; grew;) {
    grew = false;
    std::vector<std::uint32_t> cur(fam.begin(), fam.end());
    for (auto a : cur)
      for (auto b : cur) {
        grew = fam.insert(a & b).second || grew;
        grew = fam.insert(a | b).second || grew;
      }
  }
  fam.insert(0);
  return {n, {fam.begin(), fam.end()}};
}

std::vector<std::uint32_t> directed_subsets(const FinitePoset& p) {
  std::size_t n = p.size();
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 1; d <= full(n); ++d) {
    bool ok = true;
    for (std::size_t a = 0; a < n && ok; ++a)
      for (std::size_t b = 0; b < n && ok; ++b) {
        if (!(d >> a & 1) || !(d >> b & 1)) continue;
        bool ub = false;
        for (std::size_t c = 0; c < n; ++c)
          if ((d >> c & 1) && p.leq(a, c) && p.leq(b, c)) ub = true;
        ok = ub;
      }
    if (ok) out.push_back(d);
    if (d == full(n)) break;
  }
  return out;
}

bool converges(const FiniteTopology& t, std::uint32_t d, std::size_t x) {
  for (auto o : t.opens)
    if ((o >> x & 1) && !(o & d)) return false;
  return true;
}

bool directed_open(const FiniteTopology& t, const FinitePoset& p, std::uint32_t u) {
  for (auto d : directed_subsets(p))
    for (std::size_t x = 0; x < t.n; ++x)
      if ((u >> x & 1) && converges(t, d, x) && !(d & u)) return false;
  return true;
}

bool way_below(const FiniteTopology& t, const FinitePoset& p, std::size_t x, std::size_t y) {
  for (auto d : directed_subsets(p)) {
    if (!converges(t, d, y)) continue;
    bool hit = false;
    for (std::size_t m = 0; m < t.n; ++m)
      if ((d >> m & 1) && p.leq(x, m)) hit = true;
    if (!hit) return false;
  }
  return true;
}

namespace {

std::uint32_t down(const FinitePoset& p, std::uint32_t s) {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if ((s >> j & 1) && p.leq(i, j)) out |= 1u << i;
  return out;
}

std::uint32_t up(const FinitePoset& p, std::uint32_t s) {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = 0; j < p.size(); ++j)
      if ((s >> j & 1) && p.leq(j, i)) out |= 1u << i;
  return out;
}

}  // namespace

FinitePoset power_model(const FinitePoset& p, Theory t) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> sets;
  for (std::uint32_t s = 1; s < (1u << p.size()); ++s) {
    std::pair<std::uint32_t, std::uint32_t> key{t == Theory::upper ? 0 : down(p, s), t == Theory::lower ? 0 : up(p, s)};
    if (std::find(sets.begin(), sets.end(), key) == sets.end()) sets.push_back(key);
  }
  std::size_t n = sets.size();
  std::vector<std::string> names;
  std::vector<std::uint8_t> leq(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    names.push_back(std::to_string(i));
    for (std::size_t j = 0; j < n; ++j)
      leq[i * n + j] = (sets[i].first & ~sets[j].first) == 0 && (sets[j].second & ~sets[i].second) == 0;
  }
  return FinitePoset(names, leq);
}

}  // namespace dspace::oracle
