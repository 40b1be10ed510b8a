#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <memory>
#include <string>
#include <vector>

#include "dspace/ideal_space.hpp"

namespace dspace {

// (A, I(A)) with PI(A) ⊆ I(A) ⊆ ID(A). Principal ideals are implicit; the
// non-principal members are listed, or derived from the chain catalog for
// ideal-complete b-posets and products.
class BPoset {
 public:
  enum class Kind { listed, complete, product };

  static BPoset listed(CarrierPtr base, std::vector<Elem> extra, std::string label = {});
  // (A, ID(A)), relative to the chain catalog of A.
  static BPoset complete(CarrierPtr base, Bound b = {}, std::string label = {});
  // Ideals D of A × B with both projections in the factor families and D = π_A D × π_B D.
  static BPoset product(const BPoset& p, const BPoset& q, Bound b = {});
  static BPoset from_json(const json& j);

  Kind kind() const { return kind_; }
  const Carrier& base() const { return *base_; }
  const CarrierPtr& base_ptr() const { return base_; }
  const std::string& label() const { return label_; }
  // Normalized non-principal members.
  const std::vector<Elem>& extra() const { return extra_; }
  // Listed ideals as given, before normalization.
  const std::vector<Elem>& raw() const { return raw_; }
  const std::vector<BPoset>& factors() const { return factors_; }

  bool has_ideal(const Elem& d) const;
  // Non-principal members first, then principal ideals of sampled elements.
  std::vector<Elem> ideals(std::size_t n) const;
  json to_json() const;

 private:
  Kind kind_ = Kind::listed;
  CarrierPtr base_;
  std::string label_;
  std::vector<Elem> raw_, extra_;
  std::vector<BPoset> factors_;
};

// Validates every listed ideal (lower, directed) and reports normalizations.
Report check_bposet(const BPoset& p, std::size_t depth = 64);

// ↓f(D) as a member of I(Q), or nullopt when no member matches.
std::optional<Elem> image_ideal(const BPoset& p, const BPoset& q, const PointMap& f, const Elem& d,
                                std::size_t depth = 64);
Report check_bmap(const BPoset& p, const BPoset& q, const PointMap& f, std::size_t depth = 64);

// Compact elements of a space, as a carrier with the inherited order.
class CompactCarrier : public Carrier {
 public:
  CompactCarrier(SpacePtr x, Bound b);
  const Space& space() const { return *x_; }
  bool compact(const Elem& e) const;

  bool finite() const override { return x_->finite(); }
  std::vector<Elem> sample(std::size_t n) const override;
  bool contains(const Elem& e) const override { return x_->contains(e) && compact(e); }
  bool leq(const Elem& a, const Elem& b) const override { return x_->leq(a, b); }
  std::string show(const Elem& e) const override { return x_->show(e); }
  std::vector<Elem> chains(std::size_t bound) const override;
  Elem chain_member(const Elem& c, std::size_t n) const override { return x_->chain_member(c, n); }
  Judgement chain_down_contains(const Elem& c, const Elem& a) const override { return x_->chain_down_contains(c, a); }
  Judgement chain_below(const Elem& c, const Elem& b) const override { return x_->chain_below(c, b); }
  Judgement chain_included(const Elem& c, const Elem& d) const override { return x_->chain_included(c, d); }
  std::optional<Elem> chain_limit(const Elem& c) const override;

 private:
  SpacePtr x_;
  Bound b_;
  mutable std::map<Elem, bool> cache_;
};

// G(X) = (K(X), {↓x ∩ K(X)}). Throws std::invalid_argument unless X is algebraic.
BPoset functor_G(SpacePtr x, Bound b = {});
// ↓x ∩ K(X) as a member of G(X).
std::optional<Elem> compact_ideal(const BPoset& g, const Space& x, const Elem& pt, Bound b = {});
// H(A, I(A)): the space of I(A) with base B(a) = {D : a ∈ D}.
std::shared_ptr<const IdealFamilySpace> functor_H(const BPoset& p);
// H(f): D ↦ ↓f(D).
PointMap functor_H_map(const BPoset& p, const BPoset& q, const PointMap& f, std::size_t depth = 64);

// G(H(P)) ≅ P through a ↦ ↓a.
Report roundtrip_bposet(const BPoset& p, Bound b = {});
// H(G(X)) ≅ X through x ↦ ↓x ∩ K(X).
Report roundtrip_space(SpacePtr x, Bound b = {});

BPoset reflect(const BPoset& p, Bound b = {});
// For a b-map f into an ideal-complete target: f factors through the unit
// P → reflect(P) as a b-map, uniquely.
Report check_reflection(const BPoset& p, const BPoset& target, const PointMap& f, Bound b = {});
std::shared_ptr<const IdealFamilySpace> sobrification(const BPoset& p, Bound b = {});

// Two algebraic spaces with order-isomorphic compact posets that are not
// homeomorphic: ω+1 (Alexandrov) and ℕ ∪ {ω₁ < ω₂} (Scott).
Report basis_isomorphic_pair(Bound b = {});
// Monotone maps from ℕ to the two-chain under the chain and the discrete
// reading of ℕ: whether every ideal of the map poset is principal.
Report nat_to_two_exponential(Bound b = {});

// ---------------------------------------------------------------- finite b-posets

// A subset of a finite base with at most 256 elements.
struct Mask {
  static constexpr std::size_t kBits = 256;
  std::array<std::uint64_t, kBits / 64> w{};

  static Mask bit(std::size_t i) {
    Mask m;
    m.set(i);
    return m;
  }
  bool test(std::size_t i) const { return w[i >> 6] >> (i & 63) & 1; }
  void set(std::size_t i) { w[i >> 6] |= std::uint64_t{1} << (i & 63); }
  bool empty() const { return *this == Mask{}; }
  Mask& operator|=(const Mask& o) {
    for (std::size_t k = 0; k < w.size(); ++k) w[k] |= o.w[k];
    return *this;
  }
  auto operator<=>(const Mask&) const = default;
};

struct FiniteBPoset {
  FinitePoset base;
  std::vector<Mask> ideals;  // sorted
  bool has(const Mask& m) const;
};

// All directed lower sets.
std::vector<Mask> finite_ideals(const FinitePoset& p);
FiniteBPoset finite_pi(const FinitePoset& p);
std::vector<std::vector<std::size_t>> finite_bmaps(const FiniteBPoset& p, const FiniteBPoset& q);
FiniteBPoset finite_bproduct(const FiniteBPoset& p, const FiniteBPoset& q);

struct FiniteExponential {
  FiniteBPoset exp;
  std::vector<std::vector<std::size_t>> maps;  // element i of exp.base is maps[i]
};
// Base: b-maps with the pointwise order. Ideals: the largest family making ev a b-map.
FiniteExponential finite_exponential(const FiniteBPoset& p, const FiniteBPoset& q);

// Projections, pairing and unique mediating maps against every test b-poset.
Report check_finite_product_laws(const FiniteBPoset& p, const FiniteBPoset& q, const std::vector<FiniteBPoset>& tests);
// ev, currying and uniqueness of curried maps against every test b-poset.
Report check_finite_exponential_laws(const FiniteBPoset& p, const FiniteBPoset& q,
                                     const std::vector<FiniteBPoset>& tests);

}  // namespace dspace
