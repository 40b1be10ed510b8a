#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "dspace/space.hpp"

namespace dspace {

// ↓D for an ideal net D, with the point it converges to and the family that
// certifies the convergence.
struct TopologicalIdeal {
  Elem body;  // ideal descriptor over the ambient carrier
  Elem sup;
  DirectedFamily certificate;
};

// Throws std::invalid_argument when the family is not directed or when no
// limit above all members is found within the bound.
TopologicalIdeal make_topological_ideal(const Space& x, const DirectedFamily& gen, Bound b = {});

// Ideals of a carrier ordered by inclusion, with base opens U_a = {A : a ∈ A}.
// Principal ideals are always points; `extra` lists the non-principal ones,
// and `has_extra` (when given) decides membership beyond that list.
class IdealFamilySpace : public Space {
 public:
  IdealFamilySpace(CarrierPtr c, std::vector<Elem> extra, std::function<bool(const Elem&)> has_extra = nullptr,
                   std::string label = {});
  const Carrier& carrier() const { return *c_; }
  const CarrierPtr& carrier_ptr() const { return c_; }
  const std::vector<Elem>& extra() const { return extra_; }

  std::string name() const override { return label_.empty() ? "ideals(" + std::to_string(extra_.size()) + ")" : label_; }
  TopologyKind topology() const override { return TopologyKind::ideal; }
  json to_json() const override;
  bool finite() const override { return c_->finite(); }
  std::vector<Elem> sample(std::size_t n) const override;
  bool contains(const Elem& a) const override;
  bool leq(const Elem& a, const Elem& b) const override;
  std::string show(const Elem& a) const override { return show_ideal(*c_, a); }
  // Chains n ↦ ↓c(n) for catalog chains c of the carrier, named {0,[c]}.
  std::vector<Elem> chains(std::size_t bound) const override;
  Elem chain_member(const Elem& c, std::size_t n) const override;
  Judgement chain_down_contains(const Elem& c, const Elem& a) const override;
  Judgement chain_below(const Elem& c, const Elem& b) const override;
  Judgement chain_included(const Elem& c, const Elem& d) const override;
  std::optional<Elem> chain_limit(const Elem& c) const override;

  std::vector<Elem> local_base(const Elem& a, std::size_t bound) const override;
  bool in_open(const Elem& open, const Elem& a) const override;
  std::string show_open(const Elem& open) const override { return "U_" + c_->show(open[0]); }
  bool local_base_complete(const Elem& a) const override { return ideal::is_principal(a); }
  std::optional<Elem> open_as_up(const Elem& open) const override { return ideal::principal(open[0]); }
  std::optional<Judgement> converges_hint(const DirectedFamily& d, const Elem& a) const override;
  bool directed_by_construction() const override { return true; }
  std::vector<Elem> approximant_hints(const Elem& a, std::size_t bound) const override;

 protected:
  std::optional<std::size_t> find(const Elem& ideal) const;

  CarrierPtr c_;
  std::vector<Elem> extra_;
  std::function<bool(const Elem&)> has_;
  std::string label_;
};

// I_T(X): the topological ideals of X. Non-principal ones come from catalog
// chains that converge to an upper bound.
class IdealSpace : public IdealFamilySpace {
 public:
  explicit IdealSpace(SpacePtr base, Bound b = {});
  const Space& base() const { return *x_; }
  const SpacePtr& base_ptr() const { return x_; }
  const std::vector<TopologicalIdeal>& inventory() const { return inv_; }

  Elem sup(const Elem& ideal) const;
  // Classification of the base space, computed once.
  const Classification& base_classification() const;
  const Bound& bound() const { return b_; }

  std::string name() const override { return "I_T(" + x_->name() + ")"; }
  json to_json() const override { return {{"ideal_completion", x_->to_json()}}; }

 private:
  IdealSpace(SpacePtr base, Bound b, std::vector<TopologicalIdeal> inv);

  SpacePtr x_;
  Bound b_;
  std::vector<TopologicalIdeal> inv_;
  mutable std::optional<Classification> cls_;
};

std::shared_ptr<const IdealSpace> it_space(SpacePtr x, Bound b = {});

// The way-below map x ↦ ⇓x into I_T(X). Throws std::domain_error when X is not
// continuous or ⇓x is not an inventory ideal.
Elem wb_ideal(const IdealSpace& it, const Elem& x, Bound b = {});

using LowerMap = std::function<Elem(const Elem&)>;
// ⇓ ⊣ sup between X and I_T(X). A replacement lower map can be supplied to
// probe the check with a deliberately wrong adjoint.
Report check_adjunction(SpacePtr x, Bound b = {}, LowerMap lower = nullptr);

// I_T(X ⊗ Y) against I_T(X) ⊗ I_T(Y): ideals split as rectangles and base opens agree.
Report it_product_check(SpacePtr x, SpacePtr y, Bound b = {});

// Every catalog ideal of X is topological, i.e. I_T(X) = ID(X) relative to the catalog.
Report check_ideal_completion(const IdealSpace& it, Bound b = {});

// Sampled order-isomorphism x ↦ ↓x between X and I_T(X) (exact when finite).
Report check_principal_iso(const IdealSpace& it, Bound b = {});

}  // namespace dspace
