#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dspace/space.hpp"

namespace dspace {

// All of ↓z when it is finite and the construction can list it.
std::optional<std::vector<Elem>> finite_down(const Poset& p, const Elem& z);

enum class PrecRule { order, strict, interval, table, space };
const char* prec_rule_name(PrecRule r);

// (A, ≤, ≺). The carrier supplies ≤; ≺ is a rule over a poset, an explicit
// table over a finite poset, or the way-below relation of a space.
class Nab {
 public:
  // order: ≺ = ≤; strict: a < b; interval: a < b or a = 0 (dyadics only).
  static Nab of_rule(Poset p, PrecRule r);
  // Pairs of indices (a ≺ b) over a finite poset.
  static Nab of_table(FinitePoset p, const std::vector<std::pair<std::size_t, std::size_t>>& pairs);
  // (X, ⊑, ≪). Throws std::invalid_argument unless X classifies continuous or algebraic.
  static Nab of_space(SpacePtr x, Bound b = {});
  static Nab from_json(const json& j);

  const Carrier& carrier() const { return *c_; }
  const CarrierPtr& carrier_ptr() const { return c_; }
  PrecRule rule() const { return rule_; }
  const std::string& label() const { return label_; }
  const std::optional<Poset>& poset() const { return p_; }

  bool leq(const Elem& a, const Elem& b) const { return c_->leq(a, b); }
  bool prec(const Elem& a, const Elem& b) const;
  // Candidates for witnesses c ≺ z (every such c lies in ↓z); nullopt when ↓z is not listable.
  std::optional<std::vector<Elem>> below(const Elem& z) const;
  json to_json() const;

 private:
  CarrierPtr c_;
  std::optional<Poset> p_;
  SpacePtr x_;
  PrecRule rule_ = PrecRule::order;
  std::string label_;
  std::function<bool(const Elem&, const Elem&)> rel_;
  json table_;
  std::shared_ptr<std::map<std::pair<Elem, Elem>, bool>> cache_;
};

// Transitivity, interpolation, a ≺ b ⇒ a ≤ b, a ≤ b ≺ c ≤ d ⇒ a ≺ d and
// separation. Exhaustive on finite carriers; witness searches elsewhere.
Report check_nab(const Nab& a, std::size_t depth = 64);

// The space on A with base ↟a = {b : a ≺ b}.
class NabSpace : public Space {
 public:
  explicit NabSpace(Nab a) : a_(std::move(a)) {}
  const Nab& nab() const { return a_; }

  std::string name() const override { return "nab(" + a_.label() + ")"; }
  TopologyKind topology() const override { return TopologyKind::nab; }
  json to_json() const override { return a_.to_json(); }
  bool finite() const override { return a_.carrier().finite(); }
  std::vector<Elem> sample(std::size_t n) const override { return a_.carrier().sample(n); }
  bool contains(const Elem& x) const override { return a_.carrier().contains(x); }
  bool leq(const Elem& x, const Elem& y) const override { return a_.leq(x, y); }
  std::string show(const Elem& x) const override { return a_.carrier().show(x); }
  std::vector<Elem> chains(std::size_t bound) const override { return a_.carrier().chains(bound); }
  Elem chain_member(const Elem& c, std::size_t n) const override { return a_.carrier().chain_member(c, n); }
  Judgement chain_down_contains(const Elem& c, const Elem& x) const override {
    return a_.carrier().chain_down_contains(c, x);
  }
  Judgement chain_below(const Elem& c, const Elem& x) const override { return a_.carrier().chain_below(c, x); }
  Judgement chain_included(const Elem& c, const Elem& d) const override {
    return a_.carrier().chain_included(c, d);
  }
  std::optional<Elem> chain_limit(const Elem& c) const override { return a_.carrier().chain_limit(c); }

  // Opens {0,[a]} = ↟a, and {1} = A.
  std::vector<Elem> local_base(const Elem& x, std::size_t bound) const override;
  bool in_open(const Elem& open, const Elem& y) const override;
  std::string show_open(const Elem& open) const override;
  bool local_base_complete(const Elem& x) const override;
  bool open_within_up(const Elem& open, const Elem& x) const override;
  bool directed_by_construction() const override { return true; }

 private:
  Nab a_;
};

// Throws std::invalid_argument when check_nab refutes an axiom exactly.
SpacePtr nab_space(const Nab& a, std::size_t depth = 64);

// X → (X, ⊑, ≪) → space agrees with X on ⊑, ≪ and catalog convergence; and
// A → space → (A, ≤, ≺) reproduces ≤ and ≺.
Report roundtrip_space_nab(SpacePtr x, Bound b = {});
Report roundtrip_nab_space(const Nab& a, Bound b = {});

// ≤- and ≺-preservation and the lifting property y ≺ f(x) ⇒ ∃z ≺ x. y ≺ f(z).
Report check_normal_map(const PointMap& f, const Nab& a, const Nab& b, std::size_t depth = 64);
// f is continuous between the induced spaces and preserves ≪.
Report check_wb_continuous(const PointMap& f, const Space& x, const Space& y, Bound b = {});

// Finite Y^X: principal ideals ↓h of monotone maps h, with ≺₀ from the definition.
struct FiniteMapSpace {
  FinitePoset x, y;
  std::vector<std::vector<std::size_t>> maps;  // [X → Y]
  FinitePoset order;                           // pointwise order on maps
  std::vector<std::vector<std::uint8_t>> prec0;
  Nab nab() const;
};
FiniteMapSpace con_exponential(const FinitePoset& x, const FinitePoset& y);
// ≺₀ is transitive, interpolative, normal, and equals ≪ of the induced space.
Report check_con_exponential(const FiniteMapSpace& e);

// f: Z × X → Y as a table indexed z * |X| + x. Verifies ev ∘ (f̄ × id) = f,
// that f̄ and ev preserve ≪ and are continuous, and that f̄ is the only such map.
Report eval_and_curry(const FinitePoset& z, const FinitePoset& x, const FinitePoset& y,
                      const std::vector<std::size_t>& f);

}  // namespace dspace
