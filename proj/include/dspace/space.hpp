#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dspace/ideal.hpp"
#include "dspace/poset.hpp"
#include "dspace/report.hpp"

namespace dspace {

class Space;
using SpacePtr = std::shared_ptr<const Space>;

// A directed family: an explicit finite set, a catalog chain of the ambient
// carrier, or a generated sequence (images of a chain under a map).
struct DirectedFamily {
  std::string label;
  std::vector<Elem> members;
  std::optional<Elem> chain;
  std::function<Elem(std::size_t)> generator;
  // Set when `members` is a finite window onto a possibly infinite set.
  bool window = false;

  static DirectedFamily of_set(std::vector<Elem> members, std::string label = {});
  static DirectedFamily of_chain(Elem chain, std::string label = {});
  static DirectedFamily of_generator(std::function<Elem(std::size_t)> g, std::string label = {});
  static DirectedFamily of_window(std::vector<Elem> members, std::string label = {});

  bool finite() const { return !chain && !generator; }
  std::vector<Elem> prefix(const Carrier& x, std::size_t n) const;
  // Image under a map; chains become generators.
  DirectedFamily mapped(const Carrier& x, std::function<Elem(const Elem&)> f, std::string label) const;
  json to_json(const Carrier& x) const;
};

// A subset of the carrier given by a membership predicate.
struct Subset {
  std::function<bool(const Elem&)> has;
  std::string label;

  static Subset whole();
  static Subset of(std::vector<Elem> members, std::string label = {});
  static Subset up(const Carrier& x, Elem a);
};

enum class TopologyKind { alexandrov, scott, upper, declared, product, ideal, nab, other };
const char* topology_name(TopologyKind k);

// A T0 space over an ordered carrier. Opens are named by descriptors; each
// point has an enumerable neighbourhood base.
class Space : public Carrier {
 public:
  virtual std::string name() const = 0;
  virtual TopologyKind topology() const = 0;
  virtual json to_json() const = 0;

  // Basic opens containing x; the first `bound` candidates.
  virtual std::vector<Elem> local_base(const Elem& x, std::size_t bound) const = 0;
  virtual bool in_open(const Elem& open, const Elem& y) const = 0;
  virtual std::string show_open(const Elem& open) const { return to_string(open); }
  // True when local_base(x, .) is a full neighbourhood base (for directed families).
  virtual bool local_base_complete(const Elem&) const { return false; }
  // The open is exactly ↑c.
  virtual std::optional<Elem> open_as_up(const Elem&) const { return std::nullopt; }
  // The open is contained in ↑x.
  virtual bool open_within_up(const Elem& open, const Elem& x) const;
  // Structural convergence rule for this space, when one is known.
  virtual std::optional<Judgement> converges_hint(const DirectedFamily&, const Elem&) const {
    return std::nullopt;
  }
  // Every directed-open set is open by construction (Alexandrov, Scott, ideal, basis spaces).
  virtual bool directed_by_construction() const { return false; }
  // Declared families beyond the chain catalog.
  virtual std::vector<DirectedFamily> extra_families() const { return {}; }
  // Distinct named points usable as constants when building catalog combinations.
  virtual std::vector<Elem> constants(std::size_t n) const { return sample(n); }
  // Points known to lie below x that a bounded sample may miss (e.g. the
  // generating chain of an ideal). Candidates only; they are still tested.
  virtual std::vector<Elem> approximant_hints(const Elem&, std::size_t) const { return {}; }
};

// Posets with the Alexandrov, Scott or upper topology; declared finite
// topologies reduce to Alexandrov on their specialization order.
class PosetSpace : public Space {
 public:
  PosetSpace(Poset p, TopologyKind t, std::vector<DirectedFamily> extra = {});
  const Poset& poset() const { return p_; }

  std::string name() const override;
  TopologyKind topology() const override { return kind_; }
  json to_json() const override;
  bool finite() const override { return p_.finite(); }
  std::vector<Elem> sample(std::size_t n) const override { return p_.prefix(n); }
  bool contains(const Elem& x) const override { return p_.contains(x); }
  bool leq(const Elem& a, const Elem& b) const override { return p_.leq(a, b); }
  std::string show(const Elem& x) const override { return p_.show(x); }
  std::vector<Elem> chains(std::size_t bound) const override { return p_.chains(bound); }
  Elem chain_member(const Elem& c, std::size_t n) const override { return p_.chain_member(c, n); }
  Judgement chain_down_contains(const Elem& c, const Elem& a) const override;
  Judgement chain_below(const Elem& c, const Elem& b) const override;
  Judgement chain_included(const Elem& c, const Elem& d) const override;
  std::optional<Elem> chain_limit(const Elem& c) const override { return p_.chain_sup(c); }

  std::vector<Elem> local_base(const Elem& x, std::size_t bound) const override;
  bool in_open(const Elem& open, const Elem& y) const override;
  std::string show_open(const Elem& open) const override;
  bool local_base_complete(const Elem& x) const override;
  std::optional<Elem> open_as_up(const Elem& open) const override;
  std::optional<Judgement> converges_hint(const DirectedFamily& d, const Elem& x) const override;
  bool directed_by_construction() const override { return kind_ != TopologyKind::upper; }
  std::vector<DirectedFamily> extra_families() const override { return extra_; }

  // Declared finite topology: validated (T0, closed under finite unions and
  // intersections, contains the empty set and the carrier) and reduced.
  static std::shared_ptr<PosetSpace> declared(std::vector<std::string> names,
                                              const std::vector<std::vector<std::string>>& opens);
  const std::vector<std::vector<std::string>>& declared_opens() const { return declared_; }

 private:
  Poset p_;
  TopologyKind kind_;
  std::vector<DirectedFamily> extra_;
  std::vector<std::vector<std::string>> declared_;
};

// Finite product X1 ⊗ ... ⊗ Xn with rectangle neighbourhoods.
class ProductSpace : public Space {
 public:
  explicit ProductSpace(std::vector<SpacePtr> factors);
  const std::vector<SpacePtr>& factors() const { return fs_; }

  std::string name() const override;
  TopologyKind topology() const override { return TopologyKind::product; }
  json to_json() const override;
  bool finite() const override;
  std::vector<Elem> sample(std::size_t n) const override;
  bool contains(const Elem& x) const override;
  bool leq(const Elem& a, const Elem& b) const override;
  std::string show(const Elem& x) const override;
  std::vector<Elem> chains(std::size_t bound) const override;
  Elem chain_member(const Elem& c, std::size_t n) const override;
  Judgement chain_down_contains(const Elem& c, const Elem& a) const override;
  Judgement chain_below(const Elem& c, const Elem& b) const override;
  Judgement chain_included(const Elem& c, const Elem& d) const override;
  std::optional<Elem> chain_limit(const Elem& c) const override;

  std::vector<Elem> local_base(const Elem& x, std::size_t bound) const override;
  bool in_open(const Elem& open, const Elem& y) const override;
  std::string show_open(const Elem& open) const override;
  bool local_base_complete(const Elem& x) const override;
  std::optional<Elem> open_as_up(const Elem& open) const override;
  bool open_within_up(const Elem& open, const Elem& x) const override;
  bool directed_by_construction() const override;

  // Projection of a product chain descriptor onto factor i: a chain of that
  // factor ({0,[c]}) or a constant ({1,[k]}).
  static const Elem& coordinate(const Elem& chain, std::size_t i) { return chain[i]; }

 private:
  std::vector<SpacePtr> fs_;
  ProductCarrier pc_;
};

SpacePtr make_poset_space(Poset p, TopologyKind t);
SpacePtr product(std::vector<SpacePtr> factors);

// ---------------------------------------------------------------- operations

// Bounds for sampled questions. `depth` is the element prefix; families are
// sampled more densely than neighbourhoods.
struct Bound {
  std::size_t depth = 64;
  std::size_t points() const { return std::max<std::size_t>(4, depth / 2); }
  std::size_t approximants() const { return 2 * depth; }
};

// Does the open meet the family?
Judgement meets(const Space& x, const DirectedFamily& d, const Elem& open);
// D -> x: every neighbourhood of x meets D.
Judgement converges(const Space& x, const DirectedFamily& d, const Elem& pt, Bound b = {});

Judgement is_upper(const Space& x, const Subset& u, Bound b = {}, json* cx = nullptr);
Judgement is_open(const Space& x, const Subset& u, Bound b = {}, json* cx = nullptr);

// Catalog: chains plus declared families (constants are handled through ⊑).
std::vector<DirectedFamily> catalog(const Space& x, Bound b = {});

enum class OpenVerdict { open, directed_open_not_open, not_directed_open };
const char* open_verdict_name(OpenVerdict v);
struct DirectedOpenResult {
  OpenVerdict verdict;
  bool exact = true;
  std::size_t bound = 0;
  std::string detail;
  json counterexample;
};
DirectedOpenResult is_directed_open(const Space& x, const Subset& u, Bound b = {});

struct WayBelowWitness {
  Elem x, y;
  bool verdict = false;
  bool exact = true;
  std::size_t bound = 0;
  std::string evidence;
  json refuting_family;
  Judgement judgement() const { return {verdict, exact, bound}; }
};
WayBelowWitness way_below(const Space& x, const Elem& a, const Elem& b, Bound bd = {});

enum class SpaceClass { not_directed, directed, continuous, algebraic };
const char* space_class_name(SpaceClass c);
struct Classification {
  SpaceClass kind = SpaceClass::directed;
  std::vector<Elem> compacts;  // enumerated prefix of K(X)
  bool exact = true;
  std::size_t bound = 0;
  std::string detail;
  json witness;
};
Classification classify(const Space& x, Bound b = {});

// ⇓x restricted to a sample window.
std::vector<Elem> way_below_window(const Space& x, const Elem& pt, Bound b = {});

SpacePtr coreflect(const SpacePtr& x, Bound b = {});

using PointMap = std::function<Elem(const Elem&)>;
// Continuity through neighbourhoods: every basic open around f(x) contains f(B)
// for some basic open B around x (exact when both spaces are finite).
Judgement is_continuous(const Space& x, const Space& y, const PointMap& f, Bound b = {}, json* cx = nullptr);
Report check_separate_continuity(const ProductSpace& x, const Space& y, const PointMap& f, Bound b = {});
Report is_basis(const Space& x, const std::function<bool(const Elem&)>& in_b, Bound b = {});
// Specialization order from the topology agrees with the carrier order.
Report check_specialization(const Space& x, Bound b = {});

}  // namespace dspace
