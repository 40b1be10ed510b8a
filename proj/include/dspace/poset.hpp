#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dspace/elem.hpp"
#include "dspace/report.hpp"

namespace dspace {

class FinitePoset {
 public:
  FinitePoset() = default;
  // `leq` is row-major n*n; not validated here (see check_partial_order).
  FinitePoset(std::vector<std::string> names, std::vector<std::uint8_t> leq);

  // Reflexive-transitive closure of the given pairs (i <= j).
  static FinitePoset from_pairs(std::vector<std::string> names,
                                const std::vector<std::pair<std::size_t, std::size_t>>& pairs);
  static FinitePoset chain(std::size_t n);
  static FinitePoset antichain(std::size_t n);

  std::size_t size() const { return names_.size(); }
  bool leq(std::size_t i, std::size_t j) const { return leq_[i * names_.size() + j] != 0; }
  const std::string& name(std::size_t i) const { return names_.at(i); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<std::size_t> index_of(const std::string& name) const;
  // Transitive reduction.
  std::vector<std::pair<std::size_t, std::size_t>> covers() const;
  const std::vector<std::uint8_t>& matrix() const { return leq_; }

  bool operator==(const FinitePoset& o) const { return names_ == o.names_ && leq_ == o.leq_; }

 private:
  std::vector<std::string> names_;
  std::vector<std::uint8_t> leq_;
};

enum class Theory { lower, upper, convex };
const char* theory_name(Theory t);
Theory theory_from_name(const std::string& s);

enum class PosetKind {
  explicit_finite,
  chain,
  antichain,
  omega,
  flat_nat,
  dyadic,
  lift,
  adjoin_top,
  sum,
  product,
  powerbasis
};

// Finite or constructor-built countable poset. Elements are canonical Elem values:
//   explicit/chain/antichain/omega/flat_nat: {i}
//   dyadic: {k,[e]} meaning k/2^e in lowest terms, 0 <= k <= 2^e
//   lift: bottom {0}, inner {1,[x]}      adjoin_top: inner {0,[x]}, top {1}
//   sum: {0,[x]} / {1,[y]}               product: {0,[x1..xn]}
//   powerbasis: {0,[sorted normal-form members]}
// Chains are monotone sequences, named by descriptors (also Elems):
//   omega {k}: k,k+1,...        dyadic {x}: x - 2^-(e+n) approaching x from below
//   lift/adjoin_top {c}         sum {side,[c]}
//   product {0,[coord...]}, coord {0,[c]} (chain) or {1,[k]} (constant)
//   powerbasis {0,[comp...]}, comp as product coords; member n = normal form of the union
class Poset {
 public:
  static Poset explicit_finite(FinitePoset table);
  static Poset chain(std::size_t n);
  static Poset antichain(std::size_t n);
  static Poset omega();
  static Poset flat_nat();
  static Poset dyadic();
  static Poset lift(Poset p);
  static Poset adjoin_top(Poset p);
  static Poset sum(Poset p, Poset q);
  static Poset product(std::vector<Poset> factors);
  static Poset powerbasis(Theory t, Poset p);

  PosetKind kind() const;
  const std::vector<Poset>& children() const;
  const FinitePoset& table() const;
  std::size_t param() const;
  Theory theory() const;

  bool finite() const;
  std::size_t size() const;  // throws std::logic_error when infinite
  // First n elements of the enumeration (fewer if the poset is smaller).
  std::vector<Elem> prefix(std::size_t n) const;
  std::vector<Elem> elements() const;  // finite only
  bool contains(const Elem& e) const;
  bool leq(const Elem& a, const Elem& b) const;
  std::string show(const Elem& e) const;
  // Finds the element whose show() equals `text` among the first `search` elements.
  Elem parse(const std::string& text, std::size_t search = 4096) const;

  json to_json() const;
  static Poset from_json(const json& j);
  std::string describe() const;
  bool same_expr(const Poset& o) const { return describe() == o.describe(); }

  // Chain structure; all rules are structural and exact unless noted.
  std::vector<Elem> chains(std::size_t bound) const;
  bool valid_chain(const Elem& c) const;
  Elem chain_member(const Elem& c, std::size_t n) const;
  bool chain_down_contains(const Elem& c, const Elem& a) const;  // a <= some member
  bool chain_below(const Elem& c, const Elem& b) const;          // every member <= b
  std::optional<bool> chain_included(const Elem& c, const Elem& d) const;  // nullopt: no rule
  std::optional<Elem> chain_sup(const Elem& c) const;
  // True when some ascending chain has no supremum (detected on canonical chains).
  bool has_unbounded_chain() const;

  // Scott-topology support: x is compact iff it is not the sup of a chain strictly below it.
  bool scott_supported() const;
  bool scott_compact(const Elem& x) const;
  // Finite subsets of this poset under a powerspace preorder: lower (Hoare),
  // upper (Smyth) or convex (both). The normal form is the unique
  // representative of the equivalence class: maxima, minima, or both.
  bool set_leq(Theory t, const std::vector<Elem>& f, const std::vector<Elem>& g) const;
  std::vector<Elem> set_normal_form(Theory t, std::vector<Elem> members) const;
  // Members of a powerbasis element.
  static const std::vector<Elem>& members(const Elem& powerbasis_elem) { return powerbasis_elem.parts; }

  struct Node;

 private:
  explicit Poset(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

struct MonotoneMap {
  Poset dom;
  Poset cod;
  std::function<Elem(const Elem&)> rule;
  std::string name;

  Elem operator()(const Elem& x) const { return rule(x); }
  // `images` lists f(x) for dom.elements() in enumeration order.
  static MonotoneMap table(Poset dom, Poset cod, std::vector<Elem> images, std::string name = {});
  static MonotoneMap identity(Poset p);
};

Report check_partial_order(const Poset& p, std::size_t depth);
// Same checks on an explicit relation; used for parsing raw tables.
Report check_partial_order(const FinitePoset& p);
Report is_monotone(const MonotoneMap& f, std::size_t depth);

// Enumeration of tuples by shells (max coordinate index m = 0,1,...), drawing
// coordinate i from prefixes[i]; stops at n tuples or when every factor is exhausted.
std::vector<Elem> product_prefix(const std::vector<std::function<std::vector<Elem>(std::size_t)>>& prefixes,
                                 const std::vector<bool>& finite, std::size_t n);

// All monotone maps between finite posets, as index tables.
std::vector<std::vector<std::size_t>> monotone_maps(const FinitePoset& a, const FinitePoset& b);

}  // namespace dspace
