#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dspace/ideal_space.hpp"

namespace dspace {

struct OpSymbol {
  std::string symbol;
  std::size_t arity = 0;
};

struct Signature {
  std::vector<OpSymbol> ops;

  std::optional<std::size_t> find(const std::string& symbol) const;
  // [{"symbol": "+", "arity": 2}, ...]; symbols must be distinct.
  static Signature from_json(const json& j);
  json to_json() const;
};

// Terms are Elems: variable v is {-1,[v]}, op i applied to args is {i,[args...]}.
namespace term {
Elem var(std::size_t v);
Elem apply(std::size_t op, std::vector<Elem> args);
bool is_var(const Elem& t);
std::size_t var_index(const Elem& t);
std::size_t depth(const Elem& t);
std::size_t size(const Elem& t);
// One more than the largest variable index, 0 for closed terms.
std::size_t arity(const Elem& t);
}  // namespace term

// S-expressions: "(+ x (+ y z))", "x", "(e)" for a constant. New variable names
// are appended to `vars`. Throws std::invalid_argument naming the position.
Elem parse_term(const Signature& s, const std::string& text, std::vector<std::string>& vars);
// Binary ops print infix, others prefix.
std::string show_term(const Signature& s, const Elem& t, const std::vector<std::string>& vars);

struct Inequality {
  Elem lhs, rhs;
};

// Σ with a set E of inequalities lhs ≤ rhs.
struct AlgebraTheory {
  std::string name;
  Signature sig;
  std::vector<Inequality> laws;
  std::vector<std::string> vars;

  std::string show(const Inequality& q) const;
  // {"signature": [...], "inequalities": [["(+ x y)", "x"], ...]}
  static AlgebraTheory from_json(const json& j);
  json to_json() const;
};

// + with idempotence, commutativity and associativity as paired inequalities.
AlgebraTheory semilattice_theory();
// lower adds x ≤ x+y, upper adds x+y ≤ x, convex adds nothing.
AlgebraTheory power_theory(Theory t);

// A finite poset with monotone operations. Tables are indexed in mixed radix,
// args[0]·n^(k-1) + … + args[k-1]; a nullary op has a single entry.
class FiniteAlgebra {
 public:
  FiniteAlgebra(Signature s, FinitePoset carrier, std::vector<std::vector<std::size_t>> tables);

  const Signature& signature() const { return sig_; }
  const FinitePoset& carrier() const { return p_; }
  std::size_t size() const { return p_.size(); }
  const std::vector<std::size_t>& table(std::size_t op) const { return t_.at(op); }
  std::size_t apply(std::size_t op, const std::vector<std::size_t>& args) const;
  // Variable v ↦ env[v].
  std::size_t eval(const Elem& t, const std::vector<std::size_t>& env) const;

  json to_json() const;
  // {"carrier": <poset>, "ops": {"+": [[row], ...] or flat list of element names}}
  static FiniteAlgebra from_json(const json& j, const Signature& s);

 private:
  Signature sig_;
  FinitePoset p_;
  std::vector<std::vector<std::size_t>> t_;
};

// Monotone operations and every instance of every law, exhaustively.
Report check_algebra(const FiniteAlgebra& a, const AlgebraTheory& e);
bool satisfies(const FiniteAlgebra& a, const AlgebraTheory& e);
// Monotone and commuting with every operation.
bool is_homomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const std::vector<std::size_t>& h);
std::vector<std::vector<std::size_t>> homomorphisms(const FiniteAlgebra& a, const FiniteAlgebra& b);
// Every model of E on at most n points, one per isomorphism class.
std::vector<FiniteAlgebra> algebras_up_to(const AlgebraTheory& e, std::size_t n);

struct ProductAlgebra {
  FiniteAlgebra algebra;
  std::vector<std::vector<std::size_t>> projections;
};
// Componentwise operations; the empty product is the one-point algebra.
// Throws std::invalid_argument on a signature mismatch.
ProductAlgebra algebra_product(const Signature& s, const std::vector<FiniteAlgebra>& as);
// Projections are homomorphisms and every cone from a test algebra factors uniquely.
Report check_product(const ProductAlgebra& p, const std::vector<FiniteAlgebra>& factors,
                     const std::vector<FiniteAlgebra>& tests);

struct Equalizer {
  FiniteAlgebra algebra;
  std::vector<std::size_t> embedding;
};
// {x : f(x) = g(x)} with the inherited order. Throws std::invalid_argument
// unless f and g are homomorphisms.
Equalizer algebra_equalizer(const FiniteAlgebra& a, const FiniteAlgebra& b, const std::vector<std::size_t>& f,
                            const std::vector<std::size_t>& g);
Report check_equalizer(const Equalizer& q, const FiniteAlgebra& a, const FiniteAlgebra& b,
                       const std::vector<std::size_t>& f, const std::vector<std::size_t>& g,
                       const std::vector<FiniteAlgebra>& tests);

struct FreeAlgebraResult {
  FinitePoset carrier;                  // classes, named by canonical terms
  std::optional<FiniteAlgebra> algebra;  // total once stabilized
  std::vector<std::size_t> unit;        // generator ↦ class
  std::vector<Elem> terms;              // canonical term per class, variables = generators
  json log;
  bool stabilized = false;
  std::size_t depth = 0;
};

// Terms over the generators, closed level by level under the operations; the
// least preorder containing the order of X and every law instance, closed
// under monotonicity, then antisymmetrized. Stops when a level adds no class
// and no order. Throws BudgetExceeded when a level exceeds `budget` terms.
FreeAlgebraResult free_ordered_algebra(const FinitePoset& x, const AlgebraTheory& e, std::size_t depth,
                                       std::size_t budget = 20000);

// Preorder on nonempty subsets of a finite poset, given as bit masks.
using SetPreorder = std::function<bool(const FinitePoset&, std::uint32_t, std::uint32_t)>;
// Hoare, Smyth, or both.
SetPreorder set_preorder(Theory t);
// Nonempty subsets of X modulo the preorder, with union. Brute force.
FreeAlgebraResult powerspace(const FinitePoset& x, Theory t, SetPreorder order = nullptr);
// Nonempty lower sets under inclusion.
FinitePoset nonempty_lower_sets(const FinitePoset& x);
// The isomorphism of two algebras generated by their units that fixes the units.
std::optional<std::vector<std::size_t>> unit_iso(const FreeAlgebraResult& a, const FreeAlgebraResult& b);

// Every monotone f: X → B extends to exactly one homomorphism f̄ with f̄ ∘ η = f.
// Throws std::invalid_argument when B does not satisfy E.
Report verify_universal_property(const FinitePoset& x, const FreeAlgebraResult& fa, const FiniteAlgebra& b,
                                 const AlgebraTheory& e);

// UF(X) for an algebraic poset space, presented on finite subsets of K(X).
struct PresentedPower {
  Theory theory;
  SpacePtr x;
  Poset compacts;  // K(X)
  Poset basis;     // finite nonempty subsets of K(X) modulo the theory
  std::shared_ptr<const IdealFamilySpace> space;
  PointMap unit;
  // ↓{A ∪ B : A ∈ D, B ∈ E}
  std::function<Elem(const Elem&, const Elem&)> join;
};
// Supports Alexandrov poset spaces and Scott spaces that are finite or of the
// form P + ⊤ with every point of P compact. Throws std::invalid_argument otherwise.
PresentedPower powerspace_presented(SpacePtr x, Theory t, Bound b = {});
// (i) UF(X) is algebraic, (ii) η preserves ≪, (iii) union preserves ≪ and
// ⇓(A ∪ B) = ↓(⇓A ∪ ⇓B), (iv) sup ∘ ⇓ = id, (v) compacts are the closure of η(K(X)).
Report check_preservation(SpacePtr x, Theory t, Bound b = {});

// ↓f(D) in I_T(Y), or nullopt when no inventory ideal matches.
std::optional<Elem> lift_T(const IdealSpace& ix, const IdealSpace& iy, const PointMap& f, const Elem& d);
// Principal ideals, sup f(sup D), continuity and membership of every image.
Report check_lift_T(const IdealSpace& ix, const IdealSpace& iy, const PointMap& f, Bound b = {});
// T(id) = id and T(g ∘ f) = T(g) ∘ T(f) on the inventory and samples.
Report check_T_functor(const IdealSpace& ix, const IdealSpace& iy, const IdealSpace& iz, const PointMap& f,
                       const PointMap& g, Bound b = {});

using OpN = std::function<Elem(const std::vector<Elem>&)>;
// ↓{f(d₁,…,dₙ) : dⱼ ∈ Dⱼ} in I_T(X), or nullopt when no inventory ideal matches.
std::optional<Elem> lift_op(const IdealSpace& it, const OpN& f, const std::vector<Elem>& ideals);
// The lifted operations agree with the originals on principal ideals, are
// monotone, and satisfy every law on the inventory and sampled principals.
Report check_lifted_algebra(const IdealSpace& it, const AlgebraTheory& e, const std::vector<OpN>& ops,
                            Bound b = {});
// Finite mode: the lifted algebra on I_T of the Alexandrov carrier.
FiniteAlgebra lift_Tbar(const FiniteAlgebra& a);

}  // namespace dspace
