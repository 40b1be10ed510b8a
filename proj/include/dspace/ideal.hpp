#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dspace/elem.hpp"
#include "dspace/poset.hpp"
#include "dspace/report.hpp"

namespace dspace {

// Member bound used when a chain question has no structural rule.
inline constexpr std::size_t kChainProbe = 128;

// An ordered carrier with chain structure. Posets and spaces both provide one.
class Carrier {
 public:
  virtual ~Carrier() = default;

  virtual bool finite() const = 0;
  virtual std::vector<Elem> sample(std::size_t n) const = 0;
  virtual bool contains(const Elem& x) const = 0;
  virtual bool leq(const Elem& a, const Elem& b) const = 0;
  virtual std::string show(const Elem& x) const = 0;

  // Catalog of canonical monotone chains (descriptors).
  virtual std::vector<Elem> chains(std::size_t bound) const;
  virtual Elem chain_member(const Elem& c, std::size_t n) const;
  virtual std::string show_chain(const Elem& c) const;
  // a <= some member.
  virtual Judgement chain_down_contains(const Elem& c, const Elem& a) const;
  // every member <= b.
  virtual Judgement chain_below(const Elem& c, const Elem& b) const;
  // every member of c is below some member of d.
  virtual Judgement chain_included(const Elem& c, const Elem& d) const;
  // Order-theoretic least upper bound, when the construction names one.
  virtual std::optional<Elem> chain_limit(const Elem& c) const;
};

using CarrierPtr = std::shared_ptr<const Carrier>;

// Componentwise product. Elements {0,[x1..xn]}; chain descriptors {0,[k1..kn]}
// with each coordinate a factor chain {0,[c]} or a constant {1,[x]}.
class ProductCarrier : public Carrier {
 public:
  explicit ProductCarrier(std::vector<CarrierPtr> factors);
  const std::vector<CarrierPtr>& factors() const { return fs_; }

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

 private:
  std::vector<CarrierPtr> fs_;
};

class PosetCarrier : public Carrier {
 public:
  explicit PosetCarrier(Poset p) : p_(std::move(p)) {}
  const Poset& poset() const { return p_; }

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

 private:
  Poset p_;
};

// Ideal descriptors: Principal {0,[a]}, Generated {1,[chain]}, Finite {2,[sorted members]}.
namespace ideal {
enum class Kind { principal, generated, finite };
Elem principal(Elem a);
Elem generated(Elem chain);
Elem finite_set(std::vector<Elem> members);
Kind kind_of(const Elem& i);
bool is_principal(const Elem& i);
const Elem& point(const Elem& principal_ideal);
const Elem& chain(const Elem& generated_ideal);
}  // namespace ideal

// Throws std::domain_error when `a` is outside the carrier.
Judgement ideal_member(const Carrier& c, const Elem& ideal, const Elem& a);
Judgement ideal_subset(const Carrier& c, const Elem& i, const Elem& j);
Judgement ideal_equal(const Carrier& c, const Elem& i, const Elem& j);
std::string show_ideal(const Carrier& c, const Elem& ideal);
// Finite sets with a maximum and generated ideals containing their limit become principal.
Elem normalize_ideal(const Carrier& c, const Elem& ideal);
// Lower and directed (exhaustive on finite carriers, sampled otherwise).
Report check_ideal(const Carrier& c, const Elem& ideal, std::size_t depth);

}  // namespace dspace
