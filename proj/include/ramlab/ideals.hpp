#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "ramlab/multipoly.hpp"

namespace ramlab {

struct MonomialOrder {
  enum class Kind { Grlex, Lex };
  Kind kind = Kind::Grlex;
  // Lex only: variables from most to least significant; unlisted variables
  // follow in index order.
  std::vector<std::size_t> priority;

  static MonomialOrder grlex() { return {}; }
  static MonomialOrder lex(std::vector<std::size_t> priority) { return {Kind::Lex, std::move(priority)}; }

  bool greater(const Monomial& a, const Monomial& b) const;
  bool operator==(const MonomialOrder& o) const { return kind == o.kind && priority == o.priority; }
  std::string describe(const Ring& ring) const;
};

class IdealHandle {
 public:
  IdealHandle(RingPtr ring, std::vector<MultiPoly> generators, MonomialOrder order = MonomialOrder::grlex());

  const RingPtr& ring() const { return ring_; }
  const std::vector<MultiPoly>& generators() const { return gens_; }
  const MonomialOrder& order() const { return order_; }

  // Reduced Groebner basis (monic, ascending by leading monomial), computed
  // once and cached.
  const std::vector<MultiPoly>& basis() const;
  const std::vector<Monomial>& leading_monomials() const;
  IdealHandle with_order(MonomialOrder order) const;

  bool is_unit() const;
  bool is_zero() const;
  bool contains(const MultiPoly& f) const;
  bool is_zero_dimensional() const;
  // Standard monomials of a zero-dimensional ideal (NotZeroDimensional otherwise).
  std::vector<Monomial> standard_monomials() const;

 private:
  struct Cache {
    std::once_flag once;
    std::vector<MultiPoly> basis;
    std::vector<Monomial> lms;
  };
  const Cache& cache() const;

  RingPtr ring_;
  std::vector<MultiPoly> gens_;
  MonomialOrder order_;
  std::shared_ptr<Cache> cache_;
};

std::vector<MultiPoly> groebner_basis(const IdealHandle& I);
MultiPoly normal_form(const MultiPoly& f, const IdealHandle& I);
// Leading monomial of f under an order.
Monomial leading_monomial(const MultiPoly& f, const MonomialOrder& order);

// I ∩ K[keep], computed with a lex order that ranks eliminated variables first.
IdealHandle eliminate(const IdealHandle& I, const std::vector<std::string>& keep);
IdealHandle ideal_quotient(const IdealHandle& I, const MultiPoly& f);
IdealHandle saturate(const IdealHandle& I, const MultiPoly& f);
IdealHandle ideal_sum(const IdealHandle& I, const std::vector<MultiPoly>& extra);
// g ∈ √I, decided by 1 ∈ I + (1 − t·g).
bool in_radical(const IdealHandle& I, const MultiPoly& g);
IdealHandle radical_zero_dim(const IdealHandle& I);
MultiPoly squarefree_part(const MultiPoly& f);

// Minimal polynomial of variable `var` modulo a zero-dimensional ideal.
MultiPoly minimal_polynomial(const IdealHandle& I, std::size_t var);

struct UnivariateRoots {
  std::vector<Coefficient> roots;
  bool complete = true;  // false when some roots lie outside the coefficient field
};
// Roots in the coefficient field of a polynomial involving only `var`.
UnivariateRoots univariate_roots(const MultiPoly& f, std::size_t var);

}  // namespace ramlab
