#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ramlab/coefficient.hpp"
#include "ramlab/sparse_poly.hpp"

namespace ramlab {

class Ring;
using RingPtr = std::shared_ptr<const Ring>;

// Polynomial ring K[vars] over a coefficient field K.
class Ring {
 public:
  static RingPtr make(FieldPtr field, std::vector<std::string> vars);

  const FieldPtr& field() const { return field_; }
  std::uint32_t p() const { return field_->p(); }
  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  std::optional<std::size_t> var_index(const std::string& name) const;
  std::size_t require_var(const std::string& name) const;

  RingPtr with_vars(const std::vector<std::string>& extra) const;
  RingPtr with_field(FieldPtr field) const;
  bool same_as(const Ring& o) const { return field_->same_as(*o.field_) && vars_ == o.vars_; }

 private:
  Ring(FieldPtr f, std::vector<std::string> v) : field_(std::move(f)), vars_(std::move(v)) {}
  FieldPtr field_;
  std::vector<std::string> vars_;
};

struct RingRef {
  RingPtr ring;
  Coefficient zero() const { return Coefficient::from_int(ring->field(), 0); }
  Coefficient one() const { return Coefficient::from_int(ring->field(), 1); }
  Coefficient from_int(std::int64_t v) const { return Coefficient::from_int(ring->field(), v); }
  std::size_t nvars() const { return ring ? ring->nvars() : 0; }
};

using MultiPoly = SparsePoly<Coefficient, RingRef>;

const RingPtr& ring_of(const MultiPoly& f);
MultiPoly poly_zero(const RingPtr& ring);
MultiPoly poly_const(const RingPtr& ring, const Coefficient& c);
MultiPoly poly_int(const RingPtr& ring, std::int64_t v);
MultiPoly poly_var(const RingPtr& ring, const std::string& name);
MultiPoly poly_var(const RingPtr& ring, std::size_t index);

std::string to_string(const MultiPoly& f);

MultiPoly partial_derivative(const MultiPoly& f, std::size_t var);
MultiPoly partial_derivative(const MultiPoly& f, const std::string& var);

Coefficient evaluate(const MultiPoly& f, const std::vector<Coefficient>& point);

// Replace variable i by images[i]; all images live in a common target ring.
MultiPoly compose(const MultiPoly& f, const std::vector<MultiPoly>& images);

// f(x + a, y + b, ...): moves the point `shift` to the origin.
MultiPoly translate(const MultiPoly& f, const std::vector<Coefficient>& shift);

// Move f into another ring, matching variables and parameters by name.
MultiPoly change_ring(const MultiPoly& f, const RingPtr& target);

// Set a field parameter to a value; the result lives in `target`.
MultiPoly specialize_param(const MultiPoly& f, const RingPtr& target, const std::string& name,
                           const Coefficient& value);

// p-th root of a polynomial whose exponents are all divisible by p.
MultiPoly poly_pth_root(const MultiPoly& f);

// Set of field parameters appearing in the coefficients.
std::vector<std::string> params_used(const MultiPoly& f);

// Reduced fraction num/den with monic denominator.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(MultiPoly num);
  RationalFunction(MultiPoly num, MultiPoly den);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const RingPtr& ring() const { return ring_of(num_); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction operator-() const;
  bool operator==(const RationalFunction& o) const { return num_ == o.num_ && den_ == o.den_; }

  RationalFunction derivative(std::size_t var) const;
  RationalFunction compose(const std::vector<RationalFunction>& images) const;
  Coefficient evaluate(const std::vector<Coefficient>& point) const;
  RationalFunction change_ring(const RingPtr& target) const;

  std::string to_string() const;

 private:
  void normalize();
  MultiPoly num_, den_;
};

}  // namespace ramlab
