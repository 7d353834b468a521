#pragma once

#include <climits>
#include <map>
#include <string>
#include <vector>

#include "ramlab/coefficient.hpp"
#include "ramlab/multipoly.hpp"

namespace ramlab {

// Truncated Laurent series sum_{i >= v} c_i u^i, known for exponents below
// the absolute precision K. A germ with K == kExact carries no truncation.
class LaurentGerm {
 public:
  static constexpr int kExact = INT_MAX;

  LaurentGerm() = default;
  static LaurentGerm zero(FieldPtr field, int precision = kExact);
  static LaurentGerm constant(const Coefficient& c, int precision = kExact);
  static LaurentGerm monomial(const Coefficient& c, int exponent, int precision = kExact);
  // coeffs[i] is the coefficient of u^(low + i).
  static LaurentGerm from_coeffs(FieldPtr field, int low, std::vector<Coefficient> coeffs, int precision = kExact);
  static LaurentGerm from_poly(const MultiPoly& f);  // f univariate in its ring's variable 0

  const FieldPtr& field() const { return field_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_exact() const { return prec_ == kExact; }
  // Valuation; kExact for a zero germ.
  int valuation() const { return coeffs_.empty() ? kExact : val_; }
  int precision() const { return prec_; }
  Coefficient coeff(int exponent) const;
  const Coefficient& leading_coeff() const { return coeffs_.front(); }
  // Highest exponent with a stored coefficient (valuation - 1 if none).
  int top_exponent() const { return val_ + static_cast<int>(coeffs_.size()) - 1; }

  LaurentGerm operator+(const LaurentGerm& o) const;
  LaurentGerm operator-(const LaurentGerm& o) const;
  LaurentGerm operator-() const;
  LaurentGerm operator*(const LaurentGerm& o) const;
  LaurentGerm scale(const Coefficient& c) const;
  LaurentGerm shift(int k) const;  // multiply by u^k
  LaurentGerm truncate(int precision) const;
  LaurentGerm pow(int e, int terms = 32) const;
  // Replace coefficient of u^exponent (exponent must be below precision).
  LaurentGerm with_coeff(int exponent, const Coefficient& c) const;

  // Terms with negative exponent.
  LaurentGerm polar_part() const;
  // Pole order, 0 when the germ has no polar part.
  int pole_order() const { return (!is_zero() && val_ < 0) ? -val_ : 0; }

  bool same_terms(const LaurentGerm& o) const;
  std::string to_string(const std::string& u = "u") const;

  // Map coefficients into another field (matching parameters by name).
  LaurentGerm lift_to(const FieldPtr& field) const;

 private:
  void trim();

  FieldPtr field_;
  int val_ = 0;
  std::vector<Coefficient> coeffs_;
  int prec_ = kExact;
};

// 1/f with `terms` known coefficients when f is exact, else with the
// relative precision f carries.
LaurentGerm series_invert(const LaurentGerm& f, int terms = 32);

// Evaluate f with each ring variable replaced by a germ. Throws
// PrecisionExhausted when the result vanishes to a finite precision.
LaurentGerm substitute(const MultiPoly& f, const std::vector<LaurentGerm>& assignment);
LaurentGerm substitute(const MultiPoly& f, const std::map<std::string, LaurentGerm>& assignment);
// Same, but returns an inexact zero germ instead of throwing.
LaurentGerm substitute_unchecked(const MultiPoly& f, const std::vector<LaurentGerm>& assignment);
// num/den; the quotient uses `terms` coefficients for exact denominators.
LaurentGerm substitute(const RationalFunction& g, const std::vector<LaurentGerm>& assignment, int terms = 32);

}  // namespace ramlab
