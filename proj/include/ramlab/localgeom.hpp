#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramlab/laurent.hpp"
#include "ramlab/multipoly.hpp"

namespace ramlab {

// Point of a two-variable affine chart; coordinates follow the ring's
// variable order.
struct PlanarPoint {
  Coefficient x;
  Coefficient y;
  std::string chart = "A2";

  static PlanarPoint origin(const RingPtr& ring, std::string chart = "A2");
  std::vector<Coefficient> coords() const { return {x, y}; }
  std::string to_string() const;
  PlanarPoint lift_to(const FieldPtr& field) const;
};

// Local intersection numbers are natural numbers or infinity (nullopt).
using IntersectionNumber = std::optional<std::int64_t>;
std::string to_string(const IntersectionNumber& n);

struct CurveGerm {
  enum class Kind { Implicit, Parametric };
  Kind kind = Kind::Implicit;
  MultiPoly equation;
  PlanarPoint point;
  // Parametric form: coordinate `solved_var` equals its base value plus
  // phi(t), where t is the other coordinate minus its base value.
  std::size_t solved_var = 0;
  LaurentGerm phi;

  // (x(t), y(t)) as germs, for substitution.
  std::vector<LaurentGerm> coordinates() const;
};

std::int64_t multiplicity_at(const MultiPoly& f, const PlanarPoint& P);
IntersectionNumber intersection_multiplicity(const MultiPoly& f, const MultiPoly& g, const PlanarPoint& P);

CurveGerm hensel_parametrize(const MultiPoly& f, const PlanarPoint& P, std::size_t solve_for, int precision);
// Picks the coordinate to solve for: the one with nonzero partial, y when both qualify.
CurveGerm hensel_parametrize(const MultiPoly& f, const PlanarPoint& P, int precision);

MultiPoly jet_truncate(const MultiPoly& f, const PlanarPoint& P, std::int64_t N);
// Taylor polynomial of a rational function regular at P, terms of degree < N.
MultiPoly jet_truncate(const RationalFunction& f, const PlanarPoint& P, std::int64_t N);

// Lowest-degree homogeneous part of f, in coordinates centered at P.
MultiPoly tangent_cone(const MultiPoly& f, const PlanarPoint& P);

}  // namespace ramlab
