#include "ramlab/localgeom.hpp"

#include <algorithm>
#include <utility>

#include "ramlab/errors.hpp"
#include "ramlab/poly_gcd.hpp"

namespace ramlab {

namespace {

void require_plane(const MultiPoly& f, const char* what) {
  if (ring_of(f)->nvars() != 2) fail(ErrorCode::InvalidInput, std::string(what) + ": expected a two-variable chart");
}

std::vector<Coefficient> shift_of(const PlanarPoint& P, const RingPtr& ring) {
  return {P.x.lift_to(ring->field()), P.y.lift_to(ring->field())};
}

std::vector<Coefficient> negated(std::vector<Coefficient> v) {
  for (auto& c : v) c = -c;
  return v;
}

// Data of F(x, 0): whether it vanishes, its degree, leading coefficient and order in x.
struct AxisRestriction {
  bool zero = true;
  std::int32_t degree = 0;
  std::int32_t order = 0;
  Coefficient lc;
};

AxisRestriction on_x_axis(const MultiPoly& f) {
  AxisRestriction r;
  for (const auto& t : f.terms()) {
    if (t.mono[1] != 0) continue;
    const std::int32_t e = t.mono[0];
    if (r.zero) {
      r = {false, e, e, t.coeff};
      continue;
    }
    if (e > r.degree) {
      r.degree = e;
      r.lc = t.coeff;
    }
    r.order = std::min(r.order, e);
  }
  return r;
}

MultiPoly divide_by_y(const MultiPoly& f) {
  Monomial y;
  y[1] = 1;
  std::vector<MultiPoly::Term> ts;
  for (const auto& t : f.terms()) ts.push_back({t.mono / y, t.coeff});
  return MultiPoly(f.context(), std::move(ts));
}

}  // namespace

PlanarPoint PlanarPoint::origin(const RingPtr& ring, std::string chart) {
  const auto zero = Coefficient::from_int(ring->field(), 0);
  return {zero, zero, std::move(chart)};
}

std::string PlanarPoint::to_string() const { return "(" + x.to_string() + ", " + y.to_string() + ")"; }

PlanarPoint PlanarPoint::lift_to(const FieldPtr& field) const { return {x.lift_to(field), y.lift_to(field), chart}; }

std::string to_string(const IntersectionNumber& n) { return n ? std::to_string(*n) : "inf"; }

std::vector<LaurentGerm> CurveGerm::coordinates() const {
  const FieldPtr& field = phi.field();
  const auto one = Coefficient::from_int(field, 1);
  const LaurentGerm t = LaurentGerm::monomial(one, 1);
  std::vector<LaurentGerm> xy(2);
  const std::vector<Coefficient> base{point.x.lift_to(field), point.y.lift_to(field)};
  xy[solved_var] = LaurentGerm::constant(base[solved_var]) + phi;
  xy[1 - solved_var] = LaurentGerm::constant(base[1 - solved_var]) + t;
  return xy;
}

std::int64_t multiplicity_at(const MultiPoly& f, const PlanarPoint& P) {
  require_plane(f, "multiplicity_at");
  if (f.is_zero()) fail(ErrorCode::InvalidInput, "multiplicity_at: zero polynomial");
  const auto shift = shift_of(P, ring_of(f));
  if (!evaluate(f, shift).is_zero()) fail(ErrorCode::NotOnCurve, "point " + P.to_string() + " is not on the curve");
  return translate(f, shift).low_degree();
}

IntersectionNumber intersection_multiplicity(const MultiPoly& f, const MultiPoly& g, const PlanarPoint& P) {
  require_plane(f, "intersection_multiplicity");
  const auto shift = shift_of(P, ring_of(f));
  MultiPoly F = translate(f, shift);
  MultiPoly G = translate(change_ring(g, ring_of(f)), shift);
  if (F.is_zero() || G.is_zero()) {
    if ((F.is_zero() || F.constant_term().is_zero()) && (G.is_zero() || G.constant_term().is_zero()))
      return std::nullopt;
    return 0;
  }
  // The recursion below terminates only for a finite answer.
  const MultiPoly common = poly_gcd(F, G);
  if (!common.is_constant() && common.constant_term().is_zero()) return std::nullopt;
  std::int64_t acc = 0;
  for (;;) {
    if (!F.constant_term().is_zero() || !G.constant_term().is_zero()) return acc;
    if (F.is_zero() || G.is_zero()) return std::nullopt;
    AxisRestriction rf = on_x_axis(F), rg = on_x_axis(G);
    if (rf.zero && rg.zero) return std::nullopt;  // y divides both
    if (rg.zero) {
      std::swap(F, G);
      std::swap(rf, rg);
    }
    if (rf.zero) {
      // F = y*H, and I(y, G) is the order of G(x, 0).
      acc += rg.order;
      F = divide_by_y(F);
      continue;
    }
    if (rf.degree > rg.degree) {
      std::swap(F, G);
      std::swap(rf, rg);
    }
    Monomial xs;
    xs[0] = rg.degree - rf.degree;
    G = G.scale(rf.lc) - F.mul_monomial(xs).scale(rg.lc);
  }
}

CurveGerm hensel_parametrize(const MultiPoly& f, const PlanarPoint& P, std::size_t solve_for, int precision) {
  require_plane(f, "hensel_parametrize");
  if (solve_for > 1) fail(ErrorCode::InvalidInput, "hensel_parametrize: bad coordinate index");
  if (precision < 1) fail(ErrorCode::InvalidInput, "hensel_parametrize: precision must be positive");
  const RingPtr& ring = ring_of(f);
  const FieldPtr& field = ring->field();
  const auto shift = shift_of(P, ring);
  const MultiPoly fhat = translate(f, shift);
  if (!fhat.constant_term().is_zero()) fail(ErrorCode::NotOnCurve, "point " + P.to_string() + " is not on the curve");
  const MultiPoly dfhat = fhat.derivative(solve_for);
  if (dfhat.constant_term().is_zero())
    fail(ErrorCode::SingularAtPoint,
         "partial derivative in " + ring->vars()[solve_for] + " vanishes at " + P.to_string());

  const auto one = Coefficient::from_int(field, 1);
  const std::size_t other = 1 - solve_for;
  std::vector<Coefficient> phi;  // coefficients of t^0 .. t^(known-1)
  phi.push_back(Coefficient::from_int(field, 0));
  auto as_germ = [&](int prec) { return LaurentGerm::from_coeffs(field, 0, phi, prec); };

  int known = 1;
  while (known < precision) {
    const int target = std::min(2 * known, precision);
    std::vector<LaurentGerm> asg(2);
    asg[solve_for] = as_germ(target);
    asg[other] = LaurentGerm::monomial(one, 1, target);
    const LaurentGerm F = substitute_unchecked(fhat, asg).truncate(target);
    const LaurentGerm dF = substitute_unchecked(dfhat, asg).truncate(target);
    const LaurentGerm next = (as_germ(target) - F * series_invert(dF, target)).truncate(target);
    phi.assign(static_cast<std::size_t>(target), Coefficient::from_int(field, 0));
    for (int e = 0; e < target; ++e) phi[static_cast<std::size_t>(e)] = next.coeff(e);
    known = target;
  }

  CurveGerm germ;
  germ.kind = CurveGerm::Kind::Parametric;
  germ.equation = f;
  germ.point = P;
  germ.solved_var = solve_for;
  germ.phi = as_germ(precision);
  // A short expansion may be an exact polynomial solution.
  const LaurentGerm exact = as_germ(LaurentGerm::kExact);
  if (exact.is_zero() || exact.top_exponent() <= precision / 2) {
    std::vector<LaurentGerm> asg(2);
    asg[solve_for] = exact;
    asg[other] = LaurentGerm::monomial(one, 1);
    if (substitute_unchecked(fhat, asg).is_zero()) germ.phi = exact;
  }
  return germ;
}

CurveGerm hensel_parametrize(const MultiPoly& f, const PlanarPoint& P, int precision) {
  require_plane(f, "hensel_parametrize");
  const auto shift = shift_of(P, ring_of(f));
  const MultiPoly fhat = translate(f, shift);
  if (!fhat.derivative(1).constant_term().is_zero()) return hensel_parametrize(f, P, 1, precision);
  return hensel_parametrize(f, P, 0, precision);
}

MultiPoly jet_truncate(const MultiPoly& f, const PlanarPoint& P, std::int64_t N) {
  const auto shift = shift_of(P, ring_of(f));
  return translate(translate(f, shift).degree_slice(0, N), negated(shift));
}

MultiPoly jet_truncate(const RationalFunction& f, const PlanarPoint& P, std::int64_t N) {
  const RingPtr& ring = f.ring();
  const auto shift = shift_of(P, ring);
  const MultiPoly num = translate(f.num(), shift);
  const MultiPoly den = translate(f.den(), shift);
  const Coefficient d0 = den.constant_term();
  if (d0.is_zero()) fail(ErrorCode::DivisionByZero, "jet_truncate: function is not regular at " + P.to_string());
  // 1/den = (1/d0) * sum_k (-e)^k with e = den/d0 - 1 of order >= 1.
  const MultiPoly e = den.scale(d0.inverse()) - poly_int(ring, 1);
  MultiPoly inv = poly_int(ring, 1);
  MultiPoly power = inv;
  for (std::int64_t k = 1; k < N; ++k) {
    power = (power * (-e)).degree_slice(0, N);
    if (power.is_zero()) break;
    inv += power;
  }
  const MultiPoly jet = (num * inv).degree_slice(0, N).scale(d0.inverse());
  return translate(jet, negated(shift));
}

MultiPoly tangent_cone(const MultiPoly& f, const PlanarPoint& P) {
  const MultiPoly g = translate(f, shift_of(P, ring_of(f)));
  if (g.is_zero()) return g;
  const auto m = g.low_degree();
  return g.degree_slice(m, m + 1);
}

}  // namespace ramlab
