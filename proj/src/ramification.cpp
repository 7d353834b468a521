#include "ramlab/ramification.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>

#include "ramlab/errors.hpp"
#include "ramlab/ideals.hpp"

namespace ramlab {

namespace {

bool same_polar_part(const LaurentGerm& a, const LaurentGerm& b) {
  return a.polar_part().same_terms(b.polar_part());
}

// Recompute a germ at growing precision until its polar part is certified
// and stable across two rounds.
LaurentGerm certified_germ(const std::function<LaurentGerm(int)>& compute, const PrecisionPolicy& policy,
                           int* used = nullptr) {
  std::optional<LaurentGerm> prev;
  for (int K = std::max(1, policy.initial); K <= policy.cap; K *= 2) {
    LaurentGerm G;
    try {
      G = compute(K);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::PrecisionExhausted && e.code() != ErrorCode::ZeroGerm) throw;
      prev.reset();
      continue;
    }
    if (used) *used = K;
    if (G.is_exact()) return G;
    if (G.precision() <= 0) {
      prev.reset();
      continue;
    }
    const int v = G.is_zero() ? 0 : G.valuation();
    if (prev && same_polar_part(*prev, G) && K > std::abs(v) + policy.guard) return G;
    prev = G;
  }
  fail(ErrorCode::PrecisionExhausted, "polar part not certified below precision " + std::to_string(policy.cap));
}

void require_certified(const LaurentGerm& g) {
  if (!g.is_exact() && g.precision() < 0)
    fail(ErrorCode::PrecisionExhausted, "polar part of " + g.to_string() + " is not known");
}

LaurentGerm remove_term(const LaurentGerm& g, int exponent, std::uint32_t p) {
  // g - (h^p - h) with h = a^(1/p) u^(exponent/p).
  const Coefficient a = g.coeff(exponent);
  return g - LaurentGerm::monomial(a, exponent) + LaurentGerm::monomial(a.pth_root(), exponent / static_cast<int>(p));
}

std::uint8_t max_perfection(const LaurentGerm& g) {
  std::uint8_t k = 0;
  if (g.is_zero()) return k;
  const int top = g.is_exact() ? g.top_exponent() : std::min(g.top_exponent(), g.precision() - 1);
  for (int e = g.valuation(); e <= top; ++e) k = std::max(k, g.coeff(e).max_perfection());
  return k;
}

RingPtr ring_over(const RingPtr& ring, const FieldPtr& field) {
  return ring->field()->same_as(*field) ? ring : ring->with_field(field);
}

std::string fresh_param(const Ring& ring, std::string base) {
  auto clash = [&](const std::string& n) { return ring.field()->param_index(n) || ring.var_index(n); };
  std::string name = base;
  for (int i = 1; clash(name); ++i) name = base + std::to_string(i);
  return name;
}

}  // namespace

ASheafSpec ASheafSpec::make(RationalFunction g, MultiPoly h, std::string chart) {
  const RingPtr& ring = ring_of(h);
  if (ring->p() == 2) fail(ErrorCode::SemanticError, "p = 2 is excluded: Artin-Schreier data here requires p > 2");
  g = g.change_ring(ring);
  if (h.is_zero()) fail(ErrorCode::InvalidInput, "divisor equation is zero");
  if (!g.den().is_constant() && !in_radical(IdealHandle(ring, {g.den()}), h))
    fail(ErrorCode::InvalidInput, "poles of g are not contained in h = 0");
  return ASheafSpec{std::move(g), std::move(h), std::move(chart)};
}

ASReduction as_reduce(const LaurentGerm& g, std::uint32_t p) {
  require_certified(g);
  LaurentGerm r = g;
  for (;;) {
    const int m = r.pole_order();
    if (m == 0) return {r, 0};
    if (m % static_cast<int>(p) != 0) return {r, m};
    r = remove_term(r, -m, p);
  }
}

ASReduction as_reduce_randomized(const LaurentGerm& g, std::uint32_t p, std::mt19937_64& rng) {
  require_certified(g);
  LaurentGerm r = g;
  for (;;) {
    std::vector<int> candidates;
    for (int e = r.is_zero() ? 0 : r.valuation(); e < 0; ++e)
      if (e % static_cast<int>(p) == 0 && !r.coeff(e).is_zero()) candidates.push_back(e);
    if (candidates.empty()) return {r, r.pole_order()};
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    r = remove_term(r, candidates[pick(rng)], p);
  }
}

RamificationReport swan_on_curve(const ASheafSpec& sheaf, const CurveGerm& C, const PlanarPoint& P,
                                 const PrecisionPolicy& policy) {
  const FieldPtr field = C.phi.field() ? C.phi.field() : ring_of(C.equation)->field();
  const RingPtr ring = ring_over(sheaf.ring(), field);
  const RationalFunction g = sheaf.g.change_ring(ring);
  const PlanarPoint Q = P.lift_to(field);
  const bool has_equation = !C.equation.is_zero();
  MultiPoly eq;
  if (has_equation) {
    eq = change_ring(C.equation, ring);
    if (!intersection_multiplicity(eq, change_ring(sheaf.h, ring), Q))
      fail(ErrorCode::CurveInDivisor, "curve " + to_string(eq) + " lies in the divisor near " + Q.to_string());
  }
  RamificationReport rep;
  const LaurentGerm G = certified_germ(
      [&](int K) {
        const CurveGerm germ = has_equation ? hensel_parametrize(eq, Q, C.solved_var, K) : C;
        return substitute(g, germ.coordinates(), K);
      },
      policy, &rep.precision);
  ASReduction red;
  if (policy.reduction_seed) {
    std::mt19937_64 rng(*policy.reduction_seed);
    red = as_reduce_randomized(G, sheaf.p(), rng);
  } else {
    red = as_reduce(G, sheaf.p());
  }
  rep.sw = red.sw;
  rep.dim = 1;
  rep.reduced = red.reduced;
  rep.unramified = red.reduced.pole_order() == 0;
  rep.leading = rep.unramified ? Coefficient::from_int(field, 0) : red.reduced.leading_coeff();
  rep.perfection = max_perfection(red.reduced.polar_part());
  return rep;
}

RamificationReport swan_on_curve(const ASheafSpec& sheaf, const MultiPoly& curve, const PlanarPoint& P,
                                 const PrecisionPolicy& policy) {
  const RingPtr& ring = ring_of(curve);
  const auto shift = std::vector<Coefficient>{P.x.lift_to(ring->field()), P.y.lift_to(ring->field())};
  if (!evaluate(curve, shift).is_zero()) fail(ErrorCode::NotOnCurve, "point " + P.to_string() + " is not on the curve");
  const MultiPoly fhat = translate(curve, shift);
  std::size_t solve = 1;
  if (fhat.derivative(1).constant_term().is_zero()) solve = 0;
  if (fhat.derivative(solve).constant_term().is_zero())
    fail(ErrorCode::SingularAtPoint, "curve " + to_string(curve) + " is singular at " + P.to_string());
  CurveGerm C;
  C.kind = CurveGerm::Kind::Implicit;
  C.equation = curve;
  C.point = P;
  C.solved_var = solve;
  C.phi = LaurentGerm::zero(ring->field());
  return swan_on_curve(sheaf, C, P, policy);
}

PhiDimReport dl_phi_dim_report(const ASheafSpec& sheaf, const RationalFunction& f_in, const PlanarPoint& P_in,
                               const PhiDimOptions& options) {
  const RingPtr& ring = sheaf.ring();
  const RationalFunction f = f_in.change_ring(ring);
  const PlanarPoint P = P_in.lift_to(ring->field());
  const std::vector<Coefficient> pc{P.x, P.y};
  if (evaluate(f.den(), pc).is_zero()) fail(ErrorCode::InvalidInput, "test function is not regular at " + P.to_string());
  if (!evaluate(f.num(), pc).is_zero())
    fail(ErrorCode::NotVanishing, "test function does not vanish at " + P.to_string());

  PhiDimReport rep;
  if (!evaluate(sheaf.h, pc).is_zero()) {
    // Lisse near P: both fibers are unramified there.
    rep.special.unramified = rep.generic.unramified = true;
    rep.special.leading = rep.generic.leading = Coefficient::from_int(ring->field(), 0);
    return rep;
  }

  rep.special = swan_on_curve(sheaf, f.num(), P, options.precision);

  // Generic point of the divisor near P, named by a fresh transcendental.
  const CurveGerm D = hensel_parametrize(sheaf.h, P, 16);
  if (!D.phi.is_exact())
    fail(ErrorCode::GenericFiberSingular, "divisor is not a polynomial graph near " + P.to_string());
  const auto dcoords = D.coordinates();
  {
    const LaurentGerm along = substitute_unchecked(f.num(), dcoords);
    if (along.is_zero()) fail(ErrorCode::CurveInDivisor, "the fibers of the test function contain the divisor");
    if (along.valuation() != 1)
      fail(ErrorCode::GenericFiberSingular, "fibers meet the divisor with multiplicity " +
                                                std::to_string(along.valuation()) + " at " + P.to_string());
  }
  rep.generic_param = fresh_param(*ring, "rho");
  const FieldPtr gfield = ring->field()->with_params({rep.generic_param});
  const RingPtr gring = ring->with_field(gfield);
  const Coefficient beta = Coefficient::param(gfield, rep.generic_param);
  auto point_at = [&](const Coefficient& t) {
    std::vector<Coefficient> z;
    for (const auto& c : dcoords) {
      Coefficient v = Coefficient::from_int(t.field(), 0);
      if (c.is_zero()) {
        z.push_back(v);
        continue;
      }
      for (int e = c.top_exponent(); e >= 0; --e) v = v * t + c.coeff(e).lift_to(t.field());
      z.push_back(v);
    }
    return z;
  };
  auto fiber_through = [&](const RingPtr& r, const std::vector<Coefficient>& z) {
    const RationalFunction fr = f.change_ring(r);
    const Coefficient rho = fr.evaluate(z);
    return fr.num() - fr.den().scale(rho);
  };
  {
    const auto z = point_at(beta);
    const PlanarPoint Z{z[0], z[1], P.chart};
    try {
      rep.generic = swan_on_curve(sheaf, fiber_through(gring, z), Z, options.precision);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::SingularAtPoint) fail(ErrorCode::GenericFiberSingular, e.what());
      throw;
    }
  }
  rep.dim_phi = rep.special.dimtot() - rep.generic.dimtot();

  if (options.sample) {
    for (std::uint32_t v = 1; v < ring->p(); ++v) {
      try {
        const auto z = point_at(Coefficient::from_int(ring->field(), v));
        rep.sampled.push_back(swan_on_curve(sheaf, fiber_through(ring, z), {z[0], z[1], P.chart}, options.precision).sw);
      } catch (const Error&) {
        // Degenerate sample points are skipped.
      }
    }
  }
  return rep;
}

std::int64_t dl_phi_dim(const ASheafSpec& sheaf, const RationalFunction& f, const PlanarPoint& P) {
  return dl_phi_dim_report(sheaf, f, P).dim_phi;
}

boost::rational<std::int64_t> swan_from_breaks(const BreakData& b) {
  if (b.orders.size() != b.dims.size()) fail(ErrorCode::InvalidInput, "break data: orders and dims differ in length");
  if (b.orders.empty() || b.orders.back() != 1) fail(ErrorCode::InvalidInput, "break data: filtration must end at 1");
  for (std::size_t i = 0; i < b.orders.size(); ++i) {
    if (b.orders[i] == 0 || b.group_order % b.orders[i] != 0)
      fail(ErrorCode::InvalidInput, "break data: |G_i| must divide |G|");
    if (i > 0 && b.orders[i] > b.orders[i - 1]) fail(ErrorCode::InvalidInput, "break data: orders must decrease");
    if (b.orders[i] == 1 && b.dims[i] != 0) fail(ErrorCode::InvalidInput, "break data: trivial G_i has no moved part");
  }
  boost::rational<std::int64_t> sw = 0;
  for (std::size_t i = 1; i < b.orders.size(); ++i)
    sw += boost::rational<std::int64_t>(static_cast<std::int64_t>(b.dims[i]),
                                        static_cast<std::int64_t>(b.group_order / b.orders[i]));
  return sw;
}

IntersectionNumber i_of_automorphism(const LaurentGerm& sigma_u) {
  if (sigma_u.is_zero() || sigma_u.valuation() != 1)
    fail(ErrorCode::NotAutomorphism, "sigma(u) must have valuation 1");
  const LaurentGerm u = LaurentGerm::monomial(Coefficient::from_int(sigma_u.field(), 1), 1);
  const LaurentGerm d = sigma_u - u;
  if (d.is_zero()) {
    if (d.is_exact()) return std::nullopt;
    fail(ErrorCode::PrecisionExhausted, "sigma(u) - u vanishes to the known precision");
  }
  return d.valuation();
}

GosReport gos_euler_line_report(const ASheafSpec& sheaf, const MultiPoly& line_in, const PrecisionPolicy& policy) {
  const RingPtr& ring = sheaf.ring();
  if (ring->nvars() != 3) fail(ErrorCode::InvalidInput, "gos_euler_line expects homogeneous coordinates on P^2");
  const MultiPoly line = change_ring(line_in, ring);
  for (const auto& t : line.terms())
    if (t.mono.degree() != 1) fail(ErrorCode::InvalidInput, "line must be a linear form");
  auto homogeneous_degree = [](const MultiPoly& f) {
    const auto d = f.total_degree();
    for (const auto& t : f.terms())
      if (t.mono.degree() != d) fail(ErrorCode::InvalidInput, "sheaf data must be homogeneous on P^2");
    return d;
  };
  if (!sheaf.g.is_zero() && homogeneous_degree(sheaf.g.num()) != homogeneous_degree(sheaf.g.den()))
    fail(ErrorCode::InvalidInput, "g must have degree 0 in homogeneous coordinates");
  homogeneous_degree(sheaf.h);
  const FieldPtr& field = ring->field();
  const auto zero = Coefficient::from_int(field, 0), one = Coefficient::from_int(field, 1);
  std::vector<Coefficient> L(3, zero);
  for (std::size_t i = 0; i < 3; ++i) L[i] = line.coeff(Monomial::var(i));
  std::size_t k = 3;
  for (std::size_t i = 0; i < 3; ++i)
    if (!L[i].is_zero()) k = i;
  if (k == 3) fail(ErrorCode::InvalidInput, "line equation is zero");
  std::vector<std::vector<Coefficient>> v;
  for (std::size_t j = 0; j < 3; ++j) {
    if (j == k) continue;
    std::vector<Coefficient> w(3, zero);
    w[j] = one;
    w[k] = -(L[j] / L[k]);
    v.push_back(w);
  }

  const RingPtr uring = Ring::make(field, {fresh_param(*ring, "u")});
  const MultiPoly u = poly_var(uring, std::size_t{0});
  auto chart_images = [&](const std::vector<Coefficient>& a, const std::vector<Coefficient>& b) {
    // point a + u*b
    std::vector<RationalFunction> im;
    for (std::size_t i = 0; i < 3; ++i) im.emplace_back(poly_const(uring, a[i]) + u.scale(b[i]));
    return im;
  };
  auto point_string = [&](const std::vector<Coefficient>& pt) {
    return "[" + pt[0].to_string() + ":" + pt[1].to_string() + ":" + pt[2].to_string() + "]";
  };
  auto local_swan = [&](const RationalFunction& gl, const Coefficient& at) {
    const std::vector<LaurentGerm> asg{LaurentGerm::constant(at) + LaurentGerm::monomial(one, 1)};
    const LaurentGerm G = certified_germ([&](int K) { return substitute(gl, asg, K); }, policy);
    return as_reduce(G, sheaf.p()).sw;
  };

  GosReport rep;
  // Affine part: points v[1] + u*v[0].
  const auto imA = chart_images(v[1], v[0]);
  std::vector<MultiPoly> imA_poly;
  for (const auto& r : imA) imA_poly.push_back(r.num());
  const MultiPoly hA = compose(sheaf.h, imA_poly);
  if (hA.is_zero()) fail(ErrorCode::LineInDivisor, "line " + to_string(line) + " lies in the divisor");
  const RationalFunction gA = sheaf.g.compose(imA);
  if (!hA.is_constant()) {
    const auto roots = univariate_roots(squarefree_part(hA), 0);
    if (!roots.complete)
      fail(ErrorCode::UnresolvableWithoutExtension, "boundary points of the line need a field extension");
    for (const auto& r : roots.roots) {
      std::vector<Coefficient> pt(3);
      for (std::size_t i = 0; i < 3; ++i) pt[i] = v[1][i] + r * v[0][i];
      rep.boundary.push_back(point_string(pt));
      rep.swans.push_back(local_swan(gA, r));
    }
  }
  // The remaining point v[0], seen in the chart v[0] + u*v[1].
  if (evaluate(sheaf.h, v[0]).is_zero()) {
    const RationalFunction gB = sheaf.g.compose(chart_images(v[0], v[1]));
    rep.boundary.push_back(point_string(v[0]));
    rep.swans.push_back(local_swan(gB, zero));
  }
  rep.chi = 2 - static_cast<std::int64_t>(rep.boundary.size());
  for (auto s : rep.swans) rep.chi -= s;
  return rep;
}

std::int64_t gos_euler_line(const ASheafSpec& sheaf, const MultiPoly& line) {
  return gos_euler_line_report(sheaf, line).chi;
}

}  // namespace ramlab
