#include "ramlab/bounds.hpp"

#include <algorithm>

#include "ramlab/errors.hpp"
#include "ramlab/poly_gcd.hpp"

namespace ramlab {

namespace {

constexpr std::int64_t kEpCap = 1024;

bool is_monomial_ideal(const std::vector<MultiPoly>& gens) {
  for (const auto& g : gens)
    if (g.size() != 1) return false;
  return true;
}

std::vector<MultiPoly> monomial_radical(const std::vector<MultiPoly>& gens) {
  std::vector<MultiPoly> out;
  for (const auto& g : gens) {
    Monomial m;
    const Monomial& e = g.leading_monomial();
    for (std::size_t i = 0; i < kMaxVars; ++i) m[i] = e[i] > 0 ? 1 : 0;
    MultiPoly r = MultiPoly::monomial(g.context(), m, g.context().one());
    if (std::find(out.begin(), out.end(), r) == out.end()) out.push_back(r);
  }
  return out;
}

// Every product of r elements of `rad` (with repetition) lies in I.
bool power_contained(const IdealHandle& I, const std::vector<MultiPoly>& rad, std::int64_t r) {
  std::vector<std::size_t> idx(static_cast<std::size_t>(r), 0);
  for (;;) {
    MultiPoly prod = poly_int(I.ring(), 1);
    for (auto i : idx) prod *= rad[i];
    if (!I.contains(prod)) return false;
    // next non-decreasing index tuple
    std::size_t k = idx.size();
    while (k > 0 && idx[k - 1] + 1 == rad.size()) --k;
    if (k == 0) return true;
    const std::size_t v = idx[k - 1] + 1;
    for (std::size_t j = k - 1; j < idx.size(); ++j) idx[j] = v;
  }
}

}  // namespace

EpReport ep_report(const IdealHandle& I, const EpMode& mode) {
  EpReport rep;
  std::vector<MultiPoly> gens;
  for (const auto& g : I.generators())
    if (!g.is_zero()) gens.push_back(change_ring(g, I.ring()));
  if (gens.empty()) {
    rep.ep = 1;
    rep.shape = "zero";
    return rep;
  }
  if (I.is_unit()) {
    rep.ep = 0;
    rep.shape = "unit";
    rep.radical = {poly_int(I.ring(), 1)};
    return rep;
  }

  if (mode.kind == EpMode::Kind::Assisted) {
    if (!mode.claimed_radical) fail(ErrorCode::InvalidInput, "assisted ep needs a claimed radical");
    const IdealHandle& J = *mode.claimed_radical;
    for (const auto& g : gens)
      if (!J.contains(change_ring(g, J.ring())))
        fail(ErrorCode::NotContaining, "claimed radical does not contain " + to_string(g));
    for (const auto& h : J.generators())
      if (!h.is_zero() && !in_radical(I, change_ring(h, I.ring())))
        fail(ErrorCode::NotInRadical, to_string(h) + " is not in the radical of the ideal");
    for (const auto& h : J.generators())
      if (!h.is_zero()) rep.radical.push_back(change_ring(h, I.ring()));
    rep.shape = "assisted";
    rep.radical_assumed = true;
  } else if (gens.size() == 1) {
    rep.radical = {squarefree_part(gens[0])};
    rep.shape = "principal";
  } else if (is_monomial_ideal(gens)) {
    rep.radical = monomial_radical(gens);
    rep.shape = "monomial";
  } else if (I.is_zero_dimensional()) {
    rep.radical = radical_zero_dim(I).basis();
    rep.shape = "zero-dimensional";
  } else {
    MultiPoly d = gens[0];
    for (std::size_t i = 1; i < gens.size(); ++i) d = poly_gcd(d, gens[i]);
    const MultiPoly h = d.is_constant() ? d : squarefree_part(d);
    // I ⊆ (h) ⊆ √(h); if h ∈ √I the two radicals agree.
    if (d.is_constant() || !in_radical(I, h))
      fail(ErrorCode::UnsupportedIdealShape, "ep: ideal is not principal, monomial, zero-dimensional or divisorial");
    rep.radical = {h};
    rep.shape = "divisorial";
  }

  for (std::int64_t r = 1; r <= kEpCap; ++r) {
    if (power_contained(I, rep.radical, r)) {
      rep.ep = r;
      return rep;
    }
  }
  fail(ErrorCode::Internal, "ep: no exponent found below the cap");
}

std::int64_t ep(const IdealHandle& I, const EpMode& mode) { return ep_report(I, mode).ep; }

FixedIdeal fixed_ideal(const ChartMap& sigma, const std::string& chart) {
  if (sigma.empty()) fail(ErrorCode::InvalidInput, "fixed_ideal: empty automorphism");
  const RingPtr& ring = sigma[0].ring();
  if (sigma.size() != ring->nvars()) fail(ErrorCode::InvalidInput, "fixed_ideal: one image per ring variable expected");
  std::vector<MultiPoly> gens;
  MultiPoly dens = poly_int(ring, 1);
  for (std::size_t i = 0; i < sigma.size(); ++i) {
    const RationalFunction d = sigma[i].change_ring(ring) - RationalFunction(poly_var(ring, i));
    if (!d.is_zero()) gens.push_back(d.num());
    dens *= sigma[i].change_ring(ring).den();
  }
  IdealHandle I(ring, gens);
  // Drop components supported where sigma is not regular.
  if (!dens.is_constant() && !gens.empty()) I = IdealHandle(ring, saturate(I, squarefree_part(dens)).basis());
  return {sigma, I, chart};
}

FixedIdeal fixed_ideal(const std::vector<MultiPoly>& sigma, const std::string& chart) {
  ChartMap m;
  for (const auto& s : sigma) m.emplace_back(s);
  return fixed_ideal(m, chart);
}

CodifferentReport codifferent_r_s(const MultiPoly& f_in, const MultiPoly& g_in, const PlanarPoint& P, std::size_t t_var) {
  const RingPtr& ring = ring_of(f_in);
  if (t_var >= ring->nvars()) fail(ErrorCode::InvalidInput, "codifferent: t variable out of range");
  if (ring->nvars() != 3) fail(ErrorCode::InvalidInput, "codifferent: expected A = k[x,y] and one new variable");
  std::vector<std::size_t> a_vars;
  for (std::size_t i = 0; i < ring->nvars(); ++i)
    if (i != t_var) a_vars.push_back(i);

  std::int32_t n = 0;
  for (const auto& t : f_in.terms()) n = std::max(n, t.mono[t_var]);
  MultiPoly lc = poly_zero(ring);
  for (const auto& t : f_in.terms())
    if (t.mono[t_var] == n) lc += MultiPoly::monomial(f_in.context(), t.mono / Monomial::var(t_var, n), t.coeff);
  if (n < 1 || !lc.is_constant() || lc.is_zero())
    fail(ErrorCode::NotMonic, "codifferent: " + to_string(f_in) + " is not monic in " + ring->vars()[t_var]);

  CodifferentReport rep;
  rep.f = f_in.scale(lc.constant_term().inverse());
  rep.t_var = t_var;
  rep.g = change_ring(g_in, ring);
  rep.delta = partial_derivative(rep.f, t_var);
  if (rep.delta.is_zero()) fail(ErrorCode::InvalidInput, "codifferent: f is inseparable in " + ring->vars()[t_var]);

  const IdealHandle J(ring, {rep.f, rep.delta});
  std::vector<std::string> keep;
  for (auto i : a_vars) keep.push_back(ring->vars()[i]);
  const IdealHandle ann = eliminate(J, keep);
  rep.annihilator = ann.basis();
  if (ann.is_unit()) return rep;

  const std::int64_t cap =
      static_cast<std::int64_t>(n) * rep.f.total_degree() * std::max<std::int64_t>(1, rep.delta.total_degree());
  MultiPoly gr = poly_int(ring, 1);
  for (std::int64_t r = 1;; ++r) {
    if (r > cap)
      fail(ErrorCode::AnnihilatorCapExceeded,
           "codifferent: no power of " + to_string(rep.g) + " up to " + std::to_string(cap) + " annihilates R/(Delta)");
    gr *= rep.g;
    if (ann.contains(gr)) {
      rep.r = r;
      break;
    }
  }
  const IdealHandle G(ring, {rep.g});
  for (const auto& a : rep.annihilator)
    if (!a.is_zero() && !in_radical(G, a)) {
      rep.warnings.push_back("branch locus of the presentation is not contained in " + to_string(rep.g) + " = 0");
      break;
    }

  const PlanarPoint Q = P.lift_to(ring->field());
  const std::vector<Coefficient> c{Q.x, Q.y};
  std::vector<MultiPoly> extra;
  for (std::size_t k = 0; k < 2; ++k) extra.push_back(poly_var(ring, a_vars[k]) - poly_const(ring, c[k]));
  const IdealHandle fiber = ideal_sum(J, extra);
  rep.s = fiber.is_unit() ? 0 : static_cast<std::int64_t>(fiber.standard_monomials().size());
  return rep;
}

CodifferentReport codifferent_r_s(const MultiPoly& f, const MultiPoly& g, const PlanarPoint& P) {
  return codifferent_r_s(f, g, P, ring_of(f)->nvars() - 1);
}

BoundReport depth_bound(std::int64_t p, std::int64_t group_order, std::int64_t i_x, std::int64_t ep_max, std::int64_t r,
                        std::int64_t s, bool locally_constant) {
  if (i_x != 1 && i_x != 2) fail(ErrorCode::InvalidIx, "i_x must be 1 or 2, got " + std::to_string(i_x));
  BoundReport b;
  b.p = p;
  b.group_order = group_order;
  b.i_x = i_x;
  b.ep_max = ep_max;
  b.r = r;
  b.s = s;
  b.locally_constant = locally_constant;
  if (locally_constant) {
    b.N = 2;
    return b;
  }
  if (p < 2 || group_order < 1 || ep_max < 1 || r < 1 || s < 1)
    fail(ErrorCode::InvalidInput, "depth_bound: p >= 2, |G| >= 1, ep >= 1, r >= 1, s >= 1 required");
  b.M = r * s * i_x;
  if (b.M > 100000) fail(ErrorCode::InvalidInput, "depth_bound: M too large");
  const auto M = static_cast<unsigned>(b.M);
  b.M1 = BigInt(1) << (M - 1);
  b.M1 *= i_x * group_order;
  b.M2 = boost::multiprecision::pow(BigInt(2 * p + 1), M) * ep_max;
  b.N = b.M1 + b.M2 * i_x * group_order;
  return b;
}

BigInt per_curve_bound(const BigInt& M1, const BigInt& M2, const BigInt& dcx, const BigInt& group_order) {
  if (M1 < 0 || M2 < 0 || dcx < 0 || group_order < 0) fail(ErrorCode::InvalidInput, "per_curve_bound: negative input");
  return M1 + M2 * dcx * group_order;
}

std::int64_t i_x_from_covector(const MultiPoly& h, const PlanarPoint& P, const Coefficient& a, const Coefficient& b) {
  const RingPtr& ring = ring_of(h);
  const PlanarPoint Q = P.lift_to(ring->field());
  const std::vector<Coefficient> c{Q.x, Q.y};
  if (!evaluate(h, c).is_zero()) fail(ErrorCode::NotOnCurve, "point is not on the divisor");
  const Coefficient hx = evaluate(partial_derivative(h, std::size_t{0}), c);
  const Coefficient hy = evaluate(partial_derivative(h, std::size_t{1}), c);
  if (hx.is_zero() && hy.is_zero()) fail(ErrorCode::SingularAtPoint, "divisor is singular at the point");
  if (a.is_zero() && b.is_zero()) fail(ErrorCode::InvalidInput, "zero covector");
  return (a.lift_to(ring->field()) * hy - b.lift_to(ring->field()) * hx).is_zero() ? 2 : 1;
}

std::int64_t i_x_of_curve(const MultiPoly& curve, const MultiPoly& h, const PlanarPoint& P) {
  const auto n = intersection_multiplicity(curve, h, P);
  if (!n) fail(ErrorCode::CurveInDivisor, "test curve shares a component with the divisor");
  return *n;
}

}  // namespace ramlab
