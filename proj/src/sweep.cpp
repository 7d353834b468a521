#include "ramlab/sweep.hpp"

#include <future>
#include <map>

#include "ramlab/errors.hpp"
#include "ramlab/ideals.hpp"
#include "ramlab/poly_gcd.hpp"

namespace ramlab {

namespace {

Coefficient zero_of(const FieldPtr& f) { return Coefficient::from_int(f, 0); }

Coefficient det4(std::array<std::array<Coefficient, 4>, 4> m) {
  const FieldPtr field = m[0][0].field();
  Coefficient det = Coefficient::from_int(field, 1);
  for (std::size_t c = 0; c < 4; ++c) {
    std::size_t piv = c;
    while (piv < 4 && m[piv][c].is_zero()) ++piv;
    if (piv == 4) return zero_of(field);
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det = det * m[c][c];
    const Coefficient inv = m[c][c].inverse();
    for (std::size_t r = c + 1; r < 4; ++r) {
      if (m[r][c].is_zero()) continue;
      const Coefficient k = m[r][c] * inv;
      for (std::size_t j = c; j < 4; ++j) m[r][j] -= k * m[c][j];
    }
  }
  return det;
}

Coefficient at(const RationalFunction& f, const std::vector<Coefficient>& c) { return f.evaluate(c); }
Coefficient at(const MultiPoly& f, const std::vector<Coefficient>& c) { return evaluate(f, c); }

SSComponent lift_component(const SSComponent& s, const RingPtr& ring) {
  SSComponent out = s;
  if (!s.h.context().ring) out.h = poly_zero(ring);
  else out.h = change_ring(s.h, ring);
  if (s.omega.a.context().ring) out.omega.a = change_ring(s.omega.a, ring);
  if (s.omega.b.context().ring) out.omega.b = change_ring(s.omega.b, ring);
  if (s.kind == SSComponent::Kind::ConormalToPoint) out.point = s.point.lift_to(ring->field());
  return out;
}

CotangentPoint lift_nu(const CotangentPoint& nu, const FieldPtr& field) {
  return {nu.point.lift_to(field), nu.xi_x.lift_to(field), nu.xi_y.lift_to(field)};
}

// nu viewed over the field with `param` removed; nu must not depend on it.
CotangentPoint drop_param(const CotangentPoint& nu, const FieldPtr& field, const std::string& param) {
  const Coefficient zero = Coefficient::from_int(field, 0);
  auto d = [&](const Coefficient& c) {
    const Coefficient r = c.specialize(field, param, zero);
    if (r.lift_to(c.field()) != c) fail(ErrorCode::InvalidInput, "cotangent point depends on the family parameter");
    return r;
  };
  return {{d(nu.point.x), d(nu.point.y), nu.point.chart}, d(nu.xi_x), d(nu.xi_y)};
}

TtfunCertificate refute(TtfunCertificate c, std::string reason) {
  c.certified = false;
  c.reason = std::move(reason);
  return c;
}

}  // namespace

SSComponent SSComponent::zero_section() { return {}; }

SSComponent SSComponent::conormal_to_divisor(MultiPoly h) {
  SSComponent s;
  s.kind = Kind::ConormalToDivisor;
  s.h = std::move(h);
  return s;
}

SSComponent SSComponent::conormal_to_point(PlanarPoint P) {
  SSComponent s;
  s.kind = Kind::ConormalToPoint;
  s.point = std::move(P);
  return s;
}

SSComponent SSComponent::line_field(MultiPoly h, OneForm omega) {
  SSComponent s;
  s.kind = Kind::LineFieldAlongDivisor;
  s.h = std::move(h);
  s.omega = std::move(omega);
  return s;
}

const char* kind_name(SSComponent::Kind k) {
  switch (k) {
    case SSComponent::Kind::ZeroSection: return "zero-section";
    case SSComponent::Kind::ConormalToDivisor: return "conormal-divisor";
    case SSComponent::Kind::ConormalToPoint: return "conormal-point";
    case SSComponent::Kind::LineFieldAlongDivisor: return "line-field";
  }
  return "?";
}

std::string SSComponent::describe() const {
  switch (kind) {
    case Kind::ZeroSection: return "zero-section";
    case Kind::ConormalToDivisor: return "conormal-divisor(" + to_string(h) + ")";
    case Kind::ConormalToPoint: return "conormal-point" + point.to_string();
    case Kind::LineFieldAlongDivisor:
      return "line-field(" + to_string(h) + "; " + to_string(omega.a) + "*dx + " + to_string(omega.b) + "*dy)";
  }
  return "?";
}

std::string CotangentPoint::to_string() const {
  return "(" + point.to_string() + ", " + xi_x.to_string() + "*dx + " + xi_y.to_string() + "*dy)";
}

TtfunCertificate is_ttfun(const RationalFunction& f, const std::vector<SSComponent>& ss_in, const CotangentPoint& nu_in) {
  const RingPtr& ring = f.ring();
  if (ring->nvars() != 2) fail(ErrorCode::InvalidInput, "is_ttfun: expected a planar chart");
  const FieldPtr& field = ring->field();
  const CotangentPoint nu = lift_nu(nu_in, field);
  const std::vector<Coefficient> c{nu.point.x, nu.point.y};
  TtfunCertificate cert;
  cert.scale = cert.determinant = zero_of(field);
  if (nu.xi_x.is_zero() && nu.xi_y.is_zero()) fail(ErrorCode::InvalidInput, "is_ttfun: zero covector");
  if (at(f.den(), c).is_zero()) fail(ErrorCode::InvalidInput, "is_ttfun: function is not regular at the point");
  if (!at(f, c).is_zero()) fail(ErrorCode::NotVanishing, "is_ttfun: f does not vanish at " + nu.point.to_string());

  const RationalFunction fx = f.derivative(0), fy = f.derivative(1);
  const Coefficient gx = at(fx, c), gy = at(fy, c);
  if (gx.is_zero() && gy.is_zero()) return refute(cert, "df(P) = 0");
  if (!(gx * nu.xi_y - gy * nu.xi_x).is_zero()) return refute(cert, "df(P) is not proportional to xi");
  cert.scale = nu.xi_x.is_zero() ? gy / nu.xi_y : gx / nu.xi_x;
  const Coefficient fxx = at(fx.derivative(0), c), fxy = at(fx.derivative(1), c), fyy = at(fy.derivative(1), c);
  const Coefficient z = zero_of(field), one = Coefficient::from_int(field, 1);
  const std::array<Coefficient, 4> g1{one, z, fxx, fxy}, g2{z, one, fxy, fyy};

  for (std::size_t i = 0; i < ss_in.size(); ++i) {
    const SSComponent s = lift_component(ss_in[i], ring);
    std::array<Coefficient, 4> t1, t2;
    if (s.kind == SSComponent::Kind::ZeroSection) continue;  // df(P) != 0
    if (s.kind == SSComponent::Kind::ConormalToPoint) {
      if (s.point.x != nu.point.x || s.point.y != nu.point.y) continue;
      t1 = {z, z, one, z};
      t2 = {z, z, z, one};
    } else {
      const MultiPoly oa = s.kind == SSComponent::Kind::ConormalToDivisor ? partial_derivative(s.h, std::size_t{0})
                                                                          : s.omega.a;
      const MultiPoly ob = s.kind == SSComponent::Kind::ConormalToDivisor ? partial_derivative(s.h, std::size_t{1})
                                                                          : s.omega.b;
      if (!at(s.h, c).is_zero()) continue;
      const Coefficient wa = at(oa, c), wb = at(ob, c);
      if (wa.is_zero() && wb.is_zero())
        fail(ErrorCode::InvalidInput, "SS component " + s.describe() + " has a vanishing form at the point");
      if (!(gx * wb - gy * wa).is_zero()) continue;  // df(P) not in the line: missed near P
      // Isolation: common components of h = 0 and {df ∥ omega} through P.
      const RationalFunction cross = fx * RationalFunction(ob) - fy * RationalFunction(oa);
      MultiPoly common = cross.is_zero() ? s.h : poly_gcd(s.h, cross.num());
      if (!common.is_constant() && at(common, c).is_zero()) {
        cert.component = i;
        cert.witness = squarefree_part(common);
        return refute(cert, "graph of df meets " + s.describe() + " along " + to_string(*cert.witness));
      }
      const Coefficient hx = at(partial_derivative(s.h, std::size_t{0}), c);
      const Coefficient hy = at(partial_derivative(s.h, std::size_t{1}), c);
      if (hx.is_zero() && hy.is_zero())
        fail(ErrorCode::SingularAtPoint, "divisor of " + s.describe() + " is singular at the point");
      const Coefficient lambda = wa.is_zero() ? gy / wb : gx / wa;
      const Coefficient vx = -hy, vy = hx;
      auto along = [&](const MultiPoly& w) {
        return at(partial_derivative(w, std::size_t{0}), c) * vx + at(partial_derivative(w, std::size_t{1}), c) * vy;
      };
      t1 = {vx, vy, lambda * along(oa), lambda * along(ob)};
      t2 = {z, z, wa, wb};
    }
    cert.component = i;
    cert.tangents = {g1, g2, t1, t2};
    cert.determinant = det4({g1, g2, t1, t2});
    if (cert.determinant.is_zero()) return refute(cert, "graph of df is not transverse to " + s.describe());
  }
  cert.certified = true;
  return cert;
}

FamilySpec FamilySpec::make(RationalFunction family, std::string param, CotangentPoint nu, int congruence) {
  FamilySpec fam;
  fam.family = std::move(family);
  fam.param = std::move(param);
  fam.congruence = congruence;
  const RingPtr& ring = fam.family.ring();
  if (!ring->field()->param_index(fam.param))
    fail(ErrorCode::InvalidInput, "family parameter " + fam.param + " is not a field parameter");
  if (congruence < 2) fail(ErrorCode::InvalidInput, "family congruence level must be at least 2");
  fam.nu = lift_nu(nu, ring->field());
  drop_param(fam.nu, fam.base_ring()->field(), fam.param);
  const RationalFunction base = fam.slice(Coefficient::from_int(fam.base_ring()->field(), 0)).change_ring(ring);
  const MultiPoly low = jet_truncate(fam.family - base, fam.nu.point, congruence);
  if (!low.is_zero())
    fail(ErrorCode::InvalidInput, "family slices do not agree mod m^" + std::to_string(congruence));
  const std::vector<Coefficient> c{fam.nu.point.x, fam.nu.point.y};
  if (!base.evaluate(c).is_zero()) fail(ErrorCode::NotVanishing, "family does not vanish at the point");
  const Coefficient gx = base.derivative(0).evaluate(c), gy = base.derivative(1).evaluate(c);
  if ((gx.is_zero() && gy.is_zero()) || !(gx * fam.nu.xi_y - gy * fam.nu.xi_x).is_zero())
    fail(ErrorCode::InvalidInput, "family differential at the point is not a nonzero multiple of xi");
  return fam;
}

RingPtr FamilySpec::base_ring() const { return ring()->with_field(ring()->field()->without_param(param)); }

RationalFunction FamilySpec::slice(const Coefficient& value) const {
  const RingPtr base = base_ring();
  const Coefficient v = value.lift_to(base->field());
  return RationalFunction(specialize_param(family.num(), base, param, v), specialize_param(family.den(), base, param, v));
}

FamilySpec connect_family(const RationalFunction& f, const CotangentPoint& nu, const std::string& param) {
  const RingPtr& ring = f.ring();
  if (ring->field()->param_index(param)) fail(ErrorCode::InvalidInput, "parameter " + param + " already in use");
  const PlanarPoint P = nu.point.lift_to(ring->field());
  const std::vector<Coefficient> c{P.x, P.y};
  if (!f.evaluate(c).is_zero()) fail(ErrorCode::NotVanishing, "connect_family: f does not vanish at the point");
  const RingPtr rs = ring->with_field(ring->field()->with_params({param}));
  const RationalFunction jet(change_ring(jet_truncate(f, P, 3), rs));
  const RationalFunction s(poly_const(rs, Coefficient::param(rs->field(), param)));
  return FamilySpec::make(jet + s * (f.change_ring(rs) - jet), param, nu, 3);
}

namespace {

SweepCell error_cell(const Error& e) {
  SweepCell c;
  c.error_code = e.code_name();
  c.error = e.what();
  return c;
}

SweepSlice compute_slice(const ASheafSpec& sheaf, const RationalFunction& f, const CotangentPoint& nu,
                         const std::vector<SSComponent>& ss, const PrecisionPolicy& policy) {
  SweepSlice sl;
  if (!ss.empty()) {
    try {
      const auto cert = is_ttfun(f, ss, nu);
      sl.ttfun = cert.certified;
      sl.ttfun_note = cert.reason;
    } catch (const Error& e) {
      sl.ttfun = false;
      sl.ttfun_note = std::string(e.code_name()) + ": " + e.what();
    }
  }
  PhiDimOptions opt;
  opt.precision = policy;
  try {
    const auto rep = dl_phi_dim_report(sheaf, f, nu.point, opt);
    sl.special.report = rep.special;
    sl.generic_fiber.report = rep.generic;
    sl.dim_phi = rep.dim_phi;
  } catch (const Error& e) {
    sl.generic_fiber = error_cell(e);
    try {
      sl.special.report = swan_on_curve(sheaf, f.num(), nu.point, policy);
    } catch (const Error& e2) {
      sl.special = error_cell(e2);
    }
  }
  return sl;
}

ASheafSpec sheaf_over(const ASheafSpec& sheaf, const RingPtr& ring) {
  return ASheafSpec::make(sheaf.g.change_ring(ring), change_ring(sheaf.h, ring), sheaf.chart);
}

std::vector<SSComponent> ss_over(const std::vector<SSComponent>& ss, const RingPtr& ring) {
  std::vector<SSComponent> out;
  for (const auto& s : ss) out.push_back(lift_component(s, ring));
  return out;
}

}  // namespace

SweepTable sweep_family(const ASheafSpec& sheaf, const FamilySpec& fam, const std::vector<SSComponent>& ss,
                        const SweepOptions& options) {
  SweepTable t;
  t.param = fam.param;
  t.congruence = fam.congruence;
  t.family = fam.family.to_string();
  const RingPtr base = fam.base_ring();
  const RingPtr full = fam.ring();
  const ASheafSpec sheaf_b = sheaf_over(sheaf, base), sheaf_f = sheaf_over(sheaf, full);
  const auto ss_b = ss_over(ss, base), ss_f = ss_over(ss, full);

  std::vector<std::function<SweepSlice()>> jobs;
  for (auto v : options.samples) {
    jobs.push_back([&, v] {
      const Coefficient value = Coefficient::from_int(base->field(), v);
      SweepSlice sl =
          compute_slice(sheaf_b, fam.slice(value), drop_param(fam.nu, base->field(), fam.param), ss_b, options.precision);
      sl.label = fam.param + "=" + value.to_string();
      return sl;
    });
  }
  jobs.push_back([&] {
    SweepSlice sl = compute_slice(sheaf_f, fam.family, fam.nu, ss_f, options.precision);
    sl.label = fam.param + " generic";
    sl.generic = true;
    return sl;
  });
  if (options.parallel > 1) {
    std::vector<std::future<SweepSlice>> fut;
    for (auto& j : jobs) fut.push_back(std::async(std::launch::async, j));
    for (auto& f : fut) t.slices.push_back(f.get());
  } else {
    for (auto& j : jobs) t.slices.push_back(j());
  }

  const SweepSlice& gen = t.slices.back();
  for (auto& sl : t.slices) {
    if (sl.dim_phi && gen.dim_phi) sl.jump = *sl.dim_phi != *gen.dim_phi;
    if (sl.special.ok() && sl.generic_fiber.ok() &&
        sl.special.report->dimtot() > sl.generic_fiber.report->dimtot())
      t.violations.push_back(sl.label + ": special dimtot exceeds generic");
    if (!sl.generic) {
      const std::pair<const SweepCell*, const SweepCell*> pairs[] = {{&sl.special, &gen.special},
                                                                     {&sl.generic_fiber, &gen.generic_fiber}};
      for (const auto& [a, b] : pairs)
        if (a->ok() && b->ok() && a->report->dimtot() > b->report->dimtot())
          t.violations.push_back(sl.label + ": dimtot exceeds the generic slice");
    }
  }
  t.semicontinuous = t.violations.empty();

  // Parameter values where a generic leading coefficient vanishes or has a pole.
  for (std::uint32_t v = 0; v < full->p(); ++v) {
    bool bad = false;
    for (const auto* cell : {&gen.special, &gen.generic_fiber}) {
      if (!cell->ok() || cell->report->unramified || cell->report->leading.is_zero()) continue;
      const Coefficient& lc = cell->report->leading;
      if (!lc.field()->param_index(fam.param)) continue;
      try {
        const FieldPtr target = lc.field()->without_param(fam.param);
        if (lc.specialize(target, fam.param, Coefficient::from_int(target, v)).is_zero()) bad = true;
      } catch (const Error&) {
        bad = true;
      }
    }
    if (bad) t.exceptional.push_back(fam.param + "=" + std::to_string(v));
  }
  return t;
}

namespace {

std::string fresh_param(const Ring& ring, std::string base) {
  auto clash = [&](const std::string& n) { return ring.field()->param_index(n) || ring.var_index(n); };
  std::string name = base;
  for (int i = 1; clash(name); ++i) name = base + std::to_string(i);
  return name;
}

std::int64_t order_at(const MultiPoly& m, const PlanarPoint& P) {
  const MultiPoly t = translate(m, {P.x.lift_to(ring_of(m)->field()), P.y.lift_to(ring_of(m)->field())});
  return t.low_degree();
}

}  // namespace

DepthEstimate empirical_depth(const ASheafSpec& sheaf, const std::vector<SSComponent>& ss, const CotangentPoint& nu_in,
                              int n_max, const std::vector<MultiPoly>& probes_in, const SweepOptions& options) {
  const RingPtr& ring = sheaf.ring();
  if (ring->nvars() != 2) fail(ErrorCode::InvalidInput, "empirical_depth: expected a planar chart");
  if (n_max < 2) fail(ErrorCode::InvalidInput, "empirical_depth: Nmax must be at least 2");
  const FieldPtr& field = ring->field();
  const CotangentPoint nu = lift_nu(nu_in, field);
  const MultiPoly X = poly_var(ring, std::size_t{0}) - poly_const(ring, nu.point.x);
  const MultiPoly Y = poly_var(ring, std::size_t{1}) - poly_const(ring, nu.point.y);
  const MultiPoly linear = X.scale(nu.xi_x) + Y.scale(nu.xi_y);
  const std::array<MultiPoly, 3> quad{X * X, X * Y, Y * Y};

  DepthEstimate est;
  est.caveat = "lower bound: only the listed monomial probes were tried";
  std::optional<MultiPoly> base;
  const auto p = static_cast<int>(ring->p());
  // Quadratic parts ordered by support size, then coefficients.
  std::vector<std::array<int, 3>> candidates;
  for (int a = 0; a < p; ++a)
    for (int b = 0; b < p; ++b)
      for (int c = 0; c < p; ++c) candidates.push_back({a, b, c});
  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& u, const auto& v) {
    return (u[0] != 0) + (u[1] != 0) + (u[2] != 0) < (v[0] != 0) + (v[1] != 0) + (v[2] != 0);
  });
  const auto ss_r = ss_over(ss, ring);
  for (const auto& cand : candidates) {
    MultiPoly f = linear;
    for (std::size_t k = 0; k < 3; ++k) f += quad[k].scale(Coefficient::from_int(field, cand[k]));
    try {
      if (is_ttfun(RationalFunction(f), ss_r, nu).certified) {
        base = f;
        break;
      }
    } catch (const Error&) {
    }
  }
  if (!base) fail(ErrorCode::NoTtfunFound, "no linear-plus-quadratic ttfun at " + nu.to_string());
  est.base = to_string(*base);

  const std::string param = fresh_param(*ring, "s");
  const RingPtr rs = ring->with_field(field->with_params({param}));
  const MultiPoly s = poly_const(rs, Coefficient::param(rs->field(), param));
  std::map<std::string, std::size_t> done;
  auto probe = [&](const MultiPoly& m, int level) -> const DepthProbe& {
    const std::string key = to_string(m);
    auto it = done.find(key);
    if (it != done.end()) return est.evidence[it->second];
    DepthProbe dp;
    dp.level = level;
    dp.probe = key;
    const auto fam = FamilySpec::make(RationalFunction(change_ring(*base, rs) + s * change_ring(m, rs)), param, nu,
                                      static_cast<int>(order_at(m, nu.point)));
    dp.table = sweep_family(sheaf, fam, ss, options);
    for (const auto& sl : dp.table.slices) {
      if (sl.ttfun && !*sl.ttfun) dp.certified = false;
      if (sl.jump) dp.jump = true;
    }
    done[key] = est.evidence.size();
    est.evidence.push_back(std::move(dp));
    return est.evidence.back();
  };

  for (int N = 2; N <= n_max; ++N) {
    std::vector<MultiPoly> probes;
    if (probes_in.empty()) {
      for (int d = N; d <= N + 1; ++d)
        for (int a = d; a >= 0; --a) probes.push_back(X.pow(static_cast<std::uint64_t>(a)) * Y.pow(static_cast<std::uint64_t>(d - a)));
    } else {
      for (const auto& m : probes_in)
        if (order_at(change_ring(m, ring), nu.point) >= N) probes.push_back(change_ring(m, ring));
    }
    bool jump = false;
    for (const auto& m : probes) {
      const DepthProbe& dp = probe(m, N);
      if (dp.certified && dp.jump) jump = true;
    }
    if (!jump) {
      est.n_lower = N;
      est.stable_found = true;
      return est;
    }
  }
  est.n_lower = n_max + 1;
  return est;
}

}  // namespace ramlab
