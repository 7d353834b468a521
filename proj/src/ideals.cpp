#include "ramlab/ideals.hpp"

#include <algorithm>
#include <functional>

#include "ramlab/poly_gcd.hpp"

namespace ramlab {

bool MonomialOrder::greater(const Monomial& a, const Monomial& b) const {
  if (kind == Kind::Grlex) return grlex_greater(a, b);
  bool seen[kMaxVars] = {};
  for (auto v : priority) {
    seen[v] = true;
    if (a[v] != b[v]) return a[v] > b[v];
  }
  for (std::size_t v = 0; v < kMaxVars; ++v) {
    if (seen[v]) continue;
    if (a[v] != b[v]) return a[v] > b[v];
  }
  return false;
}

std::string MonomialOrder::describe(const Ring& ring) const {
  if (kind == Kind::Grlex) return "grlex";
  std::string s = "lex(";
  for (std::size_t i = 0; i < priority.size(); ++i) s += (i ? "," : "") + ring.vars()[priority[i]];
  return s + ")";
}

namespace {

using Term = MultiPoly::Term;

// Terms in ascending order under `ord`, so the leading term sits at the back.
struct OPoly {
  std::vector<Term> t;
  bool empty() const { return t.empty(); }
  const Term& lead() const { return t.back(); }
};

OPoly to_opoly(const MultiPoly& f, const MonomialOrder& ord) {
  OPoly o{f.terms()};
  if (ord.kind == MonomialOrder::Kind::Grlex) {
    std::reverse(o.t.begin(), o.t.end());
  } else {
    std::sort(o.t.begin(), o.t.end(), [&](const Term& a, const Term& b) { return ord.greater(b.mono, a.mono); });
  }
  return o;
}

MultiPoly from_opoly(const OPoly& o, const RingPtr& ring) { return MultiPoly(RingRef{ring}, o.t); }

// a - c * m * b, both ascending.
OPoly sub_mul(const OPoly& a, const Coefficient& c, const Monomial& m, const OPoly& b, const MonomialOrder& ord) {
  OPoly r;
  r.t.reserve(a.t.size() + b.t.size());
  std::size_t i = 0, j = 0;
  while (i < a.t.size() || j < b.t.size()) {
    if (j == b.t.size()) {
      r.t.push_back(a.t[i++]);
      continue;
    }
    Monomial bm = b.t[j].mono * m;
    if (i == a.t.size() || ord.greater(a.t[i].mono, bm)) {
      r.t.push_back({bm, -(b.t[j].coeff * c)});
      ++j;
    } else if (ord.greater(bm, a.t[i].mono)) {
      r.t.push_back(a.t[i++]);
    } else {
      Coefficient v = a.t[i].coeff - b.t[j].coeff * c;
      if (!v.is_zero()) r.t.push_back({bm, std::move(v)});
      ++i;
      ++j;
    }
  }
  return r;
}

void make_monic(OPoly& o) {
  if (o.empty() || o.lead().coeff.is_one()) return;
  Coefficient inv = o.lead().coeff.inverse();
  for (auto& term : o.t) term.coeff = term.coeff * inv;
}

// Full reduction; divisors must be monic and sorted ascending by leading
// monomial so the smallest eligible leading monomial is used first.
OPoly reduce(OPoly f, const std::vector<const OPoly*>& G, const MonomialOrder& ord) {
  std::vector<Term> rest;  // collected in descending order
  while (!f.empty()) {
    const Term lt = f.lead();
    const OPoly* hit = nullptr;
    for (const OPoly* g : G)
      if (g->lead().mono.divides(lt.mono)) {
        hit = g;
        break;
      }
    if (hit) {
      f = sub_mul(f, lt.coeff, lt.mono / hit->lead().mono, *hit, ord);
    } else {
      rest.push_back(lt);
      f.t.pop_back();
    }
  }
  std::reverse(rest.begin(), rest.end());
  return OPoly{std::move(rest)};
}

std::vector<const OPoly*> sorted_view(const std::vector<OPoly>& G, const MonomialOrder& ord) {
  std::vector<const OPoly*> v;
  for (const auto& g : G) v.push_back(&g);
  std::stable_sort(v.begin(), v.end(),
                   [&](const OPoly* a, const OPoly* b) { return ord.greater(b->lead().mono, a->lead().mono); });
  return v;
}

std::vector<OPoly> buchberger(const std::vector<MultiPoly>& gens, const MonomialOrder& ord) {
  std::vector<OPoly> G;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    OPoly o = to_opoly(g, ord);
    make_monic(o);
    G.push_back(std::move(o));
  }
  auto unit_basis = [&](const Coefficient& one) {
    std::vector<OPoly> u(1);
    u[0].t.push_back({Monomial(), one});
    return u;
  };
  for (const auto& g : G)
    if (g.lead().mono.is_one()) return unit_basis(g.lead().coeff);

  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < G.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);

  while (!pairs.empty()) {
    // Normal selection: the pair with the smallest lcm.
    std::size_t best = 0;
    Monomial best_lcm = G[pairs[0].first].lead().mono.lcm(G[pairs[0].second].lead().mono);
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      Monomial l = G[pairs[k].first].lead().mono.lcm(G[pairs[k].second].lead().mono);
      if (ord.greater(best_lcm, l)) {
        best = k;
        best_lcm = l;
      }
    }
    auto [i, j] = pairs[best];
    pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));
    const Monomial& li = G[i].lead().mono;
    const Monomial& lj = G[j].lead().mono;
    if (li.coprime(lj)) continue;  // product criterion
    const Coefficient one = Coefficient::from_int(G[i].lead().coeff.field(), 1);
    OPoly s = sub_mul(OPoly{}, -one, best_lcm / li, G[i], ord);
    s = sub_mul(s, one, best_lcm / lj, G[j], ord);
    OPoly r = reduce(std::move(s), sorted_view(G, ord), ord);
    if (r.empty()) continue;
    make_monic(r);
    if (r.lead().mono.is_one()) return unit_basis(r.lead().coeff);
    G.push_back(std::move(r));
    const std::size_t n = G.size() - 1;
    for (std::size_t k = 0; k < n; ++k) pairs.emplace_back(k, n);
  }

  // Minimalize, then interreduce.
  std::vector<OPoly> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      const Monomial& a = G[j].lead().mono;
      const Monomial& b = G[i].lead().mono;
      if (a.divides(b) && (a != b || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  std::vector<OPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<OPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    OPoly r = reduce(minimal[i], sorted_view(others, ord), ord);
    make_monic(r);
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&](const OPoly& a, const OPoly& b) { return ord.greater(b.lead().mono, a.lead().mono); });
  return reduced;
}

}  // namespace

// ---------------------------------------------------------------- IdealHandle

IdealHandle::IdealHandle(RingPtr ring, std::vector<MultiPoly> generators, MonomialOrder order)
    : ring_(std::move(ring)), order_(std::move(order)), cache_(std::make_shared<Cache>()) {
  for (auto& g : generators) gens_.push_back(change_ring(g, ring_));
}

const IdealHandle::Cache& IdealHandle::cache() const {
  std::call_once(cache_->once, [this] {
    auto G = buchberger(gens_, order_);
    for (const auto& g : G) {
      cache_->basis.push_back(from_opoly(g, ring_));
      cache_->lms.push_back(g.lead().mono);
    }
  });
  return *cache_;
}

const std::vector<MultiPoly>& IdealHandle::basis() const { return cache().basis; }
const std::vector<Monomial>& IdealHandle::leading_monomials() const { return cache().lms; }

IdealHandle IdealHandle::with_order(MonomialOrder order) const {
  if (order == order_) return *this;
  return IdealHandle(ring_, gens_, std::move(order));
}

bool IdealHandle::is_unit() const {
  const auto& lms = leading_monomials();
  return lms.size() == 1 && lms[0].is_one();
}

bool IdealHandle::is_zero() const { return basis().empty(); }

bool IdealHandle::contains(const MultiPoly& f) const { return normal_form(f, *this).is_zero(); }

bool IdealHandle::is_zero_dimensional() const {
  if (is_unit()) return true;
  const auto& lms = leading_monomials();
  for (std::size_t v = 0; v < ring_->nvars(); ++v) {
    bool pure = false;
    for (const auto& m : lms) {
      if (m[v] == 0) continue;
      bool only = true;
      for (std::size_t w = 0; w < ring_->nvars(); ++w)
        if (w != v && m[w] != 0) only = false;
      if (only) pure = true;
    }
    if (!pure) return false;
  }
  return true;
}

std::vector<Monomial> IdealHandle::standard_monomials() const {
  if (!is_zero_dimensional()) fail(ErrorCode::NotZeroDimensional, "ideal has infinitely many standard monomials");
  if (is_unit()) return {};
  const auto& lms = leading_monomials();
  const std::size_t n = ring_->nvars();
  std::vector<std::int32_t> bound(n, 0);
  for (const auto& m : lms)
    for (std::size_t v = 0; v < n; ++v) {
      bool only = m[v] != 0;
      for (std::size_t w = 0; w < n; ++w)
        if (w != v && m[w] != 0) only = false;
      if (only) bound[v] = bound[v] == 0 ? m[v] : std::min(bound[v], m[v]);
    }
  std::vector<Monomial> out;
  Monomial cur;
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == n) {
      for (const auto& m : lms)
        if (m.divides(cur)) return;
      out.push_back(cur);
      return;
    }
    for (std::int32_t e = 0; e < bound[v]; ++e) {
      cur[v] = e;
      rec(v + 1);
    }
    cur[v] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end(), [&](const Monomial& a, const Monomial& b) { return order_.greater(b, a); });
  return out;
}

std::vector<MultiPoly> groebner_basis(const IdealHandle& I) { return I.basis(); }

Monomial leading_monomial(const MultiPoly& f, const MonomialOrder& order) {
  if (f.is_zero()) fail(ErrorCode::Internal, "leading monomial of zero");
  Monomial best = f.terms().front().mono;
  for (const auto& t : f.terms())
    if (order.greater(t.mono, best)) best = t.mono;
  return best;
}

MultiPoly normal_form(const MultiPoly& f, const IdealHandle& I) {
  const auto& B = I.basis();
  if (B.empty() || f.is_zero()) return change_ring(f, I.ring());
  std::vector<OPoly> G;
  for (const auto& b : B) G.push_back(to_opoly(b, I.order()));
  std::vector<const OPoly*> view;
  for (const auto& g : G) view.push_back(&g);
  OPoly r = reduce(to_opoly(change_ring(f, I.ring()), I.order()), view, I.order());
  return from_opoly(r, I.ring());
}

IdealHandle ideal_sum(const IdealHandle& I, const std::vector<MultiPoly>& extra) {
  auto gens = I.generators();
  for (const auto& e : extra) gens.push_back(e);
  return IdealHandle(I.ring(), gens, I.order());
}

IdealHandle eliminate(const IdealHandle& I, const std::vector<std::string>& keep) {
  const RingPtr& ring = I.ring();
  std::vector<bool> kept(ring->nvars(), false);
  for (const auto& k : keep) kept[ring->require_var(k)] = true;
  std::vector<std::size_t> prio;
  for (std::size_t v = 0; v < ring->nvars(); ++v)
    if (!kept[v]) prio.push_back(v);
  for (std::size_t v = 0; v < ring->nvars(); ++v)
    if (kept[v]) prio.push_back(v);
  IdealHandle lex = I.with_order(MonomialOrder::lex(prio));
  std::vector<MultiPoly> out;
  for (const auto& g : lex.basis()) {
    bool ok = true;
    for (std::size_t v = 0; v < ring->nvars() && ok; ++v)
      if (!kept[v] && g.involves(v)) ok = false;
    if (ok) out.push_back(g);
  }
  return IdealHandle(ring, out);
}

namespace {

std::string fresh_name(const Ring& ring) {
  std::string name = "_t";
  while (ring.var_index(name) || ring.field()->param_index(name)) name += "_";
  return name;
}

}  // namespace

IdealHandle ideal_quotient(const IdealHandle& I, const MultiPoly& f) {
  if (f.is_zero()) fail(ErrorCode::InvalidInput, "ideal quotient by zero");
  const RingPtr& ring = I.ring();
  if (I.is_zero()) return IdealHandle(ring, {});
  const std::string t = fresh_name(*ring);
  RingPtr ext = ring->with_vars({t});
  MultiPoly tv = poly_var(ext, t);
  MultiPoly fe = change_ring(f, ext);
  std::vector<MultiPoly> gens;
  for (const auto& g : I.basis()) gens.push_back(tv * change_ring(g, ext));
  gens.push_back((poly_int(ext, 1) - tv) * fe);
  IdealHandle inter = eliminate(IdealHandle(ext, gens), ring->vars());
  std::vector<MultiPoly> out;
  for (const auto& h : inter.generators()) {
    auto q = h.divide_exact(fe);
    if (!q) fail(ErrorCode::Internal, "intersection element not divisible by f");
    out.push_back(change_ring(*q, ring));
  }
  return IdealHandle(ring, out);
}

IdealHandle saturate(const IdealHandle& I, const MultiPoly& f) {
  const RingPtr& ring = I.ring();
  if (f.is_constant() && !f.is_zero()) return I;
  const std::string t = fresh_name(*ring);
  RingPtr ext = ring->with_vars({t});
  std::vector<MultiPoly> gens;
  for (const auto& g : I.generators()) gens.push_back(change_ring(g, ext));
  gens.push_back(poly_int(ext, 1) - poly_var(ext, t) * change_ring(f, ext));
  IdealHandle e = eliminate(IdealHandle(ext, gens), ring->vars());
  std::vector<MultiPoly> out;
  for (const auto& g : e.generators()) out.push_back(change_ring(g, ring));
  return IdealHandle(ring, out, I.order());
}

bool in_radical(const IdealHandle& I, const MultiPoly& g) {
  const RingPtr& ring = I.ring();
  const std::string t = fresh_name(*ring);
  RingPtr ext = ring->with_vars({t});
  std::vector<MultiPoly> gens;
  for (const auto& h : I.generators()) gens.push_back(change_ring(h, ext));
  gens.push_back(poly_int(ext, 1) - poly_var(ext, t) * change_ring(g, ext));
  return IdealHandle(ext, gens).is_unit();
}

MultiPoly squarefree_part(const MultiPoly& f) {
  if (f.is_zero()) fail(ErrorCode::InvalidInput, "squarefree part of zero");
  const RingPtr& ring = ring_of(f);
  if (f.is_constant()) return poly_int(ring, 1);
  MultiPoly g = f;
  for (std::size_t v = 0; v < ring->nvars(); ++v) g = poly_gcd(g, f.derivative(v));
  // c collects the factors that are neither repeated p times nor inseparable.
  MultiPoly c = *f.divide_exact(g);
  MultiPoly rest = g;
  for (;;) {
    MultiPoly d = poly_gcd(rest, c);
    if (d.is_constant()) break;
    rest = *rest.divide_exact(d);
  }
  if (rest.is_constant()) return c.monic();
  MultiPoly root = poly_pth_root(rest);
  return (c * squarefree_part(root)).monic();
}

MultiPoly minimal_polynomial(const IdealHandle& I, std::size_t var) {
  const RingPtr& ring = I.ring();
  const auto basis = I.standard_monomials();
  const std::size_t D = basis.size();
  const FieldPtr& field = ring->field();
  auto coords = [&](const MultiPoly& nf) {
    std::vector<Coefficient> v(D, Coefficient::from_int(field, 0));
    for (const auto& t : nf.terms()) {
      auto it = std::find(basis.begin(), basis.end(), t.mono);
      if (it == basis.end()) fail(ErrorCode::Internal, "normal form outside standard monomials");
      v[static_cast<std::size_t>(it - basis.begin())] = t.coeff;
    }
    return v;
  };
  struct Row {
    std::vector<Coefficient> vec;
    std::vector<Coefficient> comb;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  MultiPoly power = normal_form(poly_int(ring, 1), I);
  const MultiPoly x = poly_var(ring, var);
  for (std::size_t k = 0; k <= D; ++k) {
    if (k > 0) power = normal_form(power * x, I);
    std::vector<Coefficient> w = coords(power);
    std::vector<Coefficient> comb(D + 1, Coefficient::from_int(field, 0));
    comb[k] = Coefficient::from_int(field, 1);
    for (const auto& r : rows) {
      if (w[r.pivot].is_zero()) continue;
      Coefficient factor = w[r.pivot] / r.vec[r.pivot];
      for (std::size_t j = 0; j < D; ++j) w[j] = w[j] - factor * r.vec[j];
      for (std::size_t j = 0; j <= D; ++j) comb[j] = comb[j] - factor * r.comb[j];
    }
    std::size_t pivot = D;
    for (std::size_t j = 0; j < D; ++j)
      if (!w[j].is_zero()) {
        pivot = j;
        break;
      }
    if (pivot == D) {
      MultiPoly m = poly_zero(ring);
      for (std::size_t j = 0; j <= k; ++j)
        if (!comb[j].is_zero()) m += MultiPoly::monomial(RingRef{ring}, Monomial::var(var, static_cast<std::int32_t>(j)), comb[j]);
      return m.monic();
    }
    rows.push_back({std::move(w), std::move(comb), pivot});
  }
  fail(ErrorCode::Internal, "no linear dependency among powers");
}

IdealHandle radical_zero_dim(const IdealHandle& I) {
  if (!I.is_zero_dimensional())
    fail(ErrorCode::NotZeroDimensional, "radical_zero_dim needs a zero-dimensional ideal");
  if (I.is_unit()) return I;
  auto gens = I.basis();
  for (std::size_t v = 0; v < I.ring()->nvars(); ++v) gens.push_back(squarefree_part(minimal_polynomial(I, v)));
  return IdealHandle(I.ring(), gens, I.order());
}

UnivariateRoots univariate_roots(const MultiPoly& f, std::size_t var) {
  const RingPtr& ring = ring_of(f);
  for (std::size_t v = 0; v < ring->nvars(); ++v)
    if (v != var && f.involves(v)) fail(ErrorCode::InvalidInput, "univariate_roots: polynomial involves other variables");
  UnivariateRoots out;
  if (f.is_zero()) {
    out.complete = false;
    return out;
  }
  MultiPoly q = squarefree_part(f);
  const FieldPtr& field = ring->field();
  const MultiPoly x = poly_var(ring, var);
  for (std::uint32_t a = 0; a < ring->p() && q.degree_in(var) > 0; ++a) {
    std::vector<Coefficient> pt(ring->nvars(), Coefficient::from_int(field, 0));
    pt[var] = Coefficient::from_int(field, a);
    if (evaluate(q, pt).is_zero()) {
      out.roots.push_back(pt[var]);
      q = *q.divide_exact(x - poly_const(ring, pt[var]));
    }
  }
  const auto d = q.degree_in(var);
  if (d == 1) {
    auto cs = q.coefficients_in(var);
    Coefficient c1 = cs[1].constant_term();
    Coefficient c0 = cs.count(0) ? cs[0].constant_term() : Coefficient::from_int(field, 0);
    out.roots.push_back(-(c0 / c1));
  } else if (d > 1) {
    out.complete = false;
  }
  return out;
}

}  // namespace ramlab
