#include "ramlab/blowup.hpp"

#include <algorithm>
#include <map>

#include "ramlab/errors.hpp"
#include "ramlab/ideals.hpp"
#include "ramlab/poly_gcd.hpp"

namespace ramlab {

namespace {

// Largest k with var^k dividing f, and f / var^k.
std::pair<std::int64_t, MultiPoly> strip_variable(const MultiPoly& f, std::size_t var) {
  if (f.is_zero()) fail(ErrorCode::Internal, "strip_variable: zero polynomial");
  std::int32_t k = f.terms().front().mono[var];
  for (const auto& t : f.terms()) k = std::min(k, t.mono[var]);
  if (k == 0) return {0, f};
  const Monomial d = Monomial::var(var, k);
  std::vector<MultiPoly::Term> ts;
  for (const auto& t : f.terms()) ts.push_back({t.mono / d, t.coeff});
  return {k, MultiPoly(f.context(), std::move(ts))};
}

std::vector<RationalFunction> as_rational(const std::vector<MultiPoly>& v) {
  std::vector<RationalFunction> r;
  for (const auto& f : v) r.emplace_back(f);
  return r;
}

bool vanishes_at(const MultiPoly& f, const PlanarPoint& P) {
  return evaluate(f, {P.x.lift_to(ring_of(f)->field()), P.y.lift_to(ring_of(f)->field())}).is_zero();
}

MultiPoly restrict_to_axis(const MultiPoly& f, std::size_t var) {
  const RingPtr& ring = ring_of(f);
  std::vector<MultiPoly> images{poly_var(ring, std::size_t{0}), poly_var(ring, std::size_t{1})};
  images[var] = poly_zero(ring);
  return compose(f, images);
}

}  // namespace

bool is_singular_at(const MultiPoly& f, const PlanarPoint& P) {
  return vanishes_at(f, P) && vanishes_at(partial_derivative(f, std::size_t{0}), P) &&
         vanishes_at(partial_derivative(f, std::size_t{1}), P);
}

std::vector<PlanarPoint> singular_points_on_axis(const MultiPoly& f, std::size_t var) {
  const RingPtr& ring = ring_of(f);
  const std::size_t other = 1 - var;
  MultiPoly g = restrict_to_axis(f, var);
  if (g.is_zero()) fail(ErrorCode::Internal, "curve contains the line " + ring->vars()[var] + " = 0");
  for (std::size_t i : {std::size_t{0}, std::size_t{1}}) {
    const MultiPoly d = restrict_to_axis(partial_derivative(f, i), var);
    if (!d.is_zero()) g = poly_gcd(g, d);
  }
  std::vector<PlanarPoint> out;
  if (g.is_constant()) return out;
  const auto roots = univariate_roots(g, other);
  if (!roots.complete)
    fail(ErrorCode::UnresolvableWithoutExtension,
         "singular points of " + to_string(f) + " on " + ring->vars()[var] + " = 0 need a field extension");
  const auto zero = Coefficient::from_int(ring->field(), 0);
  for (const auto& r : roots.roots) {
    PlanarPoint P{zero, zero};
    (other == 0 ? P.x : P.y) = r;
    out.push_back(P);
  }
  return out;
}

BlowupNode blowup_point(const Chart& chart, const PlanarPoint& P, std::size_t id) {
  const RingPtr& ring = chart.ring;
  if (!ring || ring->nvars() != 2) fail(ErrorCode::InvalidInput, "blowup_point: expected a two-variable chart");
  BlowupNode node;
  node.id = id;
  node.parent = chart;
  node.center = P.lift_to(ring->field());
  node.center.chart = chart.name;
  const MultiPoly x = poly_var(ring, std::size_t{0}), y = poly_var(ring, std::size_t{1});
  const MultiPoly a = poly_const(ring, node.center.x), b = poly_const(ring, node.center.y);
  const std::string stem = chart.name + "." + std::to_string(id);
  node.children[0] = {{stem + "x", ring}, {a + x, b + x * y}, x};
  node.children[1] = {{stem + "y", ring}, {a + x * y, b + y}, y};
  return node;
}

CurveTransform transform_curve(const MultiPoly& f, const BlowupNode& node) {
  CurveTransform out;
  const MultiPoly g = change_ring(f, node.parent.ring);
  for (std::size_t c = 0; c < 2; ++c) {
    const auto [k, strict] = strip_variable(compose(g, node.children[c].images), c);
    out.strict[c] = strict;
    if (c == 0) out.exc_mult = k;
    else if (k != out.exc_mult) fail(ErrorCode::Internal, "exceptional multiplicity differs between charts");
  }
  return out;
}

namespace {

MultiPoly total_transform(const ChartCurve& cc) {
  MultiPoly t = cc.strict;
  for (const auto& e : cc.exceptional) t *= e.equation.pow(static_cast<std::uint64_t>(e.multiplicity));
  return t;
}

std::vector<PlanarPoint> singular_points_on_newest(const ChartCurve& cc, std::size_t child) {
  if (child == 0) return singular_points_on_axis(cc.strict, 0);
  const PlanarPoint O = PlanarPoint::origin(cc.chart.ring, cc.chart.name);
  if (is_singular_at(cc.strict, O)) return {O};
  return {};
}

}  // namespace

BlowupTree resolve_curve(const MultiPoly& f, const PlanarPoint& P) {
  if (f.is_zero()) fail(ErrorCode::InvalidInput, "resolve_curve: zero polynomial");
  const RingPtr& ring = ring_of(f);
  BlowupTree tree;
  tree.root = {P.chart.empty() ? "A2" : P.chart, ring};
  tree.center = P.lift_to(ring->field());
  tree.curve = f;

  MultiPoly reduced = f;
  const MultiPoly sf = squarefree_part(f);
  if (!sf.is_constant() && sf.total_degree() < f.total_degree()) {
    const auto repeated = f.divide_exact(sf);
    if (repeated) {
      const MultiPoly rep = squarefree_part(*repeated);
      if (!rep.is_constant() && vanishes_at(rep, tree.center)) tree.non_reduced = true;
    }
    reduced = sf;
  }

  tree.root_mult = multiplicity_at(reduced, tree.center);
  if (tree.root_mult <= 1) {
    tree.leaves.push_back({tree.root, reduced, {}, {poly_var(ring, std::size_t{0}), poly_var(ring, std::size_t{1})}, {}});
    return tree;
  }

  std::vector<ChartCurve> charts;
  charts.push_back({tree.root, reduced, {}, {poly_var(ring, std::size_t{0}), poly_var(ring, std::size_t{1})}, {}});
  std::vector<std::pair<std::size_t, PlanarPoint>> pending{{0, tree.center}};
  std::vector<bool> blown(1, false);
  int round = 0;
  while (!pending.empty()) {
    ++round;
    std::vector<std::pair<std::size_t, PlanarPoint>> next;
    for (const auto& [ci, center] : pending) {
      const ChartCurve parent = charts[ci];
      BlowupNode node = blowup_point(parent.chart, center, tree.nodes.size() + 1);
      node.strict_mult = multiplicity_at(parent.strict, center);
      node.parent_node = parent.created_by;
      node.stage = 1;
      if (parent.created_by) {
        for (const auto& e : parent.exceptional)
          if (e.node == *parent.created_by && vanishes_at(e.equation, center))
            node.stage = tree.nodes[*parent.created_by - 1].stage + 1;
      }
      const CurveTransform tr = transform_curve(parent.strict, node);
      if (tr.exc_mult != node.strict_mult) fail(ErrorCode::Internal, "first exceptional multiplicity mismatch");
      const MultiPoly parent_total = total_transform(parent);

      std::int64_t exc_mult = node.strict_mult;
      std::array<ChartCurve, 2> kids;
      for (std::size_t c = 0; c < 2; ++c) {
        const ChildChart& child = node.children[c];
        ChartCurve& kid = kids[c];
        kid.chart = child.chart;
        kid.strict = tr.strict[c];
        kid.created_by = node.id;
        kid.to_root.clear();
        for (const auto& r : parent.to_root) kid.to_root.push_back(compose(r, child.images));
        std::int64_t m = node.strict_mult;
        for (const auto& e : parent.exceptional) {
          const auto [k, rest] = strip_variable(compose(e.equation, child.images), c);
          m += e.multiplicity * k;
          if (!rest.is_constant()) kid.exceptional.push_back({e.node, rest, e.multiplicity});
        }
        if (c == 0) exc_mult = m;
        else if (m != exc_mult) fail(ErrorCode::Internal, "exceptional bookkeeping differs between charts");
        kid.exceptional.push_back({node.id, child.exceptional, m});
        // Total transform identity, checked exactly.
        if (compose(parent_total, child.images) != total_transform(kid))
          fail(ErrorCode::Internal, "total transform identity failed in chart " + kid.chart.name);
      }
      node.exc_mult = exc_mult;
      tree.nodes.push_back(node);
      blown[ci] = true;
      for (std::size_t c = 0; c < 2; ++c) {
        charts.push_back(kids[c]);
        blown.push_back(false);
        for (const auto& q : singular_points_on_newest(kids[c], c)) {
          PlanarPoint qc = q;
          qc.chart = kids[c].chart.name;
          next.emplace_back(charts.size() - 1, qc);
        }
      }
    }
    pending = std::move(next);
    if (round > 64) fail(ErrorCode::Internal, "resolve_curve: too many rounds");
  }

  for (std::size_t i = 0; i < charts.size(); ++i)
    if (!blown[i]) tree.leaves.push_back(charts[i]);
  for (const auto& n : tree.nodes) {
    tree.stages = std::max(tree.stages, n.stage);
    tree.M1 = std::max(tree.M1, n.exc_mult);
  }
  // Multiplicity growth bound along stages, asserted on every run.
  for (const auto& n : tree.nodes) {
    if (n.stage > 62) break;
    const std::int64_t bound = (std::int64_t{1} << (n.stage - 1)) * tree.root_mult;
    if (n.exc_mult > bound) fail(ErrorCode::Internal, "exceptional multiplicity exceeds 2^(M-1)*mult");
  }
  return tree;
}

ChartMap transport_automorphism(const ChartMap& sigma, const BlowupNode& node, std::size_t child) {
  const RingPtr& ring = node.parent.ring;
  if (sigma.size() != 2) fail(ErrorCode::InvalidInput, "automorphism must give two coordinate images");
  const std::vector<Coefficient> c{node.center.x, node.center.y};
  for (std::size_t i = 0; i < 2; ++i) {
    Coefficient v;
    try {
      v = sigma[i].change_ring(ring).evaluate(c);
    } catch (const Error&) {
      fail(ErrorCode::NotFixingCenter, "automorphism is not defined at the center " + node.center.to_string());
    }
    if (v != c[i]) fail(ErrorCode::NotFixingCenter, "automorphism moves the center " + node.center.to_string());
  }
  const ChildChart& ch = node.children[child];
  const auto pi = as_rational(ch.images);
  std::vector<RationalFunction> pulled;
  for (std::size_t i = 0; i < 2; ++i)
    pulled.push_back(sigma[i].change_ring(ring).compose(pi) - RationalFunction(poly_const(ring, c[i])));
  // Coordinate `child` is the exceptional one; the other is the slope.
  ChartMap out(2);
  out[child] = pulled[child];
  out[1 - child] = pulled[1 - child] / pulled[child];
  const auto origin = std::vector<Coefficient>(2, Coefficient::from_int(ring->field(), 0));
  for (const auto& r : out)
    if (evaluate(r.den(), origin).is_zero())
      fail(ErrorCode::NotRegularOnChart, "extension is not regular at the origin of chart " + ch.chart.name);
  return out;
}

TransportedAutomorphism transport_automorphism(const ChartMap& sigma, const BlowupNode& node) {
  TransportedAutomorphism t;
  for (std::size_t c = 0; c < 2; ++c) {
    try {
      t.maps[c] = transport_automorphism(sigma, node, c);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NotRegularOnChart) throw;
    }
  }
  if (!t.maps[0] && !t.maps[1])
    fail(ErrorCode::NotRegularOnChart, "automorphism extends to neither chart near its origin");
  return t;
}

}  // namespace ramlab
