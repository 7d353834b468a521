#include <set>

#include "doctest.h"
#include "ramlab/sweep.hpp"
#include "oracles.hpp"

using namespace rt;

namespace {

// On the graph of df (a copy of the plane), a divisor-type component cuts out
// {h = 0, f_x*w_b - f_y*w_a = 0}. The graph meets it isolated and transversely
// at the origin iff that local length is 1.
std::int64_t graph_meet_length(const RationalFunction& f, const MultiPoly& h, const OneForm& w) {
  const RationalFunction cross = f.derivative(0) * RationalFunction(w.b) - f.derivative(1) * RationalFunction(w.a);
  return truncated_length(h, cross.num(), 6);
}

}  // namespace

TEST_CASE("is_ttfun examples") {
  auto r = ring(5, {"x", "y"});
  auto nu = dy_at_origin(r);
  auto ss = ss_line_field(r);

  auto c = is_ttfun(R(r, "y/(1+x)"), ss, nu);
  CHECK(c.certified);
  CHECK(c.reason.empty());
  REQUIRE(c.component);
  CHECK(*c.component == 1);
  CHECK(c.scale == I(r, 1));
  CHECK(!c.determinant.is_zero());
  CHECK(c.tangents.size() == 4);

  auto bad = is_ttfun(R(r, "y + x^2"), ss, nu);
  CHECK(!bad.certified);
  REQUIRE(bad.witness);
  CHECK(*bad.witness == P(r, "x"));

  auto flat = is_ttfun(R(r, "y^2"), ss, nu);
  CHECK(!flat.certified);
  CHECK(flat.reason == "df(P) = 0");

  CHECK(!is_ttfun(R(r, "x"), ss, nu).certified);
  CHECK_THROWS_AS(is_ttfun(R(r, "y + 1"), ss, nu), Error);
  CHECK(is_ttfun(R(r, "2*y"), ss, nu).scale == I(r, 2));

  // A point conormal in the model is always met transversely.
  auto c2 = is_ttfun(R(r, "y/(1+x)"), ss_point_and_divisor(r), nu);
  CHECK(c2.certified);
  CotangentPoint dx{PlanarPoint::origin(r), I(r, 1), I(r, 0)};
  CHECK(is_ttfun(R(r, "x + y^2"), {SSComponent::conormal_to_divisor(P(r, "x"))}, dx).certified);
  CHECK(!is_ttfun(R(r, "x + x*y"), {SSComponent::conormal_to_divisor(P(r, "x"))}, dx).certified);
  CHECK(is_ttfun(R(r, "x + y^2"), {SSComponent::conormal_to_divisor(P(r, "x + y^2 + x*y"))}, dx).certified ==
        (graph_meet_length(R(r, "x + y^2"), P(r, "x + y^2 + x*y"), {P(r, "1 + y"), P(r, "2*y + x")}) == 1));
}

TEST_CASE("is_ttfun agrees with the graph intersection oracle") {
  auto r = ring(5, {"x", "y"});
  auto nu = dy_at_origin(r);
  const OneForm dy{P(r, "0"), P(r, "1")};
  const std::vector<std::string> fs = {"y/(1+x)", "y + x*y",     "y + x*y + x^2", "y + 2*x*y + x^3", "y + x^2",
                                       "y",       "y + x^2*y",   "y + x*y + y^2", "y/(1+x) + x^3",   "y + 3*x*y + 2*x^2",
                                       "y + x^3", "y - x*y + x^4"};
  int certified = 0;
  for (const auto& s : fs) {
    CAPTURE(s);
    auto f = R(r, s);
    auto c = is_ttfun(f, ss_line_field(r), nu);
    const bool oracle = graph_meet_length(f, P(r, "x"), dy) == 1;
    CHECK(c.certified == oracle);
    certified += c.certified;
  }
  CHECK(certified >= 6);
  // Curved divisor with a non-constant line field.
  const MultiPoly h = P(r, "x - y^2");
  const OneForm w{P(r, "y"), P(r, "1 + x")};
  for (const auto& s : fs) {
    CAPTURE(s);
    auto f = R(r, s);
    auto c = is_ttfun(f, {SSComponent::line_field(h, w)}, nu);
    CHECK(c.certified == (graph_meet_length(f, h, w) == 1));
  }
}

TEST_CASE("connect_family") {
  auto r = ring(5, {"x", "y"});
  auto nu = dy_at_origin(r);
  auto f = R(r, "y/(1+x)");
  auto fam = connect_family(f, nu);
  CHECK(fam.congruence == 3);
  CHECK(fam.param == "s");
  auto b = fam.base_ring();
  auto s0 = fam.slice(I(b, 0));
  auto s1 = fam.slice(I(b, 1));
  CHECK(s1 == f.change_ring(b));
  // f - jet = x^2*y/(1+x)
  CHECK((f.change_ring(b) - s0) * R(b, "1+x") == R(b, "x^2*y"));

  auto cubic = connect_family(R(r, "y + x^3"), nu);
  CHECK(cubic.family == R(cubic.ring(), "y + s*x^3"));
  auto quad = connect_family(R(r, "y + x*y + 2*x^2"), nu);
  CHECK(quad.family == R(quad.ring(), "y + x*y + 2*x^2"));

  CHECK_THROWS_AS(connect_family(R(r, "y + 1"), nu), Error);
  auto rs = ring(5, {"x", "y"}, {"s"});
  CHECK_THROWS_AS(FamilySpec::make(R(rs, "y + s*x^2"), "s", dy_at_origin(rs), 3), Error);
  CHECK_THROWS_AS(FamilySpec::make(R(rs, "y + s*x"), "s", dy_at_origin(rs), 2), Error);
  CHECK_NOTHROW(FamilySpec::make(R(rs, "y + s*x^2"), "s", dy_at_origin(rs), 2));
}

TEST_CASE("sweep tables for y/x^p and y/x^(p-1)") {
  for (std::uint32_t p : {5u, 7u}) {
    const auto pi = static_cast<std::int64_t>(p);
    auto r = ring(p, {"x", "y"});
    auto rs = ring(p, {"x", "y"}, {"s"});
    auto pole_p = sheaf(r, "y/x^" + std::to_string(p), "x");
    auto pole_pm1 = sheaf(r, "y/x^" + std::to_string(p - 1), "x");
    for (int N = 3; N <= static_cast<int>(p) + 1; ++N) {
      CAPTURE(p);
      CAPTURE(N);
      auto fam = FamilySpec::make(R(rs, "y/(1+x) + s*x^" + std::to_string(N)), "s", dy_at_origin(rs), N);
      for (int which = 0; which < 2; ++which) {
        CAPTURE(which);
        const auto& sh = which == 0 ? pole_p : pole_pm1;
        const std::int64_t edge = which == 0 ? pi : pi - 1;
        auto t = sweep_family(sh, fam, which == 0 ? ss_line_field(r) : ss_point_and_divisor(r));
        REQUIRE(t.slices.size() == 2);
        const auto& s0 = t.slices[0];
        const auto& sg = t.slices[1];
        CHECK(s0.label == "s=0");
        CHECK(sg.generic);
        REQUIRE(s0.special.ok());
        REQUIRE(s0.generic_fiber.ok());
        REQUIRE(sg.special.ok());
        REQUIRE(sg.generic_fiber.ok());
        CHECK(s0.ttfun == std::optional<bool>(true));
        CHECK(sg.ttfun == std::optional<bool>(true));
        CHECK(s0.special.report->sw == 0);
        CHECK(s0.generic_fiber.report->sw == pi - 1);
        CHECK(sg.special.report->sw == (N < edge ? edge - N : 0));
        CHECK(sg.generic_fiber.report->sw == pi - 1);
        CHECK(*s0.dim_phi == -(pi - 1));
        CHECK(*sg.dim_phi == (N < edge ? -(N - 1) - (which == 1 ? 1 : 0) : -(pi - 1)));
        CHECK(s0.jump == (N < edge));
        CHECK(!sg.jump);
        CHECK(t.semicontinuous);
        CHECK(t.violations.empty());
        const bool s0_exceptional = std::find(t.exceptional.begin(), t.exceptional.end(), "s=0") != t.exceptional.end();
        CHECK(s0_exceptional == (N < edge));
        CHECK(t.exceptional.size() == (N < edge ? 1u : 0u));
      }
    }
  }
}

TEST_CASE("sweep records per-cell errors and runs in parallel") {
  auto r = ring(5, {"x", "y"});
  auto rs = ring(5, {"x", "y"}, {"s"});
  auto pole_p = sheaf(r, "y/x^5", "x");
  auto fam = FamilySpec::make(R(rs, "y + x*y + s*x^3"), "s", dy_at_origin(rs), 3);
  SweepOptions opt;
  opt.samples = {0, 1, 2, 3, 4};
  opt.parallel = 4;
  auto t = sweep_family(pole_p, fam, ss_line_field(r), opt);
  REQUIRE(t.slices.size() == 6);
  SweepOptions serial = opt;
  serial.parallel = 1;
  auto u = sweep_family(pole_p, fam, ss_line_field(r), serial);
  for (std::size_t i = 0; i < t.slices.size(); ++i) {
    CHECK(t.slices[i].label == u.slices[i].label);
    CHECK(t.slices[i].dim_phi == u.slices[i].dim_phi);
  }
  for (std::size_t i = 1; i < 5; ++i) CHECK(!t.slices[i].jump);
  CHECK(t.slices[0].jump);
  CHECK(t.semicontinuous);

  auto bad = FamilySpec::make(R(rs, "y*(1 + s*x)"), "s", dy_at_origin(rs), 2);
  // The special fiber of every slice is the divisor itself.
  auto ex_line = sheaf(r, "x/y^5", "y");
  auto tb = sweep_family(ex_line, bad, {});
  REQUIRE(tb.slices.size() == 2);
  CHECK(!tb.slices[0].special.ok());
  CHECK(tb.slices[0].special.error_code == "CurveInDivisor");
  CHECK(!tb.slices[0].ttfun);
}

TEST_CASE("empirical depth") {
  auto r = ring(5, {"x", "y"});
  auto nu = dy_at_origin(r);
  auto pole_p = sheaf(r, "y/x^5", "x");
  std::vector<MultiPoly> probes;
  for (int k = 3; k <= 7; ++k) probes.push_back(P(r, "x^" + std::to_string(k)));
  auto est = empirical_depth(pole_p, ss_line_field(r), nu, 7, probes);
  CHECK(est.n_lower == 5);
  CHECK(est.stable_found);
  CHECK(est.base == to_string(P(r, "y + x*y")));
  CHECK(!est.caveat.empty());
  std::map<std::string, bool> jumps;
  for (const auto& e : est.evidence) {
    CHECK(e.certified);
    CHECK(e.table.semicontinuous);
    jumps[e.probe] = e.jump;
  }
  CHECK(jumps.at(to_string(P(r, "x^3"))));
  CHECK(jumps.at(to_string(P(r, "x^4"))));
  CHECK(!jumps.at(to_string(P(r, "x^5"))));
  CHECK(!jumps.at(to_string(P(r, "x^6"))));
  CHECK(!jumps.at(to_string(P(r, "x^7"))));

  auto capped = empirical_depth(pole_p, ss_line_field(r), nu, 4, probes);
  CHECK(capped.n_lower == 5);
  CHECK(!capped.stable_found);

  // Tame: g has a simple pole.
  auto tame = sheaf(r, "1/x", "x");
  std::vector<SSComponent> ss_tame{SSComponent::zero_section(), SSComponent::conormal_to_divisor(P(r, "x"))};
  auto te = empirical_depth(tame, ss_tame, nu, 4);
  CHECK(te.n_lower == 2);
  CHECK(te.stable_found);
  for (const auto& e : te.evidence) {
    for (const auto& sl : e.table.slices) {
      REQUIRE(sl.dim_phi);
      CHECK(*sl.dim_phi == 0);
    }
  }
  auto two = empirical_depth(tame, ss_tame, nu, 2);
  CHECK(two.n_lower == 2);

  CHECK_THROWS_AS(empirical_depth(pole_p, {SSComponent::conormal_to_point(PlanarPoint::origin(r))}, {PlanarPoint::origin(r), I(r, 0), I(r, 0)}, 3),
                  Error);
}

TEST_CASE("dimtot is independent of the ttfun") {
  auto r = ring(5, {"x", "y"});
  auto nu = dy_at_origin(r);
  auto pole_p = sheaf(r, "y/x^5", "x");
  const std::vector<std::string> fs = {"y/(1+x)", "y + x*y", "y + x*y + x^2", "y + 2*x*y + x^3", "y/(1+x) + x^3"};
  std::set<std::int64_t> specials;
  std::optional<std::int64_t> a_eta;
  for (const auto& s : fs) {
    CAPTURE(s);
    auto f = R(r, s);
    REQUIRE(is_ttfun(f, ss_line_field(r), nu).certified);
    auto rep = dl_phi_dim_report(pole_p, f, nu.point);
    specials.insert(rep.special.dimtot());
    if (!a_eta) a_eta = rep.generic.dimtot();
    CHECK(rep.generic.dimtot() == *a_eta);
    CHECK(rep.special.dimtot() <= rep.generic.dimtot());
  }
  CHECK(*a_eta == 5);
  CHECK(specials.size() >= 2);
}
