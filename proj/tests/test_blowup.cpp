#include "doctest.h"
#include "ramlab/blowup.hpp"
#include "oracles.hpp"

using namespace rt;

namespace {

Chart chart(const RingPtr& r) { return {"A2", r}; }

ChartMap sigma(const RingPtr& r, const std::string& a, const std::string& b) { return {R(r, a), R(r, b)}; }

}  // namespace

TEST_CASE("blowup_point charts") {
  auto r = ring(5, {"x", "y"});
  auto n = blowup_point(chart(r), PlanarPoint::origin(r));
  CHECK(n.children[0].images[0] == P(r, "x"));
  CHECK(n.children[0].images[1] == P(r, "x*y"));
  CHECK(n.children[1].images[0] == P(r, "x*y"));
  CHECK(n.children[1].images[1] == P(r, "y"));
  auto m = blowup_point(chart(r), {I(r, 1), I(r, 0)});
  CHECK(m.children[0].images[0] == P(r, "1 + x"));
  CHECK(m.children[0].images[1] == P(r, "x*y"));
  CHECK(m.children[1].images[0] == P(r, "1 + x*y"));
  CHECK(m.children[0].chart.name != m.children[1].chart.name);
}

TEST_CASE("transform_curve") {
  auto r = ring(5, {"x", "y"});
  auto n = blowup_point(chart(r), PlanarPoint::origin(r));
  auto cusp = transform_curve(P(r, "y^2 - x^3"), n);
  CHECK(cusp.exc_mult == 2);
  CHECK(cusp.strict[0] == P(r, "y^2 - x"));
  auto sm = transform_curve(P(r, "x - y^2"), n);
  CHECK(sm.exc_mult == 1);
  CHECK(!is_singular_at(sm.strict[0], PlanarPoint::origin(r)));
  auto a5 = transform_curve(P(r, "y^2 - x^5"), n);
  CHECK(a5.exc_mult == 2);
  CHECK(a5.strict[0] == P(r, "y^2 - x^3"));
  // Two successive blowups: substitution composite reproduces the bookkeeping.
  auto n2 = blowup_point(chart(r), PlanarPoint::origin(r), 2);
  auto second = transform_curve(a5.strict[0], n2);
  CHECK(second.exc_mult == 2);
  auto composite = compose(compose(P(r, "y^2 - x^5"), n.children[0].images), n2.children[0].images);
  // x-chart twice: x = x, y = x^2*y, exceptional exponents 2 + 2.
  CHECK(composite == P(r, "x^4") * second.strict[0]);
}

TEST_CASE("resolve_curve examples") {
  auto r = ring(5, {"x", "y"});
  auto O = PlanarPoint::origin(r);
  auto cusp = resolve_curve(P(r, "y^2 - x^3"), O);
  CHECK(cusp.stages == 1);
  CHECK(cusp.M1 == 2);
  auto a4 = resolve_curve(P(r, "y^2 - x^5"), O);
  CHECK(a4.stages == 2);
  CHECK(a4.M1 == 4);
  CHECK(a4.M1 <= 2 * 2);
  auto smooth = resolve_curve(P(r, "x - y^2"), O);
  CHECK(smooth.stages == 0);
  CHECK(smooth.M1 == 0);
  CHECK(smooth.nodes.empty());
  auto nr = resolve_curve(P(r, "(y^2 - x^3)^2"), O);
  CHECK(nr.non_reduced);
  CHECK(nr.stages == 1);
  CHECK(!resolve_curve(P(r, "(y - 1)^2*(y^2 - x^3)"), O).non_reduced);
  auto r7 = ring(7, {"x", "y"});
  try {
    resolve_curve(P(r7, "(x^2 + y^2)^2 + x^6"), PlanarPoint::origin(r7));
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnresolvableWithoutExtension);
  }
}

TEST_CASE("resolution corpus: multiplicity bound and monotonicity") {
  auto r = ring(5, {"x", "y"});
  auto O = PlanarPoint::origin(r);
  const auto& corpus = singular_corpus();
  REQUIRE(corpus.size() == 20);
  for (const auto& text : corpus) {
    CAPTURE(text);
    auto t = resolve_curve(P(r, text), O);
    REQUIRE(t.stages >= 1);
    REQUIRE(smooth_over_center(t));
    for (const auto& n : t.nodes) {
      REQUIRE(n.exc_mult <= (std::int64_t{1} << (n.stage - 1)) * t.root_mult);
      if (n.parent_node) REQUIRE(n.strict_mult <= t.nodes[*n.parent_node - 1].strict_mult);
    }
  }
}

TEST_CASE("transport_automorphism") {
  auto r = ring(5, {"x", "y"});
  auto O = PlanarPoint::origin(r);
  auto n = blowup_point(chart(r), O);

  auto t1 = transport_automorphism(sigma(r, "x", "y + x"), n, 0);
  CHECK(t1[0] == R(r, "x"));
  CHECK(t1[1] == R(r, "y + 1"));

  for (std::size_t c = 0; c < 2; ++c) {
    auto id = transport_automorphism(sigma(r, "x", "y"), n, c);
    CHECK(id[0] == R(r, "x"));
    CHECK(id[1] == R(r, "y"));
  }

  auto s3 = sigma(r, "x", "y + x^2");
  auto t3 = transport_automorphism(s3, n, 1);
  CHECK(t3[0] == R(r, "x/(1 + x^2*y)"));
  CHECK(t3[1] == R(r, "y + x^2*y^2"));

  // pi o sigma-bar = sigma o pi, exactly.
  for (const auto& s : {sigma(r, "x", "y + x"), s3, sigma(r, "x + x^2", "y + x*y"), sigma(r, "x + y", "y + x^2")}) {
    for (std::size_t c = 0; c < 2; ++c) {
      ChartMap bar;
      try {
        bar = transport_automorphism(s, n, c);
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotRegularOnChart);
        continue;
      }
      std::vector<RationalFunction> pi{RationalFunction(n.children[c].images[0]),
                                       RationalFunction(n.children[c].images[1])};
      for (std::size_t i = 0; i < 2; ++i) CHECK(pi[i].compose(bar) == s[i].compose(pi));
    }
  }

  try {
    transport_automorphism(sigma(r, "x + 1", "y"), n);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotFixingCenter);
  }
  try {
    transport_automorphism(sigma(r, "y", "x"), n);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotRegularOnChart);
  }
}
