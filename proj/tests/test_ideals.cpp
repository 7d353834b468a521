#include "doctest.h"
#include "ramlab/ideals.hpp"
#include "test_util.hpp"

using namespace rt;

namespace {

IdealHandle ideal(const RingPtr& r, std::vector<std::string> gens) {
  std::vector<MultiPoly> g;
  for (const auto& s : gens) g.push_back(P(r, s));
  return IdealHandle(r, g);
}

bool same_ideal(const IdealHandle& a, const IdealHandle& b) { return a.basis() == b.with_order(a.order()).basis(); }

// S-polynomial of two basis elements under grlex, computed without the engine.
MultiPoly spoly(const MultiPoly& f, const MultiPoly& g) {
  Monomial l = f.leading_monomial().lcm(g.leading_monomial());
  return f.mul_monomial(l / f.leading_monomial()).scale(f.leading_coeff().inverse()) -
         g.mul_monomial(l / g.leading_monomial()).scale(g.leading_coeff().inverse());
}

}  // namespace

TEST_CASE("groebner_basis examples") {
  auto r = ring(5, {"x", "y"});
  auto I = ideal(r, {"x", "y"});
  CHECK(I.basis().size() == 2);
  CHECK(same_ideal(I, ideal(r, {"y", "x"})));
  auto J = ideal(r, {"x^2 + y^2", "x*y"});
  // x^3 = x*(x^2+y^2) - y*(x*y)
  CHECK(J.contains(P(r, "x^3")));
  CHECK(!J.contains(P(r, "x^2")));
  auto U = ideal(r, {"1"});
  REQUIRE(U.basis().size() == 1);
  CHECK(U.basis()[0].is_one());
  CHECK(IdealHandle(r, {}).basis().empty());
}

TEST_CASE("normal_form examples") {
  auto r = ring(5, {"x", "y"});
  CHECK(normal_form(P(r, "x^2"), ideal(r, {"x"})).is_zero());
  CHECK(normal_form(P(r, "y"), ideal(r, {"x"})) == P(r, "y"));
  CHECK(normal_form(P(r, "x^4"), ideal(r, {"x^4"})).is_zero());
  CHECK(normal_form(P(r, "x^3"), ideal(r, {"x^4"})) == P(r, "x^3"));
}

TEST_CASE("eliminate examples") {
  auto r = ring(5, {"tau", "x", "y"});
  CHECK(eliminate(ideal(r, {"tau - x"}), {"x", "y"}).basis().empty());
  auto e = eliminate(ideal(r, {"tau^2 - x", "tau"}), {"x"});
  CHECK(same_ideal(e, ideal(r, {"x"})));
  auto e2 = eliminate(ideal(r, {"x^4"}), {"x", "y"});
  CHECK(same_ideal(e2, ideal(r, {"x^4"})));
}

TEST_CASE("ideal_quotient examples") {
  auto r = ring(5, {"x", "y"});
  CHECK(same_ideal(ideal_quotient(ideal(r, {"x^2"}), P(r, "x")), ideal(r, {"x"})));
  CHECK(same_ideal(ideal_quotient(ideal(r, {"x*y"}), P(r, "x")), ideal(r, {"y"})));
  // Syzygy oracle: g*x in (x^2, xy) iff g in (x, y).
  CHECK(same_ideal(ideal_quotient(ideal(r, {"x^2", "x*y"}), P(r, "x")), ideal(r, {"x", "y"})));
}

TEST_CASE("saturation and radical membership") {
  auto r = ring(5, {"x", "y"});
  CHECK(same_ideal(saturate(ideal(r, {"x*y", "x^2"}), P(r, "x")), ideal(r, {"1"})));
  CHECK(same_ideal(saturate(ideal(r, {"x*(y-1)"}), P(r, "x")), ideal(r, {"y-1"})));
  CHECK(in_radical(ideal(r, {"x^3", "y^2"}), P(r, "x + y")));
  CHECK(!in_radical(ideal(r, {"x^3"}), P(r, "y")));
}

TEST_CASE("radical_zero_dim examples") {
  auto r = ring(5, {"x", "y"});
  CHECK(same_ideal(radical_zero_dim(ideal(r, {"x^2", "y^2"})), ideal(r, {"x", "y"})));
  CHECK(same_ideal(radical_zero_dim(ideal(r, {"x^2", "x*y", "y^3"})), ideal(r, {"x", "y"})));
  // gcd(f, f') oracle: (x-1)^2 (x+1) has squarefree part (x-1)(x+1).
  CHECK(same_ideal(radical_zero_dim(ideal(r, {"(x-1)^2*(x+1)", "y"})), ideal(r, {"(x-1)*(x+1)", "y"})));
  CHECK_THROWS_AS(radical_zero_dim(ideal(r, {"x^2"})), Error);
  auto rs = ring(5, {"x", "y"}, {"s"});
  auto rad = radical_zero_dim(ideal(rs, {"x^5 - s", "y^2"}));
  CHECK(rad.contains(P(rs, "y")));
  CHECK(rad.basis().size() == 2);
}

TEST_CASE("squarefree_part examples") {
  auto r = ring(5, {"x", "y"});
  CHECK(squarefree_part(P(r, "x^2")) == P(r, "x"));
  CHECK(squarefree_part(P(r, "x^5")) == P(r, "x"));
  CHECK(squarefree_part(P(r, "x^2*(x+1)")) == P(r, "x*(x+1)"));
  CHECK(squarefree_part(P(r, "x^10*(y-x)^3*(y+1)")) == P(r, "x*(y-x)*(y+1)").monic());
  auto rs = ring(5, {"x"}, {"s"});
  auto sf = squarefree_part(P(rs, "(x^5 - s)*(x-1)^2"));
  auto s15 = Coefficient::param(rs->field(), "s").pth_root();
  CHECK(sf == (P(rs, "x") - poly_const(rs, s15)) * P(rs, "x - 1"));
}

TEST_CASE("univariate roots") {
  auto r = ring(5, {"x", "y"});
  auto rr = univariate_roots(P(r, "(y-1)^2*(y+2)*y"), 1);
  CHECK(rr.complete);
  CHECK(rr.roots.size() == 3);
  auto nr = univariate_roots(P(r, "y^2 - 2"), 1);  // 2 is not a square mod 5
  CHECK(!nr.complete);
  auto rs = ring(5, {"y"}, {"rho"});
  auto pr = univariate_roots(P(rs, "y*(y - rho)"), 0);
  CHECK(pr.complete);
  CHECK(pr.roots.size() == 2);
}

TEST_CASE("Buchberger criterion holds for emitted bases") {
  std::mt19937_64 rng(4242);
  auto r = ring(5, {"x", "y", "z"});
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<MultiPoly> gens;
    for (int k = 0; k < 3; ++k) gens.push_back(random_poly(rng, r, 3, 3));
    IdealHandle I(r, gens);
    const auto& B = I.basis();
    for (std::size_t i = 0; i < B.size(); ++i)
      for (std::size_t j = i + 1; j < B.size(); ++j) REQUIRE(normal_form(spoly(B[i], B[j]), I).is_zero());
    for (const auto& g : gens) REQUIRE(I.contains(g));
    // idempotence
    IdealHandle again(r, B);
    REQUIRE(again.basis() == B);
  }
}

TEST_CASE("membership soundness on random instances") {
  std::mt19937_64 rng(99);
  auto r = ring(5, {"x", "y"});
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<MultiPoly> gens{random_poly(rng, r, 3, 3), random_poly(rng, r, 3, 3)};
    IdealHandle I(r, gens);
    auto f = random_poly(rng, r, 2, 3), g = random_poly(rng, r, 2, 3);
    auto i = gens[0] * random_poly(rng, r, 2, 2) + gens[1] * random_poly(rng, r, 2, 2);
    REQUIRE(normal_form(f * g + i, I) == normal_form(f * g, I));
  }
}

TEST_CASE("quotient and radical properties") {
  std::mt19937_64 rng(31337);
  auto r = ring(5, {"x", "y"});
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<MultiPoly> gens{random_poly(rng, r, 3, 3), random_poly(rng, r, 3, 3)};
    IdealHandle I(r, gens);
    auto f = random_poly(rng, r, 2, 2);
    if (f.is_zero()) continue;
    auto Q = ideal_quotient(I, f);
    for (const auto& q : Q.basis()) REQUIRE(I.contains(q * f));
    if (I.is_zero_dimensional() && !I.is_unit()) {
      auto rad = radical_zero_dim(I);
      auto rad2 = radical_zero_dim(rad);
      REQUIRE(same_ideal(rad, rad2));
      for (const auto& g : I.basis()) REQUIRE(rad.contains(g));
    }
  }
}
