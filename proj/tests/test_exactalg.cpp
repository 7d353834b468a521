#include "doctest.h"
#include "ramlab/poly_gcd.hpp"
#include "test_util.hpp"

using namespace rt;

TEST_CASE("prime field basics") {
  Fp a(3, 5), b(4, 5);
  CHECK((a + b).value() == 2);
  CHECK((a * b).value() == 2);
  CHECK((a / b * b) == a);
  CHECK(Fp(-1, 5).value() == 4);
  CHECK_THROWS_AS(Fp(0, 5).inverse(), Error);
}

TEST_CASE("polynomial parsing and printing") {
  auto r = ring(5, {"x", "y"});
  CHECK(to_string(P(r, "y^2 - x^3")) == "-x^3 + y^2");
  CHECK(to_string(P(r, "(x+y)^5")) == "x^5 + y^5");
  CHECK(P(r, "6*x") == P(r, "x"));
  auto rs = ring(5, {"x", "y"}, {"s"});
  CHECK(to_string(P(rs, "s*x^3 + y")) == "s*x^3 + y");
}

TEST_CASE("partial derivatives in characteristic p") {
  auto r = ring(5, {"x", "y"});
  CHECK(partial_derivative(P(r, "x^5"), "x").is_zero());
  CHECK(partial_derivative(P(r, "x^3*y"), "x") == P(r, "3*x^2*y"));
  CHECK(partial_derivative(P(r, "x^3*y"), "y") == P(r, "x^3"));
}

TEST_CASE("coefficients with parameters normalize") {
  auto r = ring(5, {"x"}, {"rho", "s"});
  Coefficient a = C(r, "(rho^2 - 1)/(rho - 1)");
  CHECK(a == C(r, "rho + 1"));
  Coefficient b = C(r, "(2*rho)/(2*s)");
  CHECK(b.to_string() == "rho/s");
  CHECK((C(r, "rho/s") - C(r, "rho/s")).is_zero());
  CHECK((C(r, "1/(s+1)") + C(r, "s/(s+1)")).is_one());
}

TEST_CASE("perfection by exponent rescaling") {
  auto r = ring(5, {"x"}, {"rho"});
  Coefficient rho = C(r, "rho");
  Coefficient root = rho.pth_root();
  CHECK(root.to_string() == "rho^(1/5)");
  CHECK(root.pow(5) == rho);
  CHECK(C(r, "rho^5").pth_root() == rho);
  Coefficient mixed = root + rho;
  CHECK(mixed.to_string() == "rho + rho^(1/5)");
  CHECK((mixed - rho) == root);
  CHECK(Coefficient::from_int(r->field(), 3).pth_root() == Coefficient::from_int(r->field(), 3));
}

TEST_CASE("multivariate gcd") {
  auto r = ring(5, {"x", "y"});
  auto g = poly_gcd(P(r, "(x+1)^2*(y+x)"), P(r, "(x+1)*(y-x)"));
  CHECK(g == P(r, "x+1"));
  CHECK(poly_gcd(P(r, "x^2-y^2"), P(r, "x^3-y^3")) == P(r, "x-y"));
  auto rs = ring(5, {"x", "y"}, {"s"});
  CHECK(poly_gcd(P(rs, "(x-s)*(y+s*x)"), P(rs, "(x-s)^2")) == P(rs, "x-s"));
}

TEST_CASE("rational functions reduce") {
  auto r = ring(5, {"x", "y"});
  auto f = R(r, "(x^2 - y^2)/(2*x - 2*y)");
  CHECK(f.den().is_one());
  CHECK(f.num() == P(r, "3*x + 3*y"));
  auto g = R(r, "y/(1+x)");
  auto sum = g + R(r, "x*y/(1+x)");
  CHECK(sum == R(r, "y"));
}

TEST_CASE("series_invert") {
  auto r = ring(5, {"u"});
  auto field = r->field();
  auto one_plus_u = LaurentGerm::from_coeffs(field, 0, {I(r, 1), I(r, 1)}, 4);
  auto inv = series_invert(one_plus_u);
  CHECK(inv.same_terms(LaurentGerm::from_coeffs(field, 0, {I(r, 1), I(r, -1), I(r, 1), I(r, -1)})));
  CHECK(inv.precision() == 4);

  auto u = LaurentGerm::monomial(I(r, 1), 1);
  auto uinv = series_invert(u);
  CHECK(uinv.valuation() == -1);
  CHECK(uinv.is_exact());

  auto g = LaurentGerm::from_coeffs(field, 0, {I(r, 2), I(r, 3)}, 2);
  auto gi = series_invert(g);
  CHECK(gi.same_terms(LaurentGerm::from_coeffs(field, 0, {I(r, 3), I(r, 3)})));
  auto back = g * gi;
  CHECK(back.same_terms(LaurentGerm::constant(I(r, 1))));

  CHECK_THROWS_AS(series_invert(LaurentGerm::zero(field, 5)), Error);
}

TEST_CASE("substitute") {
  auto r = ring(5, {"x", "y"}, {"rho"});
  auto field = r->field();
  auto u = LaurentGerm::monomial(I(r, 1), 1);
  Coefficient rho = C(r, "rho");
  auto y_germ = LaurentGerm::from_coeffs(field, 0, {rho, rho});
  auto g = substitute(R(r, "y/x^5"), {u, y_germ});
  CHECK(g.valuation() == -5);
  CHECK(g.same_terms(LaurentGerm::from_coeffs(field, -5, {rho, rho})));

  auto z = substitute(P(r, "x + y"), std::vector<LaurentGerm>{u, -u});
  CHECK(z.is_zero());
  CHECK(z.is_exact());

  auto ring1 = ring(5, {"x"});
  auto w = LaurentGerm::from_coeffs(ring1->field(), 1, {I(ring1, 1), I(ring1, 1)}, 5);
  auto sq = substitute(P(ring1, "x^2"), std::vector<LaurentGerm>{w});
  CHECK(sq.same_terms(LaurentGerm::from_coeffs(ring1->field(), 2, {I(ring1, 1), I(ring1, 2), I(ring1, 1)})));

  auto ring2 = ring(5, {"x", "y"});
  auto inexact = LaurentGerm::from_coeffs(ring2->field(), 1, {I(ring2, 1)}, 3);
  CHECK_THROWS_AS(substitute(P(ring2, "x - y"), std::vector<LaurentGerm>{inexact, inexact}), Error);
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(20240501);
  auto r = ring(5, {"x", "y"});
  for (int trial = 0; trial < 1000; ++trial) {
    auto a = random_poly(rng, r, 4, 5), b = random_poly(rng, r, 4, 5), c = random_poly(rng, r, 4, 5);
    REQUIRE(((a + b) * c) == (a * c + b * c));
    REQUIRE(((a * b) * c) == (a * (b * c)));
    REQUIRE(((a + b) + c) == (a + (b + c)));
    REQUIRE((a * b) == (b * a));
    REQUIRE((a - a).is_zero());
  }
}

TEST_CASE("series_invert round trip on random unit germs") {
  std::mt19937_64 rng(77);
  auto r = ring(5, {"u"});
  std::uniform_int_distribution<int> coef(0, 4), len(1, 8), val(-3, 3);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Coefficient> cs;
    int n = len(rng);
    cs.push_back(I(r, 1 + coef(rng) % 4));
    for (int i = 1; i < n; ++i) cs.push_back(I(r, coef(rng)));
    int v = val(rng);
    auto f = LaurentGerm::from_coeffs(r->field(), v, cs, v + n);
    auto prod = f * series_invert(f);
    REQUIRE(prod.valuation() == 0);
    REQUIRE(prod.precision() == n);
    REQUIRE(prod.same_terms(LaurentGerm::constant(I(r, 1))));
  }
}

TEST_CASE("p-th root consistency on random coefficients") {
  std::mt19937_64 rng(5);
  auto r = ring(5, {"x"}, {"rho", "s"});
  for (int trial = 0; trial < 100; ++trial) {
    auto num = random_poly(rng, ring(5, {"rho", "s"}), 3, 3);
    auto den = random_poly(rng, ring(5, {"rho", "s"}), 2, 2);
    if (den.is_zero()) continue;
    std::string text = "(" + to_string(num) + ")/(" + to_string(den) + ")";
    Coefficient c = C(r, text);
    Coefficient root = c.pth_root();
    REQUIRE(root.pow(5) == c);
    REQUIRE(root.pth_root().pow(25) == c);
  }
}

TEST_CASE("substitution is a ring morphism") {
  std::mt19937_64 rng(11);
  auto r = ring(5, {"x", "y"});
  auto field = r->field();
  std::uniform_int_distribution<int> coef(0, 4);
  for (int trial = 0; trial < 100; ++trial) {
    auto f = random_poly(rng, r, 3, 4), g = random_poly(rng, r, 3, 4);
    std::vector<Coefficient> a, b;
    for (int i = 0; i < 5; ++i) {
      a.push_back(I(r, coef(rng)));
      b.push_back(I(r, coef(rng)));
    }
    a[0] = I(r, 1);
    std::vector<LaurentGerm> asg{LaurentGerm::from_coeffs(field, 1, a, 6), LaurentGerm::from_coeffs(field, 0, b, 5)};
    auto lhs = substitute_unchecked(f * g, asg);
    auto rhs = substitute_unchecked(f, asg) * substitute_unchecked(g, asg);
    auto sum_l = substitute_unchecked(f + g, asg);
    auto sum_r = substitute_unchecked(f, asg) + substitute_unchecked(g, asg);
    int prec = std::min(lhs.precision(), rhs.precision());
    REQUIRE(lhs.truncate(prec).same_terms(rhs.truncate(prec)));
    prec = std::min(sum_l.precision(), sum_r.precision());
    REQUIRE(sum_l.truncate(prec).same_terms(sum_r.truncate(prec)));
  }
}
