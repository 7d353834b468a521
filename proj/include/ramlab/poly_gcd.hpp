#pragma once

#include <cstddef>

#include "ramlab/sparse_poly.hpp"

namespace ramlab {

namespace detail {

template <class P>
P one_of(const P& a) {
  return P::constant(a.context(), a.context().one());
}

template <class P>
std::size_t first_variable(const P& a, const P& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a.involves(i) || b.involves(i)) return i;
  return kMaxVars;
}

template <class P>
P leading_coeff_in(const P& a, std::size_t v) {
  auto cs = a.coefficients_in(v);
  return cs.rbegin()->second;
}

// Pseudo-remainder of a by b with respect to variable v.
template <class P>
P pseudo_remainder(P a, const P& b, std::size_t v) {
  const auto db = b.degree_in(v);
  const P lb = leading_coeff_in(b, v);
  while (!a.is_zero() && a.degree_in(v) >= db) {
    const auto da = a.degree_in(v);
    const P la = leading_coeff_in(a, v);
    a = a * lb - (la * b).mul_monomial(Monomial::var(v, da - db));
  }
  return a;
}

}  // namespace detail

template <class P>
P poly_gcd(const P& a, const P& b);

// Gcd of the coefficients of a viewed as a polynomial in variable v.
template <class P>
P content_in(const P& a, std::size_t v) {
  P g(a.context());
  for (const auto& [e, c] : a.coefficients_in(v)) {
    g = poly_gcd(g, c);
    if (g.is_one()) break;
  }
  return g;
}

template <class P>
P primitive_part_in(const P& a, std::size_t v) {
  if (a.is_zero()) return a;
  P c = content_in(a, v);
  auto q = a.divide_exact(c);
  if (!q) fail(ErrorCode::Internal, "content does not divide polynomial");
  return q->monic();
}

// Monic gcd over a field via recursive primitive remainder sequences.
template <class P>
P poly_gcd(const P& a, const P& b) {
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (a.is_constant() || b.is_constant()) return detail::one_of(a);
  const std::size_t v = detail::first_variable(a, b);
  if (v == kMaxVars) return detail::one_of(a);
  P ca = content_in(a, v);
  P cb = content_in(b, v);
  P c = poly_gcd(ca, cb);
  P pa = *a.divide_exact(ca);
  P pb = *b.divide_exact(cb);
  if (pa.degree_in(v) < pb.degree_in(v)) std::swap(pa, pb);
  while (!pb.is_zero()) {
    if (pb.degree_in(v) == 0) {
      pa = detail::one_of(a);
      break;
    }
    P r = detail::pseudo_remainder(pa, pb, v);
    pa = pb;
    pb = primitive_part_in(r, v);
  }
  P g = pa.degree_in(v) == 0 ? detail::one_of(a) : primitive_part_in(pa, v);
  return (c * g).monic();
}

}  // namespace ramlab
