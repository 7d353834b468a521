#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ramlab/blowup.hpp"
#include "ramlab/ideals.hpp"
#include "ramlab/localgeom.hpp"

namespace ramlab {

using BigInt = boost::multiprecision::cpp_int;

struct EpMode {
  enum class Kind { Exact, Assisted };
  Kind kind = Kind::Exact;
  std::optional<IdealHandle> claimed_radical;

  static EpMode exact() { return {}; }
  static EpMode assisted(IdealHandle J) { return {Kind::Assisted, std::move(J)}; }
};

struct EpReport {
  std::int64_t ep = 0;
  std::vector<MultiPoly> radical;
  std::string shape;              // principal, monomial, zero-dimensional, divisorial, assisted
  bool radical_assumed = false;   // assisted mode: radicality of J is not verified
};

EpReport ep_report(const IdealHandle& I, const EpMode& mode = EpMode::exact());
std::int64_t ep(const IdealHandle& I, const EpMode& mode = EpMode::exact());

struct FixedIdeal {
  ChartMap sigma;
  IdealHandle ideal;
  std::string chart = "A2";
};

// Ideal generated by sigma*(v) - v. For rational images this is the ideal of
// the fixed scheme on the open set where sigma is regular: numerators,
// saturated by the denominators.
FixedIdeal fixed_ideal(const ChartMap& sigma, const std::string& chart = "A2");
FixedIdeal fixed_ideal(const std::vector<MultiPoly>& sigma, const std::string& chart = "A2");

struct CodifferentReport {
  MultiPoly f;
  std::size_t t_var = 0;
  MultiPoly delta;
  std::int64_t r = 0;
  std::int64_t s = 0;
  MultiPoly g;
  std::vector<MultiPoly> annihilator;  // generators of Ann_A(R/(Delta))
  std::vector<std::string> warnings;
};

// R = A[t]/(f) with t the variable `t_var` of f's ring and A generated by the others.
CodifferentReport codifferent_r_s(const MultiPoly& f, const MultiPoly& g, const PlanarPoint& P, std::size_t t_var);
// t is the last ring variable.
CodifferentReport codifferent_r_s(const MultiPoly& f, const MultiPoly& g, const PlanarPoint& P);

struct BoundReport {
  std::int64_t p = 0;
  std::int64_t group_order = 0;
  std::int64_t i_x = 1;
  std::int64_t ep_max = 0;
  std::int64_t r = 0;
  std::int64_t s = 0;
  std::int64_t M = 0;
  BigInt M1;
  BigInt M2;
  BigInt N;
  bool locally_constant = false;
};

BoundReport depth_bound(std::int64_t p, std::int64_t group_order, std::int64_t i_x, std::int64_t ep_max, std::int64_t r,
                        std::int64_t s, bool locally_constant = false);

BigInt per_curve_bound(const BigInt& M1, const BigInt& M2, const BigInt& dcx, const BigInt& group_order);

// 2 when the covector xi = a*dx + b*dy is conormal to the divisor h = 0 at P, else 1.
std::int64_t i_x_from_covector(const MultiPoly& h, const PlanarPoint& P, const Coefficient& a, const Coefficient& b);
// Intersection number of a test curve with the divisor at P.
std::int64_t i_x_of_curve(const MultiPoly& curve, const MultiPoly& h, const PlanarPoint& P);

}  // namespace ramlab
