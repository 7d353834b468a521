#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <boost/rational.hpp>

#include "ramlab/laurent.hpp"
#include "ramlab/localgeom.hpp"
#include "ramlab/multipoly.hpp"

namespace ramlab {

// Rank-1 Artin-Schreier sheaf t^p - t = g, !-extended along h = 0.
struct ASheafSpec {
  RationalFunction g;
  MultiPoly h;
  std::string chart = "A2";

  // Validates p > 2 and that the poles of g lie on h = 0.
  static ASheafSpec make(RationalFunction g, MultiPoly h, std::string chart = "A2");
  const RingPtr& ring() const { return ring_of(h); }
  std::uint32_t p() const { return ring()->p(); }
};

struct PrecisionPolicy {
  int initial = 8;
  int guard = 4;
  int cap = 4096;
  std::optional<std::uint64_t> reduction_seed;  // reduce polar terms in a seeded random order
};

struct ASReduction {
  LaurentGerm reduced;
  std::int64_t sw = 0;
};

// Artin-Schreier reduction of the polar part, highest pole first.
ASReduction as_reduce(const LaurentGerm& g, std::uint32_t p);
// Same, removing reducible polar terms in a random order.
ASReduction as_reduce_randomized(const LaurentGerm& g, std::uint32_t p, std::mt19937_64& rng);

struct RamificationReport {
  std::int64_t sw = 0;
  std::int64_t dim = 1;
  std::int64_t dimtot() const { return sw + dim; }
  LaurentGerm reduced;
  std::uint8_t perfection = 0;
  bool unramified = false;
  int precision = 0;       // curve parametrization precision that certified the polar part
  Coefficient leading;     // top polar coefficient after reduction (zero if unramified)
};

RamificationReport swan_on_curve(const ASheafSpec& sheaf, const CurveGerm& C, const PlanarPoint& P,
                                 const PrecisionPolicy& policy = {});
// The curve given by an equation through P.
RamificationReport swan_on_curve(const ASheafSpec& sheaf, const MultiPoly& curve, const PlanarPoint& P,
                                 const PrecisionPolicy& policy = {});

struct PhiDimReport {
  RamificationReport special;
  RamificationReport generic;
  std::int64_t dim_phi = 0;
  std::string generic_param;          // transcendental naming the generic point of the divisor
  std::vector<std::int64_t> sampled;  // sampled generic Swan conductors, when requested
};

struct PhiDimOptions {
  PrecisionPolicy precision;
  bool sample = false;  // cross-check the generic fiber at F_p-rational points of the divisor
};

PhiDimReport dl_phi_dim_report(const ASheafSpec& sheaf, const RationalFunction& f, const PlanarPoint& P,
                               const PhiDimOptions& options = {});
std::int64_t dl_phi_dim(const ASheafSpec& sheaf, const RationalFunction& f, const PlanarPoint& P);

struct BreakData {
  std::uint64_t group_order = 1;
  std::vector<std::uint64_t> orders;  // |G_i| for i = 0, 1, 2, ...
  std::vector<std::uint64_t> dims;    // dim(F / F^{G_i}) for the same i
};
boost::rational<std::int64_t> swan_from_breaks(const BreakData& b);

// Valuation of sigma(u) - u for an automorphism u -> sigma(u) of a trait.
IntersectionNumber i_of_automorphism(const LaurentGerm& sigma_u);

struct GosReport {
  std::int64_t chi = 0;
  std::vector<std::string> boundary;  // boundary points in homogeneous coordinates
  std::vector<std::int64_t> swans;
};
// Sheaf given in homogeneous coordinates of P^2 (g of degree 0); line by a linear form.
GosReport gos_euler_line_report(const ASheafSpec& sheaf, const MultiPoly& line, const PrecisionPolicy& policy = {});
std::int64_t gos_euler_line(const ASheafSpec& sheaf, const MultiPoly& line);

}  // namespace ramlab
