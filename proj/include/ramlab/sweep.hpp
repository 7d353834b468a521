#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramlab/ramification.hpp"

namespace ramlab {

// a*dx + b*dy
struct OneForm {
  MultiPoly a;
  MultiPoly b;
};

struct SSComponent {
  enum class Kind { ZeroSection, ConormalToDivisor, ConormalToPoint, LineFieldAlongDivisor };
  Kind kind = Kind::ZeroSection;
  MultiPoly h;          // divisor, for the divisor kinds
  PlanarPoint point;    // ConormalToPoint
  OneForm omega;        // LineFieldAlongDivisor

  static SSComponent zero_section();
  static SSComponent conormal_to_divisor(MultiPoly h);
  static SSComponent conormal_to_point(PlanarPoint P);
  static SSComponent line_field(MultiPoly h, OneForm omega);
  std::string describe() const;
};

const char* kind_name(SSComponent::Kind k);

struct CotangentPoint {
  PlanarPoint point;
  Coefficient xi_x;
  Coefficient xi_y;
  std::string to_string() const;
};

struct TtfunCertificate {
  bool certified = false;
  std::string reason;                        // refutation reason, empty when certified
  std::optional<std::size_t> component;      // component through the cotangent point, if any
  Coefficient scale;                         // df(P) = scale * xi
  std::vector<std::array<Coefficient, 4>> tangents;  // rows of the transversality matrix
  Coefficient determinant;
  std::optional<MultiPoly> witness;          // curve along which the graph meets SS, when not isolated
};

TtfunCertificate is_ttfun(const RationalFunction& f, const std::vector<SSComponent>& ss, const CotangentPoint& nu);

struct FamilySpec {
  RationalFunction family;   // lives over a field carrying the parameter `param`
  std::string param = "s";
  CotangentPoint nu;
  int congruence = 2;        // all slices agree mod m_P^congruence

  // Validates the congruence level and df(P) = xi up to scale on every slice.
  static FamilySpec make(RationalFunction family, std::string param, CotangentPoint nu, int congruence);
  RationalFunction slice(const Coefficient& value) const;   // value in the base field (without param)
  const RingPtr& ring() const { return family.ring(); }
  RingPtr base_ring() const;
};

// The linear path from the 2-jet of f (s = 0) to f (s = 1).
FamilySpec connect_family(const RationalFunction& f, const CotangentPoint& nu, const std::string& param = "s");

struct SweepCell {
  std::optional<RamificationReport> report;
  std::string error_code;
  std::string error;
  bool ok() const { return report.has_value(); }
};

struct SweepSlice {
  std::string label;                 // "s=0", "s=2", "s generic"
  bool generic = false;
  std::optional<bool> ttfun;         // unset when no SS model was supplied
  std::string ttfun_note;
  SweepCell special;
  SweepCell generic_fiber;
  std::optional<std::int64_t> dim_phi;
  bool jump = false;                 // dim phi differs from the generic slice
};

struct SweepTable {
  std::string param;
  int congruence = 0;
  std::string family;
  std::vector<SweepSlice> slices;    // specialized slices first, the generic slice last
  std::vector<std::string> exceptional;  // parameter values where a generic leading coefficient degenerates
  bool semicontinuous = true;
  std::vector<std::string> violations;
};

struct SweepOptions {
  std::vector<std::int64_t> samples{0};  // specialized parameter values, besides the generic one
  PrecisionPolicy precision;
  unsigned parallel = 1;
};

SweepTable sweep_family(const ASheafSpec& sheaf, const FamilySpec& fam, const std::vector<SSComponent>& ss = {},
                        const SweepOptions& options = {});

struct DepthProbe {
  int level = 0;                     // congruence level N
  std::string probe;                 // perturbation monomial
  bool certified = true;             // every slice of the probed family is a ttfun
  bool jump = false;
  SweepTable table;
};

struct DepthEstimate {
  int n_lower = 0;                   // lower-bound estimate of the depth
  bool stable_found = false;         // false when every level up to Nmax showed a jump
  std::string base;                  // certified base ttfun
  std::vector<DepthProbe> evidence;
  std::string caveat;
};

// Probes default to x^a*y^b with N <= a+b <= N+1 at each level N.
DepthEstimate empirical_depth(const ASheafSpec& sheaf, const std::vector<SSComponent>& ss, const CotangentPoint& nu,
                              int n_max, const std::vector<MultiPoly>& probes = {}, const SweepOptions& options = {});

}  // namespace ramlab
