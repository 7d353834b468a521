#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ramlab/fp.hpp"
#include "ramlab/sparse_poly.hpp"

namespace ramlab {

struct FpCtx {
  std::uint32_t p = 2;
  std::size_t n = 0;
  Fp zero() const { return Fp(0, p); }
  Fp one() const { return Fp(1, p); }
  Fp from_int(std::int64_t v) const { return Fp(v, p); }
  std::size_t nvars() const { return n; }
};

// Polynomials over F_p in the transcendental parameters of a Field.
using ParamPoly = SparsePoly<Fp, FpCtx>;

class Coefficient;
class Field;
using FieldPtr = std::shared_ptr<const Field>;

// F_p, or the rational function field F_p(params). Parameters are named so
// that values can be carried between fields with different parameter sets.
class Field {
 public:
  static FieldPtr make(std::uint32_t p, std::vector<std::string> params = {});

  std::uint32_t p() const { return p_; }
  const std::vector<std::string>& params() const { return params_; }
  std::size_t nparams() const { return params_.size(); }
  std::optional<std::size_t> param_index(const std::string& name) const;
  bool same_as(const Field& o) const { return p_ == o.p_ && params_ == o.params_; }
  FpCtx param_ctx() const { return FpCtx{p_, params_.size()}; }

  // Field with the extra parameters appended (names already present are skipped).
  FieldPtr with_params(const std::vector<std::string>& extra) const;
  // Field with the named parameter removed.
  FieldPtr without_param(const std::string& name) const;

 private:
  Field(std::uint32_t p, std::vector<std::string> params) : p_(p), params_(std::move(params)) {}
  std::uint32_t p_;
  std::vector<std::string> params_;
};

// Exact scalar in F_p or in the perfect closure of F_p(params). Parameter i
// with perfection exponent k stands for the p^k-th root of the true
// parameter, so exponent e on it means param^(e / p^k).
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(FieldPtr field, Fp value);

  static Coefficient from_int(const FieldPtr& field, std::int64_t v);
  static Coefficient param(const FieldPtr& field, std::size_t index);
  static Coefficient param(const FieldPtr& field, const std::string& name);
  static Coefficient fraction(const FieldPtr& field, ParamPoly num, ParamPoly den,
                              std::array<std::uint8_t, kMaxVars> perfection = {});

  const FieldPtr& field() const { return field_; }
  std::uint32_t prime() const;
  bool is_zero() const;
  bool is_one() const;
  // True when the value lies in F_p.
  bool is_constant() const;
  std::optional<Fp> as_fp() const;

  ParamPoly numerator() const;
  ParamPoly denominator() const;
  const std::array<std::uint8_t, kMaxVars>& perfection() const { return perf_; }
  std::uint8_t max_perfection() const;

  Coefficient operator+(const Coefficient& o) const;
  Coefficient operator-(const Coefficient& o) const;
  Coefficient operator*(const Coefficient& o) const;
  Coefficient operator/(const Coefficient& o) const;
  Coefficient operator-() const;
  Coefficient& operator+=(const Coefficient& o) { return *this = *this + o; }
  Coefficient& operator-=(const Coefficient& o) { return *this = *this - o; }
  Coefficient& operator*=(const Coefficient& o) { return *this = *this * o; }
  Coefficient inverse() const;
  Coefficient pow(std::int64_t e) const;
  Coefficient pth_root() const;

  bool operator==(const Coefficient& o) const;
  bool operator!=(const Coefficient& o) const { return !(*this == o); }

  // Image under the field map sending true parameter i to images[i].
  Coefficient map_params(const FieldPtr& target, const std::vector<Coefficient>& images) const;
  // Same value viewed in a field whose parameters include ours (matched by name).
  Coefficient lift_to(const FieldPtr& target) const;
  // Set a named parameter to a value; the result lives in `target`.
  Coefficient specialize(const FieldPtr& target, const std::string& name, const Coefficient& value) const;

  std::string to_string() const;
  // True when printing needs parentheses inside a product.
  bool is_compound() const;

 private:
  void normalize();
  Coefficient lifted(const std::array<std::uint8_t, kMaxVars>& perf) const;
  bool params_mode() const;
  static void align(Coefficient& a, Coefficient& b);

  FieldPtr field_;
  Fp c_;
  ParamPoly num_, den_;
  std::array<std::uint8_t, kMaxVars> perf_{};
};

std::string format_param_poly(const ParamPoly& p, const std::vector<std::string>& names,
                              const std::array<std::uint8_t, kMaxVars>& perf);

}  // namespace ramlab
