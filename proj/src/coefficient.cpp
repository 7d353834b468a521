#include "ramlab/coefficient.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "ramlab/poly_gcd.hpp"

namespace ramlab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::ZeroGerm: return "ZeroGerm";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::NotOnCurve: return "NotOnCurve";
    case ErrorCode::SingularAtPoint: return "SingularAtPoint";
    case ErrorCode::NotZeroDimensional: return "NotZeroDimensional";
    case ErrorCode::NonReduced: return "NonReduced";
    case ErrorCode::UnresolvableWithoutExtension: return "UnresolvableWithoutExtension";
    case ErrorCode::NotFixingCenter: return "NotFixingCenter";
    case ErrorCode::NotRegularOnChart: return "NotRegularOnChart";
    case ErrorCode::CurveInDivisor: return "CurveInDivisor";
    case ErrorCode::GenericFiberSingular: return "GenericFiberSingular";
    case ErrorCode::NotAutomorphism: return "NotAutomorphism";
    case ErrorCode::LineInDivisor: return "LineInDivisor";
    case ErrorCode::UnsupportedIdealShape: return "UnsupportedIdealShape";
    case ErrorCode::NotContaining: return "NotContaining";
    case ErrorCode::NotInRadical: return "NotInRadical";
    case ErrorCode::NotMonic: return "NotMonic";
    case ErrorCode::AnnihilatorCapExceeded: return "AnnihilatorCapExceeded";
    case ErrorCode::InvalidIx: return "InvalidIx";
    case ErrorCode::NotVanishing: return "NotVanishing";
    case ErrorCode::IsolationUndecidable: return "IsolationUndecidable";
    case ErrorCode::NoTtfunFound: return "NoTtfunFound";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::SemanticError: return "SemanticError";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// ---------------------------------------------------------------- Field

FieldPtr Field::make(std::uint32_t p, std::vector<std::string> params) {
  if (!is_prime(p)) fail(ErrorCode::InvalidInput, "field characteristic " + std::to_string(p) + " is not prime");
  if (params.size() > kMaxVars) fail(ErrorCode::InvalidInput, "too many field parameters");
  for (std::size_t i = 0; i < params.size(); ++i)
    for (std::size_t j = i + 1; j < params.size(); ++j)
      if (params[i] == params[j]) fail(ErrorCode::InvalidInput, "duplicate parameter " + params[i]);
  return FieldPtr(new Field(p, std::move(params)));
}

std::optional<std::size_t> Field::param_index(const std::string& name) const {
  for (std::size_t i = 0; i < params_.size(); ++i)
    if (params_[i] == name) return i;
  return std::nullopt;
}

FieldPtr Field::with_params(const std::vector<std::string>& extra) const {
  auto names = params_;
  for (const auto& e : extra)
    if (std::find(names.begin(), names.end(), e) == names.end()) names.push_back(e);
  return make(p_, names);
}

FieldPtr Field::without_param(const std::string& name) const {
  auto names = params_;
  names.erase(std::remove(names.begin(), names.end(), name), names.end());
  return make(p_, names);
}

// ---------------------------------------------------------------- Coefficient

Coefficient::Coefficient(FieldPtr field, Fp value) : field_(std::move(field)), c_(value) {
  if (params_mode()) {
    auto ctx = field_->param_ctx();
    num_ = ParamPoly::constant(ctx, value);
    den_ = ParamPoly::constant(ctx, ctx.one());
  }
}

Coefficient Coefficient::from_int(const FieldPtr& field, std::int64_t v) {
  return Coefficient(field, Fp(v, field->p()));
}

Coefficient Coefficient::param(const FieldPtr& field, std::size_t index) {
  if (index >= field->nparams()) fail(ErrorCode::InvalidInput, "parameter index out of range");
  auto ctx = field->param_ctx();
  return fraction(field, ParamPoly::variable(ctx, index), ParamPoly::constant(ctx, ctx.one()));
}

Coefficient Coefficient::param(const FieldPtr& field, const std::string& name) {
  auto idx = field->param_index(name);
  if (!idx) fail(ErrorCode::InvalidInput, "unknown parameter " + name);
  return param(field, *idx);
}

Coefficient Coefficient::fraction(const FieldPtr& field, ParamPoly num, ParamPoly den,
                                  std::array<std::uint8_t, kMaxVars> perfection) {
  Coefficient c;
  c.field_ = field;
  if (field->nparams() == 0) {
    if (den.is_zero()) fail(ErrorCode::DivisionByZero, "zero denominator");
    c.c_ = num.constant_term() / den.constant_term();
    return c;
  }
  c.c_ = Fp(0, field->p());
  c.num_ = std::move(num);
  c.den_ = std::move(den);
  c.perf_ = perfection;
  c.normalize();
  return c;
}

bool Coefficient::params_mode() const { return field_ && field_->nparams() > 0; }

std::uint32_t Coefficient::prime() const { return field_ ? field_->p() : c_.prime(); }

bool Coefficient::is_zero() const { return params_mode() ? num_.is_zero() : c_.is_zero(); }

bool Coefficient::is_one() const {
  if (!params_mode()) return c_.is_one();
  return num_.is_one() && den_.is_one();
}

bool Coefficient::is_constant() const {
  if (!params_mode()) return true;
  return num_.is_constant() && den_.is_constant();
}

std::optional<Fp> Coefficient::as_fp() const {
  if (!params_mode()) return c_;
  if (!is_constant()) return std::nullopt;
  return num_.constant_term() / den_.constant_term();
}

ParamPoly Coefficient::numerator() const {
  if (params_mode()) return num_;
  FpCtx ctx{prime(), field_ ? field_->nparams() : 0};
  return ParamPoly::constant(ctx, c_);
}

ParamPoly Coefficient::denominator() const {
  if (params_mode()) return den_;
  FpCtx ctx{prime(), field_ ? field_->nparams() : 0};
  return ParamPoly::constant(ctx, ctx.one());
}

std::uint8_t Coefficient::max_perfection() const {
  return *std::max_element(perf_.begin(), perf_.end());
}

namespace {

std::int64_t ipow(std::int64_t b, unsigned e) {
  std::int64_t r = 1;
  while (e--) r *= b;
  return r;
}

ParamPoly rescale_exponents(const ParamPoly& poly, std::size_t var, std::int64_t factor, bool divide) {
  return poly.transform(
      poly.context(), [](const Fp& c) { return c; },
      [&](const Monomial& m) {
        Monomial r = m;
        r[var] = divide ? static_cast<std::int32_t>(m[var] / factor) : static_cast<std::int32_t>(m[var] * factor);
        return r;
      });
}

bool exponents_divisible(const ParamPoly& poly, std::size_t var, std::uint32_t p) {
  for (const auto& t : poly.terms())
    if (t.mono[var] % static_cast<std::int32_t>(p) != 0) return false;
  return true;
}

}  // namespace

void Coefficient::normalize() {
  if (!params_mode()) return;
  const auto ctx = field_->param_ctx();
  if (den_.is_zero()) fail(ErrorCode::DivisionByZero, "zero denominator in coefficient");
  if (num_.is_zero()) {
    den_ = ParamPoly::constant(ctx, ctx.one());
    perf_.fill(0);
    return;
  }
  if (!den_.is_constant() && !num_.is_constant()) {
    ParamPoly g = poly_gcd(num_, den_);
    if (!g.is_one()) {
      num_ = *num_.divide_exact(g);
      den_ = *den_.divide_exact(g);
    }
  }
  const std::uint32_t p = field_->p();
  for (std::size_t i = 0; i < field_->nparams(); ++i) {
    while (perf_[i] > 0 && exponents_divisible(num_, i, p) && exponents_divisible(den_, i, p)) {
      num_ = rescale_exponents(num_, i, p, true);
      den_ = rescale_exponents(den_, i, p, true);
      --perf_[i];
    }
  }
  const Fp lc = den_.leading_coeff();
  if (!lc.is_one()) {
    const Fp inv = lc.inverse();
    num_ = num_.scale(inv);
    den_ = den_.scale(inv);
  }
}

Coefficient Coefficient::lifted(const std::array<std::uint8_t, kMaxVars>& perf) const {
  Coefficient r = *this;
  const std::uint32_t p = field_->p();
  for (std::size_t i = 0; i < field_->nparams(); ++i) {
    if (perf[i] > perf_[i]) {
      const auto factor = ipow(p, perf[i] - perf_[i]);
      r.num_ = rescale_exponents(r.num_, i, factor, false);
      r.den_ = rescale_exponents(r.den_, i, factor, false);
      r.perf_[i] = perf[i];
    }
  }
  return r;
}

void Coefficient::align(Coefficient& a, Coefficient& b) {
  if (a.perf_ == b.perf_) return;
  std::array<std::uint8_t, kMaxVars> m{};
  for (std::size_t i = 0; i < kMaxVars; ++i) m[i] = std::max(a.perf_[i], b.perf_[i]);
  a = a.lifted(m);
  b = b.lifted(m);
}

namespace {
void check_fields(const FieldPtr& a, const FieldPtr& b) {
  if (a == b || !a || !b) return;
  if (!a->same_as(*b)) fail(ErrorCode::InvalidInput, "arithmetic between coefficients of different fields");
}
}  // namespace

Coefficient Coefficient::operator+(const Coefficient& o) const {
  check_fields(field_, o.field_);
  if (!params_mode()) {
    Coefficient r = field_ ? *this : o;
    r.c_ = c_ + o.c_;
    return r;
  }
  if (o.is_zero()) return *this;
  if (is_zero()) return o;
  Coefficient a = *this, b = o;
  align(a, b);
  Coefficient r = a;
  if (a.den_ == b.den_) {
    r.num_ = a.num_ + b.num_;
  } else {
    r.num_ = a.num_ * b.den_ + b.num_ * a.den_;
    r.den_ = a.den_ * b.den_;
  }
  if (r.den_.is_one() && r.perf_ == std::array<std::uint8_t, kMaxVars>{}) {
    if (r.num_.is_zero()) r.normalize();
    return r;
  }
  r.normalize();
  return r;
}

Coefficient Coefficient::operator-() const {
  Coefficient r = *this;
  if (params_mode())
    r.num_ = -num_;
  else
    r.c_ = -c_;
  return r;
}

Coefficient Coefficient::operator-(const Coefficient& o) const { return *this + (-o); }

Coefficient Coefficient::operator*(const Coefficient& o) const {
  check_fields(field_, o.field_);
  if (!params_mode()) {
    Coefficient r = field_ ? *this : o;
    r.c_ = c_ * o.c_;
    return r;
  }
  if (is_zero()) return *this;
  if (o.is_zero()) return o;
  if (o.is_constant() && o.den_.is_one()) {
    Coefficient r = *this;
    r.num_ = num_.scale(o.num_.constant_term());
    return r;
  }
  if (is_constant() && den_.is_one()) {
    Coefficient r = o;
    r.num_ = o.num_.scale(num_.constant_term());
    return r;
  }
  Coefficient a = *this, b = o;
  align(a, b);
  Coefficient r = a;
  r.num_ = a.num_ * b.num_;
  r.den_ = a.den_ * b.den_;
  if (r.den_.is_one() && r.perf_ == std::array<std::uint8_t, kMaxVars>{}) return r;
  r.normalize();
  return r;
}

Coefficient Coefficient::inverse() const {
  if (is_zero()) fail(ErrorCode::DivisionByZero, "inverse of zero coefficient");
  Coefficient r = *this;
  if (!params_mode()) {
    r.c_ = c_.inverse();
    return r;
  }
  std::swap(r.num_, r.den_);
  const Fp lc = r.den_.leading_coeff();
  if (!lc.is_one()) {
    const Fp inv = lc.inverse();
    r.num_ = r.num_.scale(inv);
    r.den_ = r.den_.scale(inv);
  }
  return r;
}

Coefficient Coefficient::operator/(const Coefficient& o) const { return *this * o.inverse(); }

Coefficient Coefficient::pow(std::int64_t e) const {
  if (e < 0) return inverse().pow(-e);
  Coefficient acc = from_int(field_, 1);
  Coefficient base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

Coefficient Coefficient::pth_root() const {
  if (!params_mode()) return *this;  // Frobenius is the identity on F_p
  Coefficient r = *this;
  for (std::size_t i = 0; i < field_->nparams(); ++i) {
    if (r.perf_[i] == 250) fail(ErrorCode::PrecisionExhausted, "perfection exponent overflow");
    ++r.perf_[i];
  }
  r.normalize();
  return r;
}

bool Coefficient::operator==(const Coefficient& o) const {
  if (!params_mode() || !o.params_mode()) {
    auto a = as_fp(), b = o.as_fp();
    return a && b && *a == *b;
  }
  return perf_ == o.perf_ && num_ == o.num_ && den_ == o.den_;
}

Coefficient Coefficient::map_params(const FieldPtr& target, const std::vector<Coefficient>& images) const {
  if (target->p() != prime()) fail(ErrorCode::InvalidInput, "field map between different characteristics");
  if (!params_mode()) return Coefficient(target, Fp(c_.value(), target->p()));
  std::vector<Coefficient> roots;
  for (std::size_t i = 0; i < field_->nparams(); ++i) {
    Coefficient r = images.at(i);
    for (int k = 0; k < perf_[i]; ++k) r = r.pth_root();
    roots.push_back(r);
  }
  auto eval = [&](const ParamPoly& poly) {
    Coefficient acc = from_int(target, 0);
    for (const auto& t : poly.terms()) {
      Coefficient term(target, Fp(t.coeff.value(), target->p()));
      for (std::size_t i = 0; i < field_->nparams(); ++i)
        if (t.mono[i] != 0) term = term * roots[i].pow(t.mono[i]);
      acc = acc + term;
    }
    return acc;
  };
  Coefficient d = eval(den_);
  if (d.is_zero()) fail(ErrorCode::DivisionByZero, "specialization makes a denominator vanish");
  return eval(num_) / d;
}

Coefficient Coefficient::lift_to(const FieldPtr& target) const {
  if (field_ == target) return *this;
  if (!params_mode()) return Coefficient(target, Fp(c_.value(), target->p()));
  if (field_->same_as(*target)) {
    Coefficient r = *this;
    r.field_ = target;
    return r;
  }
  std::vector<Coefficient> images;
  for (const auto& name : field_->params()) {
    if (!target->param_index(name)) fail(ErrorCode::InvalidInput, "target field lacks parameter " + name);
    images.push_back(param(target, name));
  }
  return map_params(target, images);
}

Coefficient Coefficient::specialize(const FieldPtr& target, const std::string& name, const Coefficient& value) const {
  if (!params_mode()) return Coefficient(target, Fp(c_.value(), target->p()));
  std::vector<Coefficient> images;
  for (const auto& pn : field_->params()) images.push_back(pn == name ? value.lift_to(target) : param(target, pn));
  return map_params(target, images);
}

std::string format_param_poly(const ParamPoly& poly, const std::vector<std::string>& names,
                              const std::array<std::uint8_t, kMaxVars>& perf) {
  if (poly.is_zero()) return "0";
  const std::int64_t p = poly.context().p;
  std::ostringstream out;
  bool first = true;
  for (const auto& t : poly.terms()) {
    std::int64_t c = t.coeff.signed_value();
    std::ostringstream mono;
    bool has_mono = false;
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (t.mono[i] == 0) continue;
      if (has_mono) mono << '*';
      has_mono = true;
      std::int64_t num = t.mono[i];
      std::int64_t den = ipow(p, perf[i]);
      std::int64_t g = std::gcd(num, den);
      num /= g;
      den /= g;
      mono << names[i];
      if (den != 1)
        mono << "^(" << num << '/' << den << ')';
      else if (num != 1)
        mono << '^' << num;
    }
    if (!first) out << (c < 0 ? " - " : " + ");
    if (first && c < 0) out << '-';
    std::int64_t ac = c < 0 ? -c : c;
    if (!has_mono)
      out << ac;
    else if (ac == 1)
      out << mono.str();
    else
      out << ac << '*' << mono.str();
    first = false;
  }
  return out.str();
}

bool Coefficient::is_compound() const {
  if (!params_mode()) return false;
  return num_.size() > 1 || !den_.is_one();
}

std::string Coefficient::to_string() const {
  if (!params_mode()) return std::to_string(c_.signed_value());
  const auto& names = field_->params();
  std::string n = format_param_poly(num_, names, perf_);
  if (den_.is_one()) return n;
  std::string d = format_param_poly(den_, names, perf_);
  if (num_.size() > 1) n = "(" + n + ")";
  if (d.find_first_of(" *") != std::string::npos || d.find('^') != std::string::npos) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace ramlab
