#include "ramlab/multipoly.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "ramlab/poly_gcd.hpp"

namespace ramlab {

RingPtr Ring::make(FieldPtr field, std::vector<std::string> vars) {
  if (vars.size() > kMaxVars) fail(ErrorCode::InvalidInput, "too many ring variables");
  for (std::size_t i = 0; i < vars.size(); ++i) {
    for (std::size_t j = i + 1; j < vars.size(); ++j)
      if (vars[i] == vars[j]) fail(ErrorCode::InvalidInput, "duplicate variable " + vars[i]);
    if (field->param_index(vars[i])) fail(ErrorCode::InvalidInput, "variable " + vars[i] + " clashes with a parameter");
  }
  return RingPtr(new Ring(std::move(field), std::move(vars)));
}

std::optional<std::size_t> Ring::var_index(const std::string& name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i)
    if (vars_[i] == name) return i;
  return std::nullopt;
}

std::size_t Ring::require_var(const std::string& name) const {
  auto i = var_index(name);
  if (!i) fail(ErrorCode::InvalidInput, "unknown variable " + name);
  return *i;
}

RingPtr Ring::with_vars(const std::vector<std::string>& extra) const {
  auto v = vars_;
  for (const auto& e : extra)
    if (std::find(v.begin(), v.end(), e) == v.end()) v.push_back(e);
  return make(field_, v);
}

RingPtr Ring::with_field(FieldPtr field) const { return make(std::move(field), vars_); }

const RingPtr& ring_of(const MultiPoly& f) { return f.context().ring; }

MultiPoly poly_zero(const RingPtr& ring) { return MultiPoly(RingRef{ring}); }
MultiPoly poly_const(const RingPtr& ring, const Coefficient& c) {
  return MultiPoly::constant(RingRef{ring}, c.lift_to(ring->field()));
}
MultiPoly poly_int(const RingPtr& ring, std::int64_t v) { return MultiPoly::constant(RingRef{ring}, v); }
MultiPoly poly_var(const RingPtr& ring, const std::string& name) { return poly_var(ring, ring->require_var(name)); }
MultiPoly poly_var(const RingPtr& ring, std::size_t index) { return MultiPoly::variable(RingRef{ring}, index); }

namespace {

std::string mono_string(const Monomial& m, const std::vector<std::string>& vars) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < vars.size(); ++i) {
    if (m[i] == 0) continue;
    if (!first) out << '*';
    first = false;
    out << vars[i];
    if (m[i] != 1) out << '^' << m[i];
  }
  return out.str();
}

std::string term_string(const Coefficient& c, const Monomial& m, const std::vector<std::string>& vars,
                        bool alone) {
  if (m.is_one()) {
    std::string s = c.to_string();
    return (c.is_compound() && !alone) ? "(" + s + ")" : s;
  }
  std::string ms = mono_string(m, vars);
  if (auto v = c.as_fp()) {
    auto sv = v->signed_value();
    if (sv == 1) return ms;
    if (sv == -1) return "-" + ms;
    return std::to_string(sv) + "*" + ms;
  }
  if (c.is_compound()) return "(" + c.to_string() + ")*" + ms;
  return c.to_string() + "*" + ms;
}

}  // namespace

std::string to_string(const MultiPoly& f) {
  if (f.is_zero()) return "0";
  const auto& vars = ring_of(f)->vars();
  std::string out;
  bool first = true;
  for (const auto& t : f.terms()) {
    std::string s = term_string(t.coeff, t.mono, vars, f.size() == 1);
    if (first) {
      out = s;
    } else if (!s.empty() && s[0] == '-') {
      out += " - " + s.substr(1);
    } else {
      out += " + " + s;
    }
    first = false;
  }
  return out;
}

MultiPoly partial_derivative(const MultiPoly& f, std::size_t var) { return f.derivative(var); }
MultiPoly partial_derivative(const MultiPoly& f, const std::string& var) {
  return f.derivative(ring_of(f)->require_var(var));
}

Coefficient evaluate(const MultiPoly& f, const std::vector<Coefficient>& point) {
  const auto& field = ring_of(f)->field();
  Coefficient acc = Coefficient::from_int(field, 0);
  std::vector<std::map<std::int32_t, Coefficient>> cache(point.size());
  for (const auto& t : f.terms()) {
    Coefficient term = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) {
      const auto e = t.mono[i];
      if (e == 0) continue;
      auto it = cache[i].find(e);
      if (it == cache[i].end()) it = cache[i].emplace(e, point[i].lift_to(field).pow(e)).first;
      term = term * it->second;
    }
    acc = acc + term;
  }
  return acc;
}

MultiPoly compose(const MultiPoly& f, const std::vector<MultiPoly>& images) {
  if (images.empty()) fail(ErrorCode::InvalidInput, "compose needs images");
  const RingPtr& target = ring_of(images[0]);
  MultiPoly acc = poly_zero(target);
  std::vector<std::map<std::int32_t, MultiPoly>> cache(images.size());
  auto power = [&](std::size_t i, std::int32_t e) -> const MultiPoly& {
    auto it = cache[i].find(e);
    if (it != cache[i].end()) return it->second;
    MultiPoly r = images[i].pow(static_cast<std::uint64_t>(e));
    return cache[i].emplace(e, std::move(r)).first->second;
  };
  for (const auto& t : f.terms()) {
    MultiPoly term = poly_const(target, t.coeff);
    for (std::size_t i = 0; i < images.size(); ++i)
      if (t.mono[i] != 0) term = term * power(i, t.mono[i]);
    acc += term;
  }
  return acc;
}

MultiPoly translate(const MultiPoly& f, const std::vector<Coefficient>& shift) {
  const RingPtr& ring = ring_of(f);
  std::vector<MultiPoly> images;
  bool trivial = true;
  for (std::size_t i = 0; i < ring->nvars(); ++i) {
    Coefficient a = i < shift.size() ? shift[i] : Coefficient::from_int(ring->field(), 0);
    if (!a.is_zero()) trivial = false;
    images.push_back(poly_var(ring, i) + poly_const(ring, a));
  }
  if (trivial) return f;
  return compose(f, images);
}

MultiPoly change_ring(const MultiPoly& f, const RingPtr& target) {
  const RingPtr& src = ring_of(f);
  if (src == target) return f;
  std::vector<std::size_t> map(src ? src->nvars() : 0);
  for (std::size_t i = 0; i < map.size(); ++i) {
    auto j = target->var_index(src->vars()[i]);
    map[i] = j ? *j : kMaxVars;
  }
  for (const auto& t : f.terms())
    for (std::size_t i = 0; i < map.size(); ++i)
      if (t.mono[i] != 0 && map[i] == kMaxVars)
        fail(ErrorCode::InvalidInput, "variable " + src->vars()[i] + " missing from target ring");
  const FieldPtr& tf = target->field();
  return f.transform(
      RingRef{target}, [&](const Coefficient& c) { return c.lift_to(tf); },
      [&](const Monomial& m) {
        Monomial r;
        for (std::size_t i = 0; i < map.size(); ++i)
          if (m[i] != 0) r[map[i]] = m[i];
        return r;
      });
}

MultiPoly specialize_param(const MultiPoly& f, const RingPtr& target, const std::string& name,
                           const Coefficient& value) {
  MultiPoly moved = f.transform(
      RingRef{target}, [&](const Coefficient& c) { return c.specialize(target->field(), name, value); },
      [](const Monomial& m) { return m; });
  return moved;
}

MultiPoly poly_pth_root(const MultiPoly& f) {
  const std::int32_t p = static_cast<std::int32_t>(ring_of(f)->p());
  for (const auto& t : f.terms())
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (t.mono[i] % p != 0) fail(ErrorCode::Internal, "polynomial is not a p-th power");
  return f.transform(
      f.context(), [](const Coefficient& c) { return c.pth_root(); },
      [p](const Monomial& m) {
        Monomial r;
        for (std::size_t i = 0; i < kMaxVars; ++i) r[i] = m[i] / p;
        return r;
      });
}

std::vector<std::string> params_used(const MultiPoly& f) {
  const auto& field = ring_of(f)->field();
  std::set<std::size_t> used;
  for (const auto& t : f.terms()) {
    if (t.coeff.is_constant()) continue;
    for (const auto& part : {t.coeff.numerator(), t.coeff.denominator()})
      for (const auto& pt : part.terms())
        for (std::size_t i = 0; i < field->nparams(); ++i)
          if (pt.mono[i] != 0) used.insert(i);
  }
  std::vector<std::string> out;
  for (auto i : used) out.push_back(field->params()[i]);
  return out;
}

// ---------------------------------------------------------------- RationalFunction

RationalFunction::RationalFunction(MultiPoly num) : num_(std::move(num)) {
  den_ = poly_int(ring_of(num_), 1);
}

RationalFunction::RationalFunction(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void RationalFunction::normalize() {
  if (den_.is_zero()) fail(ErrorCode::DivisionByZero, "rational function with zero denominator");
  const RingPtr& ring = ring_of(den_);
  if (num_.is_zero()) {
    num_ = poly_zero(ring);
    den_ = poly_int(ring, 1);
    return;
  }
  if (!den_.is_constant()) {
    MultiPoly g = poly_gcd(num_, den_);
    if (!g.is_one()) {
      num_ = *num_.divide_exact(g);
      den_ = *den_.divide_exact(g);
    }
  }
  const Coefficient lc = den_.leading_coeff();
  if (!lc.is_one()) {
    const Coefficient inv = lc.inverse();
    num_ = num_.scale(inv);
    den_ = den_.scale(inv);
  }
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  if (den_ == o.den_) return RationalFunction(num_ + o.num_, den_);
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -num_;
  return r;
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const {
  if (o.is_zero()) fail(ErrorCode::DivisionByZero, "division by zero rational function");
  return RationalFunction(num_ * o.den_, den_ * o.num_);
}

RationalFunction RationalFunction::derivative(std::size_t var) const {
  return RationalFunction(num_.derivative(var) * den_ - num_ * den_.derivative(var), den_ * den_);
}

RationalFunction RationalFunction::compose(const std::vector<RationalFunction>& images) const {
  // Common denominator of the images keeps the computation polynomial.
  const RingPtr& target = images.at(0).ring();
  MultiPoly common = poly_int(target, 1);
  for (const auto& im : images)
    if (!im.den().is_constant()) {
      MultiPoly g = poly_gcd(common, im.den());
      common = *(common * im.den()).divide_exact(g);
    }
  std::vector<MultiPoly> scaled;
  for (const auto& im : images) scaled.push_back(im.num() * *common.divide_exact(im.den()));
  // f(a/c) = F(a, c) / c^deg where F is the homogenization of f.
  auto homog = [&](const MultiPoly& f, std::int64_t deg) {
    MultiPoly acc = poly_zero(target);
    std::vector<std::map<std::int32_t, MultiPoly>> cache(scaled.size());
    std::map<std::int64_t, MultiPoly> ccache;
    for (const auto& t : f.terms()) {
      MultiPoly term = poly_const(target, t.coeff);
      for (std::size_t i = 0; i < scaled.size(); ++i) {
        const auto e = t.mono[i];
        if (e == 0) continue;
        auto it = cache[i].find(e);
        if (it == cache[i].end()) it = cache[i].emplace(e, scaled[i].pow(e)).first;
        term = term * it->second;
      }
      const auto rest = deg - t.mono.degree();
      if (rest > 0) {
        auto it = ccache.find(rest);
        if (it == ccache.end()) it = ccache.emplace(rest, common.pow(rest)).first;
        term = term * it->second;
      }
      acc += term;
    }
    return acc;
  };
  const std::int64_t dn = std::max<std::int64_t>(num_.total_degree(), 0);
  const std::int64_t dd = std::max<std::int64_t>(den_.total_degree(), 0);
  MultiPoly n = homog(num_, dn);
  MultiPoly d = homog(den_, dd);
  if (dn > dd)
    d = d * common.pow(dn - dd);
  else if (dd > dn)
    n = n * common.pow(dd - dn);
  return RationalFunction(n, d);
}

Coefficient RationalFunction::evaluate(const std::vector<Coefficient>& point) const {
  Coefficient d = ramlab::evaluate(den_, point);
  if (d.is_zero()) fail(ErrorCode::DivisionByZero, "rational function not defined at point");
  return ramlab::evaluate(num_, point) / d;
}

RationalFunction RationalFunction::change_ring(const RingPtr& target) const {
  return RationalFunction(ramlab::change_ring(num_, target), ramlab::change_ring(den_, target));
}

std::string RationalFunction::to_string() const {
  if (den_.is_one()) return ramlab::to_string(num_);
  std::string n = ramlab::to_string(num_);
  std::string d = ramlab::to_string(den_);
  if (num_.size() > 1 || n.find('/') != std::string::npos) n = "(" + n + ")";
  if (den_.size() > 1 || d.find_first_of("*^/") != std::string::npos) d = "(" + d + ")";
  return n + "/" + d;
}

}  // namespace ramlab
