#include "ramlab/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace ramlab {

namespace {

int add_prec(int a, int b) {
  if (a == LaurentGerm::kExact || b == LaurentGerm::kExact) return LaurentGerm::kExact;
  return a + b;
}

}  // namespace

LaurentGerm LaurentGerm::zero(FieldPtr field, int precision) {
  LaurentGerm g;
  g.field_ = std::move(field);
  g.prec_ = precision;
  return g;
}

LaurentGerm LaurentGerm::constant(const Coefficient& c, int precision) { return monomial(c, 0, precision); }

LaurentGerm LaurentGerm::monomial(const Coefficient& c, int exponent, int precision) {
  return from_coeffs(c.field(), exponent, {c}, precision);
}

LaurentGerm LaurentGerm::from_coeffs(FieldPtr field, int low, std::vector<Coefficient> coeffs, int precision) {
  LaurentGerm g;
  g.field_ = std::move(field);
  g.val_ = low;
  g.coeffs_ = std::move(coeffs);
  g.prec_ = precision;
  if (precision != kExact) {
    const int keep = std::max(0, precision - low);
    if (static_cast<int>(g.coeffs_.size()) > keep) g.coeffs_.resize(keep);
  }
  g.trim();
  return g;
}

LaurentGerm LaurentGerm::from_poly(const MultiPoly& f) {
  const FieldPtr& field = ring_of(f)->field();
  if (f.is_zero()) return zero(field);
  int top = 0;
  for (const auto& t : f.terms()) top = std::max(top, static_cast<int>(t.mono[0]));
  std::vector<Coefficient> c(top + 1, Coefficient::from_int(field, 0));
  for (const auto& t : f.terms()) {
    for (std::size_t i = 1; i < kMaxVars; ++i)
      if (t.mono[i] != 0) fail(ErrorCode::InvalidInput, "from_poly expects a univariate polynomial");
    c[t.mono[0]] = c[t.mono[0]] + t.coeff;
  }
  return from_coeffs(field, 0, std::move(c));
}

void LaurentGerm::trim() {
  std::size_t lead = 0;
  while (lead < coeffs_.size() && coeffs_[lead].is_zero()) ++lead;
  if (lead == coeffs_.size()) {
    coeffs_.clear();
    val_ = 0;
    return;
  }
  if (lead > 0) {
    coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(lead));
    val_ += static_cast<int>(lead);
  }
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Coefficient LaurentGerm::coeff(int exponent) const {
  if (exponent >= prec_) fail(ErrorCode::PrecisionExhausted, "coefficient beyond germ precision");
  if (coeffs_.empty() || exponent < val_ || exponent > top_exponent()) return Coefficient::from_int(field_, 0);
  return coeffs_[static_cast<std::size_t>(exponent - val_)];
}

LaurentGerm LaurentGerm::operator+(const LaurentGerm& o) const {
  const FieldPtr& field = field_ ? field_ : o.field_;
  const int prec = std::min(prec_, o.prec_);
  if (is_zero() && o.is_zero()) return zero(field, prec);
  if (is_zero()) return o.truncate(prec);
  if (o.is_zero()) return truncate(prec);
  const int lo = std::min(val_, o.val_);
  int hi = std::max(top_exponent(), o.top_exponent());
  if (prec != kExact) hi = std::min(hi, prec - 1);
  if (hi < lo) return zero(field, prec);
  std::vector<Coefficient> c(static_cast<std::size_t>(hi - lo + 1), Coefficient::from_int(field, 0));
  for (int e = val_; e <= std::min(top_exponent(), hi); ++e) c[e - lo] = coeffs_[e - val_];
  for (int e = o.val_; e <= std::min(o.top_exponent(), hi); ++e) c[e - lo] = c[e - lo] + o.coeffs_[e - o.val_];
  return from_coeffs(field, lo, std::move(c), prec);
}

LaurentGerm LaurentGerm::operator-() const {
  LaurentGerm r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

LaurentGerm LaurentGerm::operator-(const LaurentGerm& o) const { return *this + (-o); }

LaurentGerm LaurentGerm::operator*(const LaurentGerm& o) const {
  const FieldPtr& field = field_ ? field_ : o.field_;
  if (is_zero() || o.is_zero()) {
    if ((is_zero() && is_exact()) || (o.is_zero() && o.is_exact())) return zero(field);
    int prec;
    if (is_zero() && o.is_zero())
      prec = prec_ + o.prec_;
    else if (is_zero())
      prec = prec_ + o.val_;
    else
      prec = o.prec_ + val_;
    return zero(field, prec);
  }
  const int prec = std::min(add_prec(prec_, o.val_), add_prec(o.prec_, val_));
  const int lo = val_ + o.val_;
  int hi = top_exponent() + o.top_exponent();
  if (prec != kExact) hi = std::min(hi, prec - 1);
  if (hi < lo) return zero(field, prec);
  std::vector<Coefficient> c(static_cast<std::size_t>(hi - lo + 1), Coefficient::from_int(field, 0));
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const int ei = val_ + static_cast<int>(i);
    if (ei + o.val_ > hi) break;
    if (coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) {
      const int e = ei + o.val_ + static_cast<int>(j);
      if (e > hi) break;
      if (o.coeffs_[j].is_zero()) continue;
      c[e - lo] = c[e - lo] + coeffs_[i] * o.coeffs_[j];
    }
  }
  return from_coeffs(field, lo, std::move(c), prec);
}

LaurentGerm LaurentGerm::scale(const Coefficient& k) const {
  if (k.is_zero()) return zero(field_, prec_ == kExact ? kExact : prec_);
  LaurentGerm r = *this;
  for (auto& c : r.coeffs_) c = c * k;
  return r;
}

LaurentGerm LaurentGerm::shift(int k) const {
  LaurentGerm r = *this;
  r.val_ += k;
  if (r.prec_ != kExact) r.prec_ += k;
  return r;
}

LaurentGerm LaurentGerm::truncate(int precision) const {
  if (precision >= prec_) return *this;
  LaurentGerm r = *this;
  r.prec_ = precision;
  if (!r.coeffs_.empty()) {
    const int keep = std::max(0, precision - r.val_);
    if (static_cast<int>(r.coeffs_.size()) > keep) r.coeffs_.resize(keep);
    r.trim();
  }
  return r;
}

LaurentGerm LaurentGerm::pow(int e, int terms) const {
  if (e < 0) return series_invert(*this, terms).pow(-e, terms);
  LaurentGerm acc = constant(Coefficient::from_int(field_, 1));
  LaurentGerm base = *this;
  while (e > 0) {
    if (e & 1) acc = acc * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return acc;
}

LaurentGerm LaurentGerm::with_coeff(int exponent, const Coefficient& c) const {
  if (exponent >= prec_) fail(ErrorCode::PrecisionExhausted, "cannot set coefficient beyond precision");
  LaurentGerm delta = monomial(c - coeff(exponent), exponent);
  return *this + delta;
}

LaurentGerm LaurentGerm::polar_part() const {
  if (is_zero() || val_ >= 0) return zero(field_, std::min(prec_, 0));
  std::vector<Coefficient> c;
  for (int e = val_; e < 0 && e <= top_exponent(); ++e) c.push_back(coeffs_[e - val_]);
  return from_coeffs(field_, val_, std::move(c), prec_ >= 0 ? kExact : prec_);
}

bool LaurentGerm::same_terms(const LaurentGerm& o) const {
  if (coeffs_.size() != o.coeffs_.size()) return false;
  if (coeffs_.empty()) return true;
  if (val_ != o.val_) return false;
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    if (coeffs_[i] != o.coeffs_[i]) return false;
  return true;
}

std::string LaurentGerm::to_string(const std::string& u) const {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    const auto& c = coeffs_[i];
    if (c.is_zero()) continue;
    const int e = val_ + static_cast<int>(i);
    std::string cs = c.to_string();
    if (c.is_compound()) cs = "(" + cs + ")";
    bool neg = !cs.empty() && cs[0] == '-';
    if (neg) cs = cs.substr(1);
    std::string mono = e == 0 ? "" : (e == 1 ? u : u + "^" + (e < 0 ? "(" + std::to_string(e) + ")" : std::to_string(e)));
    std::string term;
    if (mono.empty())
      term = cs;
    else if (cs == "1")
      term = mono;
    else
      term = cs + "*" + mono;
    if (first)
      out << (neg ? "-" : "") << term;
    else
      out << (neg ? " - " : " + ") << term;
    first = false;
  }
  if (first) out << "0";
  if (prec_ != kExact) out << " + O(" << u << "^" << prec_ << ")";
  return out.str();
}

LaurentGerm LaurentGerm::lift_to(const FieldPtr& field) const {
  LaurentGerm r = *this;
  r.field_ = field;
  for (auto& c : r.coeffs_) c = c.lift_to(field);
  return r;
}

LaurentGerm series_invert(const LaurentGerm& f, int terms) {
  if (f.is_zero()) fail(ErrorCode::ZeroGerm, "cannot invert a germ that vanishes to its precision");
  const int v = f.valuation();
  const FieldPtr& field = f.field();
  if (f.is_exact() && f.top_exponent() == v)
    return LaurentGerm::monomial(f.leading_coeff().inverse(), -v);
  const int rel = f.is_exact() ? terms : f.precision() - v;
  const Coefficient inv0 = f.leading_coeff().inverse();
  std::vector<Coefficient> c(f.top_exponent() - v + 1, Coefficient::from_int(field, 0));
  for (int e = v; e <= f.top_exponent(); ++e) c[e - v] = f.coeff(e);
  std::vector<Coefficient> b;
  b.reserve(rel);
  b.push_back(inv0);
  for (int n = 1; n < rel; ++n) {
    Coefficient acc = Coefficient::from_int(field, 0);
    const int lim = std::min<int>(n, static_cast<int>(c.size()) - 1);
    for (int i = 1; i <= lim; ++i)
      if (!c[i].is_zero() && !b[n - i].is_zero()) acc = acc + c[i] * b[n - i];
    b.push_back(-(acc * inv0));
  }
  return LaurentGerm::from_coeffs(field, -v, std::move(b), -v + rel);
}

LaurentGerm substitute_unchecked(const MultiPoly& f, const std::vector<LaurentGerm>& assignment) {
  const RingPtr& ring = ring_of(f);
  const FieldPtr& field = assignment.empty() ? ring->field() : assignment[0].field();
  if (assignment.size() < ring->nvars()) fail(ErrorCode::InvalidInput, "substitute: every variable must be assigned");
  LaurentGerm acc = LaurentGerm::zero(field);
  std::vector<std::map<int, LaurentGerm>> cache(ring->nvars());
  for (const auto& t : f.terms()) {
    LaurentGerm term = LaurentGerm::constant(t.coeff.lift_to(field));
    for (std::size_t i = 0; i < ring->nvars(); ++i) {
      const int e = t.mono[i];
      if (e == 0) continue;
      auto it = cache[i].find(e);
      if (it == cache[i].end()) it = cache[i].emplace(e, assignment[i].pow(e)).first;
      term = term * it->second;
    }
    acc = acc + term;
  }
  return acc;
}

LaurentGerm substitute(const MultiPoly& f, const std::vector<LaurentGerm>& assignment) {
  LaurentGerm r = substitute_unchecked(f, assignment);
  if (r.is_zero() && !r.is_exact())
    fail(ErrorCode::PrecisionExhausted, "substitution vanishes to precision " + std::to_string(r.precision()));
  return r;
}

LaurentGerm substitute(const MultiPoly& f, const std::map<std::string, LaurentGerm>& assignment) {
  const RingPtr& ring = ring_of(f);
  std::vector<LaurentGerm> v;
  for (const auto& name : ring->vars()) {
    auto it = assignment.find(name);
    if (it == assignment.end()) fail(ErrorCode::InvalidInput, "substitute: variable " + name + " not assigned");
    v.push_back(it->second);
  }
  return substitute(f, v);
}

LaurentGerm substitute(const RationalFunction& g, const std::vector<LaurentGerm>& assignment, int terms) {
  LaurentGerm n = substitute_unchecked(g.num(), assignment);
  LaurentGerm d = substitute(g.den(), assignment);
  return n * series_invert(d, terms);
}

}  // namespace ramlab
