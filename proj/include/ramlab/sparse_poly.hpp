#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ramlab/errors.hpp"
#include "ramlab/monomial.hpp"

namespace ramlab {

// Sparse multivariate polynomial over a field C. Terms are kept sorted in
// descending graded-lex order with no zero coefficients.
//
// Ctx supplies the coefficient field and variable count:
//   C zero() const; C one() const; C from_int(int64_t) const;
//   std::size_t nvars() const;
template <class C, class Ctx>
class SparsePoly {
 public:
  struct Term {
    Monomial mono;
    C coeff;
  };

  SparsePoly() = default;
  explicit SparsePoly(Ctx ctx) : ctx_(std::move(ctx)) {}
  SparsePoly(Ctx ctx, std::vector<Term> terms) : ctx_(std::move(ctx)), terms_(std::move(terms)) {
    normalize();
  }

  static SparsePoly constant(const Ctx& ctx, const C& c) {
    SparsePoly r(ctx);
    if (!c.is_zero()) r.terms_.push_back({Monomial(), c});
    return r;
  }
  static SparsePoly constant(const Ctx& ctx, std::int64_t c) { return constant(ctx, ctx.from_int(c)); }
  static SparsePoly variable(const Ctx& ctx, std::size_t i) {
    SparsePoly r(ctx);
    r.terms_.push_back({Monomial::var(i), ctx.one()});
    return r;
  }
  static SparsePoly monomial(const Ctx& ctx, const Monomial& m, const C& c) {
    SparsePoly r(ctx);
    if (!c.is_zero()) r.terms_.push_back({m, c});
    return r;
  }

  const Ctx& context() const { return ctx_; }
  std::size_t nvars() const { return ctx_.nvars(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  bool is_one() const { return is_constant() && !is_zero() && terms_[0].coeff == ctx_.one(); }

  const Term& leading() const {
    if (terms_.empty()) fail(ErrorCode::Internal, "leading term of zero polynomial");
    return terms_.front();
  }
  const Monomial& leading_monomial() const { return leading().mono; }
  const C& leading_coeff() const { return leading().coeff; }

  C coeff(const Monomial& m) const {
    for (const auto& t : terms_)
      if (t.mono == m) return t.coeff;
    return ctx_.zero();
  }
  C constant_term() const {
    if (!terms_.empty() && terms_.back().mono.is_one()) return terms_.back().coeff;
    return ctx_.zero();
  }

  std::int64_t total_degree() const { return terms_.empty() ? -1 : terms_.front().mono.degree(); }
  // Lowest total degree of a term; -1 for the zero polynomial.
  std::int64_t low_degree() const {
    if (terms_.empty()) return -1;
    std::int64_t d = terms_.front().mono.degree();
    for (const auto& t : terms_) d = std::min<std::int64_t>(d, t.mono.degree());
    return d;
  }
  std::int32_t degree_in(std::size_t i) const {
    std::int32_t d = terms_.empty() ? -1 : 0;
    for (const auto& t : terms_) d = std::max(d, t.mono[i]);
    return d;
  }
  bool involves(std::size_t i) const {
    for (const auto& t : terms_)
      if (t.mono[i] != 0) return true;
    return false;
  }

  SparsePoly operator-() const {
    SparsePoly r(ctx_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono, -t.coeff});
    return r;
  }

  SparsePoly operator+(const SparsePoly& o) const { return merge(o, false); }
  SparsePoly operator-(const SparsePoly& o) const { return merge(o, true); }

  SparsePoly operator*(const SparsePoly& o) const {
    if (is_zero() || o.is_zero()) return SparsePoly(ctx_);
    if (o.is_constant()) return scale(o.terms_[0].coeff);
    if (is_constant()) return o.scale(terms_[0].coeff);
    std::vector<Term> out;
    out.reserve(terms_.size() * o.terms_.size());
    for (const auto& a : terms_)
      for (const auto& b : o.terms_) out.push_back({a.mono * b.mono, a.coeff * b.coeff});
    return SparsePoly(ctx_, std::move(out));
  }

  SparsePoly& operator+=(const SparsePoly& o) { return *this = *this + o; }
  SparsePoly& operator-=(const SparsePoly& o) { return *this = *this - o; }
  SparsePoly& operator*=(const SparsePoly& o) { return *this = *this * o; }

  SparsePoly scale(const C& c) const {
    if (c.is_zero()) return SparsePoly(ctx_);
    SparsePoly r(ctx_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) {
      C v = t.coeff * c;
      if (!v.is_zero()) r.terms_.push_back({t.mono, std::move(v)});
    }
    return r;
  }

  SparsePoly mul_monomial(const Monomial& m) const {
    SparsePoly r(ctx_);
    r.terms_.reserve(terms_.size());
    for (const auto& t : terms_) r.terms_.push_back({t.mono * m, t.coeff});
    return r;
  }

  SparsePoly pow(std::uint64_t e) const {
    SparsePoly acc = constant(ctx_, ctx_.one());
    SparsePoly base = *this;
    while (e > 0) {
      if (e & 1) acc = acc * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return acc;
  }

  SparsePoly derivative(std::size_t i) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      if (t.mono[i] == 0) continue;
      C c = t.coeff * ctx_.from_int(t.mono[i]);
      if (c.is_zero()) continue;
      Monomial m = t.mono;
      m[i] -= 1;
      out.push_back({m, std::move(c)});
    }
    return SparsePoly(ctx_, std::move(out));
  }

  SparsePoly monic() const {
    if (is_zero()) return *this;
    return scale(ctx_.one() / leading_coeff());
  }

  // Quotient and remainder under graded-lex division by a single divisor.
  std::pair<SparsePoly, SparsePoly> divmod(const SparsePoly& d) const {
    if (d.is_zero()) fail(ErrorCode::DivisionByZero, "polynomial division by zero");
    SparsePoly q(ctx_), r(ctx_), cur = *this;
    const Monomial& lm = d.leading_monomial();
    C inv = ctx_.one() / d.leading_coeff();
    std::vector<Term> qt, rt;
    while (!cur.is_zero()) {
      const Term& lt = cur.terms_.front();
      if (lm.divides(lt.mono)) {
        Monomial m = lt.mono / lm;
        C c = lt.coeff * inv;
        qt.push_back({m, c});
        cur = cur - d.mul_monomial(m).scale(c);
      } else {
        rt.push_back(lt);
        cur.terms_.erase(cur.terms_.begin());
      }
    }
    return {SparsePoly(ctx_, std::move(qt)), SparsePoly(ctx_, std::move(rt))};
  }

  std::optional<SparsePoly> divide_exact(const SparsePoly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) return std::nullopt;
    return q;
  }

  // Coefficients with respect to variable i, as polynomials not involving i.
  std::map<std::int32_t, SparsePoly> coefficients_in(std::size_t i) const {
    std::map<std::int32_t, std::vector<Term>> buckets;
    for (const auto& t : terms_) {
      Monomial m = t.mono;
      std::int32_t e = m[i];
      m[i] = 0;
      buckets[e].push_back({m, t.coeff});
    }
    std::map<std::int32_t, SparsePoly> out;
    for (auto& [e, ts] : buckets) out.emplace(e, SparsePoly(ctx_, std::move(ts)));
    return out;
  }

  // Sum of terms whose total degree lies in [lo, hi).
  SparsePoly degree_slice(std::int64_t lo, std::int64_t hi) const {
    SparsePoly r(ctx_);
    for (const auto& t : terms_) {
      auto d = t.mono.degree();
      if (d >= lo && d < hi) r.terms_.push_back(t);
    }
    return r;
  }

  bool operator==(const SparsePoly& o) const {
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].mono != o.terms_[i].mono || !(terms_[i].coeff == o.terms_[i].coeff)) return false;
    return true;
  }
  bool operator!=(const SparsePoly& o) const { return !(*this == o); }

  // Rebuild with a different context, mapping each coefficient and monomial.
  template <class Ctx2, class MapCoeff, class MapMono>
  auto transform(const Ctx2& ctx2, MapCoeff&& fc, MapMono&& fm) const {
    using C2 = decltype(fc(std::declval<const C&>()));
    std::vector<typename SparsePoly<C2, Ctx2>::Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({fm(t.mono), fc(t.coeff)});
    return SparsePoly<C2, Ctx2>(ctx2, std::move(out));
  }

 private:
  void normalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return grlex_greater(a.mono, b.mono); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!out.empty() && out.back().mono == t.mono) {
        out.back().coeff = out.back().coeff + t.coeff;
      } else {
        if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
        out.push_back(std::move(t));
      }
    }
    if (!out.empty() && out.back().coeff.is_zero()) out.pop_back();
    terms_ = std::move(out);
  }

  SparsePoly merge(const SparsePoly& o, bool subtract) const {
    SparsePoly r(ctx_.nvars() >= o.ctx_.nvars() ? ctx_ : o.ctx_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() || j < o.terms_.size()) {
      if (j == o.terms_.size() ||
          (i < terms_.size() && grlex_greater(terms_[i].mono, o.terms_[j].mono))) {
        r.terms_.push_back(terms_[i++]);
      } else if (i == terms_.size() || grlex_greater(o.terms_[j].mono, terms_[i].mono)) {
        const auto& t = o.terms_[j++];
        r.terms_.push_back({t.mono, subtract ? -t.coeff : t.coeff});
      } else {
        C c = subtract ? terms_[i].coeff - o.terms_[j].coeff : terms_[i].coeff + o.terms_[j].coeff;
        if (!c.is_zero()) r.terms_.push_back({terms_[i].mono, std::move(c)});
        ++i;
        ++j;
      }
    }
    return r;
  }

  Ctx ctx_{};
  std::vector<Term> terms_;
};

}  // namespace ramlab
