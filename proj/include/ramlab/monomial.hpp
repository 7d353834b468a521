#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace ramlab {

inline constexpr std::size_t kMaxVars = 8;

// Exponent vector with a fixed inline capacity. Unused slots stay zero so
// comparisons can ignore the declared variable count.
class Monomial {
 public:
  Monomial() { e_.fill(0); }

  static Monomial var(std::size_t i, std::int32_t power = 1) {
    Monomial m;
    m.e_[i] = power;
    return m;
  }

  std::int32_t operator[](std::size_t i) const { return e_[i]; }
  std::int32_t& operator[](std::size_t i) { return e_[i]; }

  std::int64_t degree() const {
    std::int64_t d = 0;
    for (auto v : e_) d += v;
    return d;
  }

  bool is_one() const {
    for (auto v : e_)
      if (v != 0) return false;
    return true;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e_[i] = e_[i] + o.e_[i];
    return r;
  }

  // Caller guarantees o divides *this.
  Monomial operator/(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e_[i] = e_[i] - o.e_[i];
    return r;
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  bool coprime(const Monomial& o) const {
    for (std::size_t i = 0; i < kMaxVars; ++i)
      if (e_[i] != 0 && o.e_[i] != 0) return false;
    return true;
  }

  Monomial lcm(const Monomial& o) const {
    Monomial r;
    for (std::size_t i = 0; i < kMaxVars; ++i) r.e_[i] = e_[i] > o.e_[i] ? e_[i] : o.e_[i];
    return r;
  }

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return e_ != o.e_; }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ull;
    for (auto v : e_) h = (h ^ static_cast<std::size_t>(v)) * 1099511628211ull;
    return h;
  }

 private:
  std::array<std::int32_t, kMaxVars> e_;
};

// Graded lex with variable 0 largest.
inline bool grlex_greater(const Monomial& a, const Monomial& b) {
  auto da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

}  // namespace ramlab
