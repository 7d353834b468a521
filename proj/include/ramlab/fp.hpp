#pragma once

#include <cstdint>
#include <string>

#include "ramlab/errors.hpp"

namespace ramlab {

bool is_prime(std::uint64_t n);

// Element of the prime field F_p. The modulus travels with the value so that
// polynomial code can create constants without a separate context.
class Fp {
 public:
  Fp() = default;
  Fp(std::int64_t value, std::uint32_t p) : p_(p) {
    std::int64_t r = value % static_cast<std::int64_t>(p);
    if (r < 0) r += p;
    v_ = static_cast<std::uint32_t>(r);
  }

  std::uint32_t value() const { return v_; }
  std::uint32_t prime() const { return p_; }
  bool is_zero() const { return v_ == 0; }
  bool is_one() const { return v_ == 1; }

  Fp operator+(const Fp& o) const { return raw((v_ + o.v_) % p_); }
  Fp operator-(const Fp& o) const { return raw((v_ + p_ - o.v_) % p_); }
  Fp operator-() const { return raw((p_ - v_) % p_); }
  Fp operator*(const Fp& o) const {
    return raw(static_cast<std::uint32_t>(static_cast<std::uint64_t>(v_) * o.v_ % p_));
  }
  Fp operator/(const Fp& o) const { return *this * o.inverse(); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }

  Fp pow(std::uint64_t e) const {
    Fp base = *this;
    Fp acc = raw(1 % p_);
    while (e > 0) {
      if (e & 1) acc *= base;
      base *= base;
      e >>= 1;
    }
    return acc;
  }

  Fp inverse() const {
    if (v_ == 0) fail(ErrorCode::DivisionByZero, "inverse of zero in F_p");
    return pow(p_ - 2);
  }

  bool operator==(const Fp& o) const { return v_ == o.v_; }
  bool operator!=(const Fp& o) const { return v_ != o.v_; }

  // Symmetric representative, used for printing (-1 rather than p-1).
  std::int64_t signed_value() const {
    return v_ > p_ / 2 ? static_cast<std::int64_t>(v_) - p_ : v_;
  }

 private:
  Fp raw(std::uint32_t v) const {
    Fp r;
    r.v_ = v;
    r.p_ = p_;
    return r;
  }

  std::uint32_t v_ = 0;
  std::uint32_t p_ = 2;
};

}  // namespace ramlab
