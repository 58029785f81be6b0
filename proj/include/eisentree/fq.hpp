#pragma once

#include <cassert>
#include <cstdint>

#include "eisentree/base.hpp"

namespace eisentree {

/// Residue in the prime field F_q. Value is always kept in [0, q).
class Fq {
 public:
  Fq(uint32_t q, uint64_t value) : q_(q), v_(static_cast<uint32_t>(value % q)) {}

  uint32_t modulus() const { return q_; }
  uint32_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  Fq operator+(Fq o) const { return Fq(q_, uint64_t(v_) + o.v_); }
  Fq operator-(Fq o) const { return Fq(q_, uint64_t(v_) + q_ - o.v_); }
  Fq operator*(Fq o) const { return Fq(q_, uint64_t(v_) * o.v_); }
  Fq operator-() const { return Fq(q_, uint64_t(q_) - v_); }

  Fq inv() const {
    if (v_ == 0) throw std::domain_error("inverse of zero in F_q");
    return pow(static_cast<int64_t>(q_) - 2);
  }
  Fq operator/(Fq o) const { return *this * o.inv(); }

  Fq pow(int64_t e) const {
    if (e < 0) return inv().pow(-e);
    uint64_t r = 1, b = v_;
    while (e) {
      if (e & 1) r = r * b % q_;
      b = b * b % q_;
      e >>= 1;
    }
    return Fq(q_, r);
  }

  bool operator==(Fq o) const { return q_ == o.q_ && v_ == o.v_; }
  bool operator!=(Fq o) const { return !(*this == o); }

 private:
  uint32_t q_;
  uint32_t v_;
};

// Bare-residue helpers used by the inner loops; values must already be reduced.
inline uint32_t fq_add(uint32_t q, uint32_t a, uint32_t b) {
  uint32_t s = a + b;
  return s >= q ? s - q : s;
}
inline uint32_t fq_sub(uint32_t q, uint32_t a, uint32_t b) { return a >= b ? a - b : a + q - b; }
inline uint32_t fq_mul(uint32_t q, uint32_t a, uint32_t b) {
  return static_cast<uint32_t>(uint64_t(a) * b % q);
}
inline uint32_t fq_pow(uint32_t q, uint32_t a, int64_t e) { return Fq(q, a).pow(e).value(); }
inline uint32_t fq_inv(uint32_t q, uint32_t a) { return Fq(q, a).inv().value(); }

}  // namespace eisentree
