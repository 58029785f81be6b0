#pragma once

#include <complex>
#include <numbers>
#include <sstream>
#include <vector>

#include "eisentree/base.hpp"

namespace eisentree {

/// Exact element of Z[zeta_q] (or Q[zeta_q]) over the power basis
/// 1, zeta, ..., zeta^{q-2}. The relation 1 + zeta + ... + zeta^{q-1} = 0 is
/// applied on construction, so each value has a unique coefficient vector.
template <class Int>
class Cyclotomic {
 public:
  explicit Cyclotomic(uint32_t q) : q_(q), c_(q - 1) {}

  static Cyclotomic zero(uint32_t q) { return Cyclotomic(q); }
  static Cyclotomic integer(uint32_t q, Int n) {
    Cyclotomic r(q);
    r.c_[0] = std::move(n);
    return r;
  }
  static Cyclotomic one(uint32_t q) { return integer(q, 1); }

  /// zeta_q^k, any integer k.
  static Cyclotomic root_of_unity(uint32_t q, int64_t k) {
    Cyclotomic r(q);
    int64_t m = k % int64_t(q);
    if (m < 0) m += q;
    if (m <= int64_t(q) - 2) {
      r.c_[size_t(m)] = 1;
    } else {
      for (auto& x : r.c_) x = -1;  // zeta^{q-1} = -(1 + zeta + ... + zeta^{q-2})
    }
    return r;
  }

  /// From raw exponent counts n_k (k = 0..q-1): sum n_k zeta^k, reduced.
  static Cyclotomic from_exponent_counts(uint32_t q, const std::vector<Int>& counts) {
    Cyclotomic r(q);
    for (uint32_t k = 0; k + 1 < q; ++k) r.c_[k] = counts[k] - counts[q - 1];
    return r;
  }

  uint32_t modulus() const { return q_; }
  const std::vector<Int>& coeffs() const { return c_; }

  bool is_zero() const {
    for (const auto& x : c_)
      if (x != 0) return false;
    return true;
  }
  bool is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }
  /// The rational value, valid only when is_rational().
  Int rational_value() const {
    if (!is_rational()) throw std::domain_error("cyclotomic value is not rational");
    return c_[0];
  }

  Cyclotomic operator+(const Cyclotomic& o) const {
    Cyclotomic r(q_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
  }
  Cyclotomic operator-(const Cyclotomic& o) const {
    Cyclotomic r(q_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
  }
  Cyclotomic operator-() const {
    Cyclotomic r(q_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = -c_[i];
    return r;
  }
  Cyclotomic operator*(const Cyclotomic& o) const {
    std::vector<Int> raw(q_, Int(0));
    for (uint32_t i = 0; i + 1 < q_; ++i) {
      if (c_[i] == 0) continue;
      for (uint32_t j = 0; j + 1 < q_; ++j) {
        if (o.c_[j] == 0) continue;
        raw[(i + j) % q_] += c_[i] * o.c_[j];
      }
    }
    return from_exponent_counts(q_, raw);
  }
  Cyclotomic operator*(const Int& s) const {
    Cyclotomic r(q_);
    for (size_t i = 0; i < c_.size(); ++i) r.c_[i] = c_[i] * s;
    return r;
  }

  /// Complex conjugation: zeta^k -> zeta^{-k}.
  Cyclotomic conj() const {
    std::vector<Int> raw(q_, Int(0));
    for (uint32_t k = 0; k + 1 < q_; ++k) raw[(q_ - k) % q_] = c_[k];
    return from_exponent_counts(q_, raw);
  }

  bool operator==(const Cyclotomic& o) const { return q_ == o.q_ && c_ == o.c_; }
  bool operator!=(const Cyclotomic& o) const { return !(*this == o); }

  std::complex<double> to_complex() const {
    std::complex<double> s{0.0, 0.0};
    for (uint32_t k = 0; k + 1 < q_; ++k) {
      if (c_[k] == 0) continue;
      const double ang = 2.0 * std::numbers::pi * k / double(q_);
      s += static_cast<double>(c_[k]) * std::complex<double>{std::cos(ang), std::sin(ang)};
    }
    return s;
  }

  std::string to_string() const {
    std::ostringstream os;
    bool first = true;
    for (uint32_t k = 0; k + 1 < q_; ++k) {
      if (c_[k] == 0) continue;
      if (!first) os << "+";
      first = false;
      os << c_[k];
      if (k >= 1) os << "*z^" << k;
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  uint32_t q_;
  std::vector<Int> c_;
};

using CycInt = Cyclotomic<BigInt>;
using CycRat = Cyclotomic<Rational>;

inline CycRat to_rational_cyclotomic(const CycInt& x) {
  std::vector<Rational> counts;
  for (const auto& v : x.coeffs()) counts.emplace_back(v);
  counts.emplace_back(0);
  return CycRat::from_exponent_counts(x.modulus(), counts);
}

inline CycRat divide_exact(const CycInt& num, const BigInt& den) {
  std::vector<Rational> counts;
  for (const auto& v : num.coeffs()) counts.emplace_back(Rational(v) / Rational(den));
  counts.emplace_back(0);
  return CycRat::from_exponent_counts(num.modulus(), counts);
}

}  // namespace eisentree
