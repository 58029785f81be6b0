#pragma once

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "eisentree/base.hpp"

namespace eisentree {

/// Laurent polynomial in a second formal unit y (spans negative exponents),
/// with exact rational coefficients. Used as the coefficient ring when a
/// Dirichlet identity carries an auxiliary parameter y = q^nu.
class YPoly {
 public:
  YPoly() = default;
  explicit YPoly(Rational c) { if (c != 0) c_[0] = std::move(c); }

  static YPoly monomial(Rational c, int e) {
    YPoly r;
    if (c != 0) r.c_[e] = std::move(c);
    return r;
  }
  static YPoly one() { return YPoly(Rational(1)); }

  bool is_zero() const { return c_.empty(); }
  const std::map<int, Rational>& terms() const { return c_; }

  YPoly operator+(const YPoly& o) const {
    YPoly r = *this;
    for (const auto& [e, c] : o.c_) {
      auto it = r.c_.find(e);
      if (it == r.c_.end()) {
        r.c_[e] = c;
      } else {
        it->second += c;
        if (it->second == 0) r.c_.erase(it);
      }
    }
    return r;
  }
  YPoly operator-(const YPoly& o) const { return *this + (o * Rational(-1)); }
  YPoly operator*(const Rational& s) const {
    YPoly r;
    if (s == 0) return r;
    for (const auto& [e, c] : c_) r.c_[e] = c * s;
    return r;
  }
  YPoly operator*(const YPoly& o) const {
    YPoly r;
    for (const auto& [e1, c1] : c_)
      for (const auto& [e2, c2] : o.c_) {
        auto& slot = r.c_[e1 + e2];
        slot += c1 * c2;
      }
    for (auto it = r.c_.begin(); it != r.c_.end();)
      it = it->second == 0 ? r.c_.erase(it) : std::next(it);
    return r;
  }

  /// Inverse exists in the Laurent-polynomial ring only for monomials.
  YPoly inverse() const {
    if (c_.size() != 1) throw std::domain_error("YPoly inverse requires a monomial");
    const auto& [e, c] = *c_.begin();
    return monomial(Rational(1) / c, -e);
  }

  bool operator==(const YPoly& o) const { return c_ == o.c_; }
  bool operator!=(const YPoly& o) const { return !(*this == o); }

  std::string to_string() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : c_) {
      if (!first) os << "+";
      first = false;
      os << "(" << c.str() << ")";
      if (e != 0) os << "*y^" << e;
    }
    return os.str();
  }

 private:
  std::map<int, Rational> c_;
};

inline Rational coef_zero(const Rational&) { return Rational(0); }
inline Rational coef_one(const Rational&) { return Rational(1); }
inline bool coef_is_zero(const Rational& c) { return c == 0; }
inline Rational coef_inverse(const Rational& c) {
  if (c == 0) throw std::domain_error("inverse of zero coefficient");
  return Rational(1) / c;
}
inline std::string coef_str(const Rational& c) { return c.str(); }

inline YPoly coef_zero(const YPoly&) { return YPoly(); }
inline YPoly coef_one(const YPoly&) { return YPoly::one(); }
inline bool coef_is_zero(const YPoly& c) { return c.is_zero(); }
inline YPoly coef_inverse(const YPoly& c) { return c.inverse(); }
inline std::string coef_str(const YPoly& c) { return c.to_string(); }

/// Truncated formal power series in u (the carrier for q^{-s}), exact and
/// closed at truncation order N: every operation returns a series with the
/// same horizon (the min, when they differ).
template <class C>
class USeries {
 public:
  explicit USeries(int trunc) : trunc_(trunc), c_(trunc + 1) {}
  USeries(int trunc, std::vector<C> coeffs) : trunc_(trunc), c_(std::move(coeffs)) {
    c_.resize(trunc + 1, zero());
  }

  static USeries monomial(int trunc, const C& c, int e) {
    USeries r(trunc);
    if (e <= trunc) r.c_[e] = c;
    return r;
  }
  static USeries constant(int trunc, const C& c) { return monomial(trunc, c, 0); }

  int trunc() const { return trunc_; }
  const C& operator[](int i) const { return c_[i]; }
  C& at(int i) { return c_[i]; }
  const std::vector<C>& coeffs() const { return c_; }

  USeries operator+(const USeries& o) const {
    USeries r(std::min(trunc_, o.trunc_));
    for (int i = 0; i <= r.trunc_; ++i) r.c_[i] = c_[i] + o.c_[i];
    return r;
  }
  USeries operator-(const USeries& o) const {
    USeries r(std::min(trunc_, o.trunc_));
    for (int i = 0; i <= r.trunc_; ++i) r.c_[i] = c_[i] - o.c_[i];
    return r;
  }
  USeries operator*(const USeries& o) const {
    USeries r(std::min(trunc_, o.trunc_));
    for (int i = 0; i <= r.trunc_; ++i) {
      C acc = zero();
      for (int j = 0; j <= i; ++j) acc = acc + c_[j] * o.c_[i - j];
      r.c_[i] = acc;
    }
    return r;
  }
  USeries operator*(const C& s) const {
    USeries r(trunc_);
    for (int i = 0; i <= trunc_; ++i) r.c_[i] = c_[i] * s;
    return r;
  }

  /// Multiplicative inverse; requires an invertible constant term.
  USeries inverse() const {
    USeries r(trunc_);
    const C c0inv = coef_inverse(c_[0]);
    r.c_[0] = c0inv;
    for (int k = 1; k <= trunc_; ++k) {
      C acc = zero();
      for (int j = 1; j <= k; ++j) acc = acc + c_[j] * r.c_[k - j];
      r.c_[k] = (zero() - acc) * c0inv;
    }
    return r;
  }
  USeries operator/(const USeries& o) const { return *this * o.inverse(); }

  bool operator==(const USeries& o) const { return trunc_ == o.trunc_ && c_ == o.c_; }
  bool operator!=(const USeries& o) const { return !(*this == o); }

  /// Index of the first coefficient where the two series differ, or -1.
  int first_mismatch(const USeries& o) const {
    const int n = std::min(trunc_, o.trunc_);
    for (int i = 0; i <= n; ++i)
      if (!coef_is_zero(c_[i] - o.c_[i])) return i;
    return -1;
  }

  std::string to_string() const {
    std::ostringstream os;
    for (int i = 0; i <= trunc_; ++i) {
      if (i) os << " + ";
      os << "(" << coef_str(c_[i]) << ")u^" << i;
    }
    return os.str();
  }

 private:
  C zero() const { return coef_zero(c_.empty() ? C() : c_[0]); }
  int trunc_;
  std::vector<C> c_;
};

using RatSeries = USeries<Rational>;
using BivarSeries = USeries<YPoly>;

/// 1 / (1 - c u^k) as a truncated geometric series.
template <class C>
USeries<C> geometric_series(int trunc, const C& c, int k) {
  if (k <= 0) throw std::domain_error("geometric step must be positive");
  USeries<C> r(trunc);
  C acc = coef_one(c);
  for (int e = 0; e <= trunc; e += k) {
    r.at(e) = acc;
    acc = acc * c;
  }
  return r;
}

}  // namespace eisentree
