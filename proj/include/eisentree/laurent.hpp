#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "eisentree/poly.hpp"

namespace eisentree {

/// Truncated Laurent series in T^{-1}: an element of k_inf = F_q((T^{-1}))
/// known modulo O(T^{-known_to}). Stored coefficients run from the valuation
/// exponent upward; the first stored coefficient is nonzero unless the element
/// is zero to its stated precision. Elements built from polynomials or finite
/// coefficient lists are exact (known_to = kExact). Arithmetic propagates the
/// precision pessimistically and records it, so truncation loss is auditable.
class Laurent {
 public:
  static constexpr int kExact = std::numeric_limits<int>::max() / 4;

  explicit Laurent(uint32_t q, int known_to = kExact) : q_(q), val_(known_to), known_to_(known_to) {}

  /// val = exponent of T^{-1} of coeffs[0]; coeffs ascending in that exponent.
  Laurent(uint32_t q, int val, std::vector<uint32_t> coeffs, int known_to = kExact)
      : q_(q), val_(val), c_(std::move(coeffs)), known_to_(known_to) {
    for (auto& x : c_) x %= q_;
    normalize();
  }

  static Laurent from_poly(const Poly& p) {
    std::vector<uint32_t> rev(p.coeffs().rbegin(), p.coeffs().rend());
    return Laurent(p.modulus(), -p.degree(), std::move(rev), kExact);
  }
  static Laurent zero(uint32_t q) { return Laurent(q, kExact); }

  uint32_t modulus() const { return q_; }
  bool is_zero_to_precision() const { return c_.empty(); }
  bool is_exact() const { return known_to_ >= kExact; }
  bool is_exact_zero() const { return c_.empty() && is_exact(); }
  int known_to() const { return known_to_; }
  /// Number of retained terms from the valuation onward.
  int precision() const { return known_to_ >= kExact ? kExact : known_to_ - val_; }

  /// Valuation v (exponent of T^{-1} of the first nonzero term); empty for an
  /// element that is zero to its precision.
  std::optional<int> valuation() const {
    if (c_.empty()) return std::nullopt;
    return val_;
  }

  /// Coefficient of T^{-i}; reading at or beyond the precision horizon throws.
  uint32_t coeff(int i) const {
    if (i >= known_to_) throw precision_error("Laurent coefficient beyond retained precision");
    if (i < val_ || i >= val_ + static_cast<int>(c_.size())) return 0;
    return c_[i - val_];
  }

  /// norm = q^{-v}; an all-zero element reports norm 0 (exactly correct for
  /// exact zeros; for zero-to-precision elements the true norm is <= q^{-known_to}).
  Rational norm() const {
    if (c_.empty()) return Rational(0);
    if (val_ >= 0) return Rational(1, pow_bigint(q_, val_));
    return Rational(pow_bigint(q_, -val_));
  }
  double norm_double() const {
    if (c_.empty()) return 0.0;
    return std::pow(double(q_), -double(val_));
  }

  Laurent operator+(const Laurent& o) const {
    const int kt = std::min(known_to_, o.known_to_);
    if (c_.empty() && o.c_.empty()) return Laurent(q_, kt);
    const int end1 = c_.empty() ? kt : val_ + static_cast<int>(c_.size());
    const int end2 = o.c_.empty() ? kt : o.val_ + static_cast<int>(o.c_.size());
    const int lo = std::min(c_.empty() ? kt : val_, o.c_.empty() ? kt : o.val_);
    const int hi = kt >= kExact ? std::max(end1, end2) : kt;
    std::vector<uint32_t> r;
    for (int i = lo; i < hi; ++i) r.push_back(fq_add(q_, at(i), o.at(i)));
    return Laurent(q_, lo, std::move(r), kt);
  }
  Laurent operator-(const Laurent& o) const { return *this + o.negated(); }
  Laurent negated() const {
    std::vector<uint32_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] ? q_ - c_[i] : 0;
    return Laurent(q_, val_, std::move(r), known_to_);
  }

  Laurent operator*(const Laurent& o) const {
    // Error term: O(T^{-k1})*y + x*O(T^{-k2}) -> known to min(k1+v2, k2+v1).
    if (c_.empty() || o.c_.empty()) {
      int kt = kExact;
      if (!is_exact()) kt = std::min(kt, known_to_ + (o.c_.empty() ? o.known_to_ : o.val_));
      if (!o.is_exact()) kt = std::min(kt, o.known_to_ + (c_.empty() ? known_to_ : val_));
      return Laurent(q_, std::min(kt, kExact));
    }
    int kt = kExact;
    if (!is_exact()) kt = std::min(kt, known_to_ + o.val_);
    if (!o.is_exact()) kt = std::min(kt, o.known_to_ + val_);
    const int lo = val_ + o.val_;
    const int len = kt >= kExact ? static_cast<int>(c_.size() + o.c_.size()) - 1
                                 : std::min<int>(kt - lo, static_cast<int>(c_.size() + o.c_.size()) - 1);
    std::vector<uint64_t> acc(std::max(len, 0), 0);
    for (size_t i = 0; i < c_.size(); ++i) {
      if (!c_[i]) continue;
      for (size_t j = 0; j < o.c_.size() && i + j < acc.size(); ++j)
        acc[i + j] += uint64_t(c_[i]) * o.c_[j];
    }
    std::vector<uint32_t> r(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<uint32_t>(acc[i] % q_);
    return Laurent(q_, lo, std::move(r), kt);
  }

  Laurent operator*(const Poly& p) const { return *this * from_poly(p); }

  /// Multiplicative inverse; relative precision is preserved. Inverting an
  /// all-zero element is a domain error.
  Laurent inverse() const {
    if (c_.empty()) throw std::domain_error("inverse of zero Laurent element");
    return inverse_with_terms(is_exact() ? kDefaultInversePrecision : precision());
  }

 private:
  Laurent inverse_with_terms(int prec) const {
    // x = c0 T^{-v} (1 + u) with |u| < 1; 1/x = c0^{-1} T^{v} sum (-u)^k.
    const uint32_t c0inv = fq_inv(q_, c_[0]);
    std::vector<uint32_t> u(c_.size() > 1 ? c_.size() - 1 : 0);
    for (size_t i = 1; i < c_.size(); ++i) u[i - 1] = fq_mul(q_, c_[i], c0inv);
    std::vector<uint32_t> inv_unit(prec, 0);
    inv_unit[0] = 1;
    // Newton-free direct recurrence: inv[k] = -sum_{j>=1} u[j-1] * inv[k-j].
    for (int k = 1; k < prec; ++k) {
      uint64_t s = 0;
      for (int j = 1; j <= k && j <= static_cast<int>(u.size()); ++j)
        s += uint64_t(u[j - 1]) * inv_unit[k - j];
      inv_unit[k] = static_cast<uint32_t>((q_ - (s % q_)) % q_);
    }
    for (auto& x : inv_unit) x = fq_mul(q_, x, c0inv);
    const int kt = is_exact() ? -val_ + prec : known_to_ - 2 * val_;
    return Laurent(q_, -val_, std::move(inv_unit), kt);
  }

 public:
  Laurent operator/(const Laurent& o) const { return *this * o.inverse(); }

  /// Inverse retained at least through T^{-(known_to_floor - 1)}.
  Laurent inverse_to(int known_to_floor) const {
    if (c_.empty()) throw std::domain_error("inverse of zero Laurent element");
    const int terms = std::max(known_to_floor + val_, 1);
    Laurent widened(q_, val_, c_, is_exact() ? kExact : known_to_);
    return widened.inverse_with_terms(terms);
  }

  /// Polynomial part: terms T^{-i} with i <= 0, as a Poly.
  Poly poly_part() const {
    std::vector<uint32_t> c;
    for (int i = val_; i <= 0 && i < val_ + static_cast<int>(c_.size()); ++i) {
      const int p = -i;
      if (static_cast<int>(c.size()) <= p) c.resize(p + 1, 0);
      c[p] = c_[i - val_];
    }
    return Poly(q_, std::move(c));
  }

  /// Fractional part: the representative of x mod F_q[T] supported on
  /// strictly negative powers of T.
  Laurent frac_part() const {
    if (c_.empty() || val_ >= 1) return *this;
    const int skip = 1 - val_;
    if (skip >= static_cast<int>(c_.size())) return Laurent(q_, known_to_);
    std::vector<uint32_t> r(c_.begin() + skip, c_.end());
    return Laurent(q_, 1, std::move(r), known_to_);
  }

  /// Drop all terms T^{-i} with i < cutoff (used for vertex reduction).
  Laurent truncated_from(int cutoff) const {
    if (c_.empty() || val_ >= cutoff) return *this;
    const int skip = cutoff - val_;
    if (skip >= static_cast<int>(c_.size())) return Laurent(q_, known_to_);
    std::vector<uint32_t> r(c_.begin() + skip, c_.end());
    return Laurent(q_, cutoff, std::move(r), known_to_);
  }

  /// Keep only terms T^{-i} with i < limit, and clamp the precision horizon.
  Laurent truncated_to(int limit) const {
    const int kt = std::min(known_to_, limit);
    if (c_.empty() || val_ >= kt) return Laurent(q_, kt);
    std::vector<uint32_t> r(c_.begin(),
                            c_.begin() + std::min<size_t>(c_.size(), size_t(kt - val_)));
    return Laurent(q_, val_, std::move(r), kt);
  }

  bool same_to_precision(const Laurent& o) const {
    const int kt = std::min(known_to_, o.known_to_);
    const int lo = std::min(c_.empty() ? kt : val_, o.c_.empty() ? kt : o.val_);
    for (int i = lo; i < kt; ++i)
      if (at(i) != o.at(i)) return false;
    return true;
  }

  std::string to_string() const {
    std::ostringstream os;
    if (c_.empty()) {
      os << "0";
    } else {
      bool first = true;
      for (size_t j = 0; j < c_.size(); ++j) {
        if (!c_[j]) continue;
        if (!first) os << "+";
        first = false;
        const int e = val_ + static_cast<int>(j);
        if (e == 0) {
          os << c_[j];
        } else {
          if (c_[j] != 1) os << c_[j] << "*";
          os << "T^" << -e;
        }
      }
      if (first) os << "0";
    }
    if (!is_exact()) os << " (prec " << precision() << ")";
    return os.str();
  }

  /// Accepts "0" or '+'-separated terms "c", "c*T^-k", "T^-k"; exact result.
  static Laurent parse(uint32_t q, const std::string& text);

 private:
  static constexpr int kDefaultInversePrecision = 40;

  uint32_t at(int i) const {
    if (i < val_ || i >= val_ + static_cast<int>(c_.size())) return 0;
    return c_[i - val_];
  }
  void normalize() {
    size_t lead = 0;
    while (lead < c_.size() && c_[lead] == 0) ++lead;
    if (lead) {
      c_.erase(c_.begin(), c_.begin() + lead);
      val_ += static_cast<int>(lead);
    }
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
    if (!is_exact()) {
      // trim anything stored beyond the precision horizon
      if (!c_.empty() && val_ + static_cast<int>(c_.size()) > known_to_) {
        const int keep = known_to_ - val_;
        c_.resize(std::max(keep, 0));
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
      }
    }
    if (c_.empty()) val_ = known_to_;
  }

  uint32_t q_;
  int val_;
  std::vector<uint32_t> c_;
  int known_to_;
};

inline Laurent Laurent::parse(uint32_t q, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty Laurent literal");
  if (s == "0") return Laurent::zero(q);
  std::vector<std::pair<int, int64_t>> terms;  // (exponent of T, coefficient)
  size_t i = 0;
  while (i < s.size()) {
    int64_t sign = 1;
    if (s[i] == '+') ++i;
    else if (s[i] == '-') { sign = -1; ++i; }
    int64_t coef = 1;
    bool saw = false;
    int64_t digits = 0;
    while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) {
      digits = digits * 10 + (s[i] - '0');
      saw = true;
      ++i;
    }
    if (saw) coef = digits;
    if (i < s.size() && s[i] == '*') ++i;
    int power = 0;
    if (i < s.size() && (s[i] == 'T' || s[i] == 't')) {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        int psign = 1;
        if (i < s.size() && s[i] == '-') { psign = -1; ++i; }
        if (i >= s.size() || !isdigit(static_cast<unsigned char>(s[i])))
          throw std::invalid_argument("malformed exponent in Laurent literal");
        int64_t e = 0;
        while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) {
          e = e * 10 + (s[i] - '0');
          ++i;
        }
        power = psign * static_cast<int>(e);
      }
    } else if (!saw) {
      throw std::invalid_argument("malformed term in Laurent literal: " + text);
    }
    terms.emplace_back(power, sign * coef);
  }
  int minexp = 0, maxexp = 0;
  for (auto& [p, c] : terms) {
    minexp = std::min(minexp, -p);
    maxexp = std::max(maxexp, -p);
  }
  std::vector<uint32_t> coeffs(maxexp - minexp + 1, 0);
  for (auto& [p, c] : terms) {
    int64_t cur = (coeffs[-p - minexp] + c) % int64_t(q);
    if (cur < 0) cur += q;
    coeffs[-p - minexp] = static_cast<uint32_t>(cur);
  }
  return Laurent(q, minexp, std::move(coeffs), Laurent::kExact);
}

}  // namespace eisentree
