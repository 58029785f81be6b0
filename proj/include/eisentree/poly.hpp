#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "eisentree/fq.hpp"

namespace eisentree {

/// Polynomial over F_q with ascending coefficients and no stored trailing zeros.
/// The zero polynomial has an empty coefficient vector; its degree is the
/// dedicated minus-infinity marker (never -1), so norm(0) = 0 falls out of the
/// degree convention without special cases downstream.
class Poly {
 public:
  static constexpr int kNegInfDegree = std::numeric_limits<int>::min() / 2;

  explicit Poly(uint32_t q) : q_(q) {}
  Poly(uint32_t q, std::vector<uint32_t> coeffs) : q_(q), c_(std::move(coeffs)) {
    for (auto& x : c_) x %= q_;
    trim();
  }

  static Poly zero(uint32_t q) { return Poly(q); }
  static Poly one(uint32_t q) { return Poly(q, {1}); }
  static Poly constant(uint32_t q, uint32_t v) { return Poly(q, {v}); }
  static Poly tee(uint32_t q) { return Poly(q, {0, 1}); }  // the indeterminate T
  /// T^k with k >= 0.
  static Poly tee_pow(uint32_t q, int k) {
    std::vector<uint32_t> c(k + 1, 0);
    c[k] = 1;
    return Poly(q, std::move(c));
  }

  uint32_t modulus() const { return q_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return c_.empty() ? kNegInfDegree : static_cast<int>(c_.size()) - 1; }
  uint32_t leading() const { return c_.empty() ? 0 : c_.back(); }
  bool is_monic() const { return leading() == 1; }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  uint32_t coeff(int i) const {
    return (i < 0 || i >= static_cast<int>(c_.size())) ? 0 : c_[i];
  }
  const std::vector<uint32_t>& coeffs() const { return c_; }

  Poly operator+(const Poly& o) const {
    std::vector<uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = fq_add(q_, coeff(int(i)), o.coeff(int(i)));
    return Poly(q_, std::move(r));
  }
  Poly operator-(const Poly& o) const {
    std::vector<uint32_t> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < r.size(); ++i) r[i] = fq_sub(q_, coeff(int(i)), o.coeff(int(i)));
    return Poly(q_, std::move(r));
  }
  Poly operator-() const {
    std::vector<uint32_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] ? q_ - c_[i] : 0;
    return Poly(q_, std::move(r));
  }
  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly(q_);
    std::vector<uint64_t> acc(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
      if (!c_[i]) continue;
      for (size_t j = 0; j < o.c_.size(); ++j) acc[i + j] += uint64_t(c_[i]) * o.c_[j];
    }
    std::vector<uint32_t> r(acc.size());
    for (size_t i = 0; i < acc.size(); ++i) r[i] = static_cast<uint32_t>(acc[i] % q_);
    return Poly(q_, std::move(r));
  }
  Poly scaled(uint32_t s) const {
    std::vector<uint32_t> r(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) r[i] = fq_mul(q_, c_[i], s % q_);
    return Poly(q_, std::move(r));
  }

  /// Quotient and remainder with deg r < deg b. Division by zero is a domain error.
  std::pair<Poly, Poly> divmod(const Poly& b) const {
    if (b.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<uint32_t> rem = c_;
    const int db = b.degree();
    const uint32_t binv = fq_inv(q_, b.leading());
    std::vector<uint32_t> quo;
    while (!rem.empty() && static_cast<int>(rem.size()) - 1 >= db) {
      const uint32_t cf = fq_mul(q_, rem.back(), binv);
      const int k = static_cast<int>(rem.size()) - 1 - db;
      if (k >= static_cast<int>(quo.size())) quo.resize(k + 1, 0);
      quo[k] = cf;
      for (int i = 0; i <= db; ++i) rem[i + k] = fq_sub(q_, rem[i + k], fq_mul(q_, cf, b.c_[i]));
      while (!rem.empty() && rem.back() == 0) rem.pop_back();
    }
    return {Poly(q_, std::move(quo)), Poly(q_, std::move(rem))};
  }
  Poly operator/(const Poly& b) const { return divmod(b).first; }
  Poly operator%(const Poly& b) const { return divmod(b).second; }

  Poly monic() const {
    if (is_zero()) return *this;
    return scaled(fq_inv(q_, leading()));
  }

  bool divides(const Poly& x) const { return !is_zero() && x.divmod(*this).second.is_zero(); }

  bool operator==(const Poly& o) const { return q_ == o.q_ && c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  /// |X| = q^deg X as an exact rational; |0| = 0.
  Rational norm() const {
    if (is_zero()) return Rational(0);
    return Rational(pow_bigint(q_, degree()));
  }

  /// Stable key for hashing/memoization; distinct polynomials of degree <= 26
  /// at q = 5 stay within 64 bits.
  uint64_t key() const {
    uint64_t k = 1;  // leading sentinel so "0" and "" differ
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) k = k * q_ + *it;
    return k;
  }

  std::string to_string() const;           // canonical, ascending, explicit coefficients
  std::string to_compact_string() const;   // descending, zeros skipped
  static Poly parse(uint32_t q, const std::string& text);

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  uint32_t q_;
  std::vector<uint32_t> c_;
};

/// Monic generator of the ideal (a, b); gcd(X, 0) is the monic multiple of X.
inline Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline bool coprime(const Poly& a, const Poly& b) { return gcd(a, b).is_one(); }

/// Extended gcd: returns (g, u, v) with u*a + v*b = g, g monic (or zero).
inline std::tuple<Poly, Poly, Poly> extended_gcd(const Poly& a, const Poly& b) {
  const uint32_t q = a.modulus();
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::one(q), s1 = Poly::zero(q);
  Poly t0 = Poly::zero(q), t1 = Poly::one(q);
  while (!r1.is_zero()) {
    auto [quo, rem] = r0.divmod(r1);
    Poly s2 = s0 - quo * s1;
    Poly t2 = t0 - quo * t1;
    r0 = std::move(r1); r1 = std::move(rem);
    s0 = std::move(s1); s1 = std::move(s2);
    t0 = std::move(t1); t1 = std::move(t2);
  }
  if (!r0.is_zero()) {
    const uint32_t inv = fq_inv(q, r0.leading());
    return {r0.monic(), s0.scaled(inv), t0.scaled(inv)};
  }
  return {r0, s0, t0};
}

/// Monic polynomial of degree d at position `index` in the canonical
/// enumeration (0 <= index < q^d): lower-degree coefficients cycle fastest.
inline Poly monic_at(uint32_t q, int d, uint64_t index) {
  std::vector<uint32_t> c(d + 1, 0);
  for (int i = 0; i < d; ++i) {
    c[i] = static_cast<uint32_t>(index % q);
    index /= q;
  }
  c[d] = 1;
  return Poly(q, std::move(c));
}

inline uint64_t pow_u64(uint32_t base, int exp) {
  uint64_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

/// Visit the q^d monic polynomials of degree exactly d in canonical order.
inline void for_each_monic(uint32_t q, int d, const std::function<void(const Poly&)>& fn) {
  if (d < 0) throw std::domain_error("enumeration degree must be >= 0");
  const uint64_t count = pow_u64(q, d);
  for (uint64_t k = 0; k < count; ++k) fn(monic_at(q, d, k));
}

/// Visit the (q-1)q^d nonzero polynomials of degree exactly d.
inline void for_each_nonzero(uint32_t q, int d, const std::function<void(const Poly&)>& fn) {
  for_each_monic(q, d, [&](const Poly& m) {
    for (uint32_t lead = 1; lead < q; ++lead) fn(m.scaled(lead));
  });
}

inline std::vector<Poly> monic_polys(uint32_t q, int d) {
  std::vector<Poly> out;
  out.reserve(pow_u64(q, d));
  for_each_monic(q, d, [&](const Poly& p) { out.push_back(p); });
  return out;
}

/// Memoizing factorization by trial division over enumerated monic
/// irreducibles of degree <= deg X / 2. Instances are not safe for concurrent
/// mutation; share one per thread.
class Factorizer {
 public:
  explicit Factorizer(uint32_t q) : q_(q) {}

  uint32_t modulus() const { return q_; }

  const std::vector<Poly>& irreducibles(int d) {
    while (static_cast<int>(irr_.size()) <= d) {
      const int nd = static_cast<int>(irr_.size());
      std::vector<Poly> out;
      if (nd >= 1) {
        for_each_monic(q_, nd, [&](const Poly& p) {
          if (is_irreducible_nocache(p)) out.push_back(p);
        });
      }
      irr_.push_back(std::move(out));
    }
    return irr_[d];
  }

  bool is_irreducible(const Poly& x) {
    if (x.degree() < 1) return false;
    return is_irreducible_nocache(x.monic());
  }

  /// Factor a nonzero polynomial into monic irreducibles with multiplicity,
  /// ordered by (degree, enumeration position). Unit = leading coefficient.
  std::vector<std::pair<Poly, int>> factor(const Poly& x) {
    if (x.is_zero()) throw std::domain_error("factor(0) is undefined");
    Poly m = x.monic();
    if (m.degree() == 0) return {};
    auto it = cache_.find(m.key());
    if (it != cache_.end()) return it->second;
    std::vector<std::pair<Poly, int>> out;
    Poly rest = m;
    for (int d = 1; rest.degree() > 0 && d <= rest.degree() / 2; ++d) {
      for (const Poly& p : irreducibles(d)) {
        if (rest.degree() > 0 && p.divides(rest)) {
          int e = 0;
          while (p.divides(rest)) {
            rest = rest / p;
            ++e;
          }
          out.emplace_back(p, e);
        }
        if (rest.degree() <= 0 || d > rest.degree() / 2) break;
      }
    }
    if (rest.degree() > 0) out.emplace_back(rest, 1);
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
      if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
      return a.first.key() < b.first.key();
    });
    cache_.emplace(m.key(), out);
    return out;
  }

  /// Exact p-adic valuation of x at the irreducible p.
  int valuation(const Poly& x, const Poly& p) {
    if (x.is_zero()) throw std::domain_error("valuation of zero");
    int v = 0;
    Poly rest = x;
    while (p.divides(rest)) {
      rest = rest / p;
      ++v;
    }
    return v;
  }

  /// First monic irreducible of degree d in enumeration order.
  Poly first_irreducible(int d) {
    const auto& v = irreducibles(d);
    if (v.empty()) throw std::domain_error("no irreducible of requested degree");
    return v.front();
  }

  /// Number of monic irreducibles of degree d (Gauss count), without
  /// enumerating them. Cross-checked against enumeration in the test suite.
  BigInt count_irreducibles(int d) const {
    BigInt tot = 0;
    for (int k = 1; k <= d; ++k) {
      if (d % k) continue;
      int mu = int_mobius(k);
      if (mu) tot += mu * pow_bigint(q_, d / k);
    }
    return tot / d;
  }

 private:
  static int int_mobius(int n) {
    int r = 1;
    for (int p = 2; p * p <= n; ++p) {
      if (n % p == 0) {
        n /= p;
        if (n % p == 0) return 0;
        r = -r;
      }
    }
    if (n > 1) r = -r;
    return r;
  }

  bool is_irreducible_nocache(const Poly& m) {
    const int d = m.degree();
    for (int e = 1; e <= d / 2; ++e)
      for (const Poly& p : irreducibles(e))
        if (p.divides(m)) return false;
    return true;
  }

  uint32_t q_;
  std::vector<std::vector<Poly>> irr_;  // irr_[d] = monic irreducibles of degree d
  std::unordered_map<uint64_t, std::vector<std::pair<Poly, int>>> cache_;
};

// ---------------------------------------------------------------------------
// Text forms. Canonical: "1+0*T+3*T^2" (ascending, every coefficient printed).
// Compact: "T^2+3" (descending, zero terms skipped, unit coefficients
// implicit). parse() accepts both, plus '-' prefixes mapped into F_q.
// ---------------------------------------------------------------------------

inline std::string Poly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (i) os << "+";
    if (i == 0)
      os << c_[0];
    else if (i == 1)
      os << c_[1] << "*T";
    else
      os << c_[i] << "*T^" << i;
  }
  return os.str();
}

inline std::string Poly::to_compact_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const uint32_t v = coeff(i);
    if (!v) continue;
    if (!first) os << "+";
    first = false;
    if (i == 0) {
      os << v;
    } else {
      if (v != 1) os << v << "*";
      os << "T";
      if (i > 1) os << "^" << i;
    }
  }
  return os.str();
}

inline Poly Poly::parse(uint32_t q, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
  if (s.empty()) throw std::invalid_argument("empty polynomial literal");
  std::vector<uint32_t> coeffs;
  auto add_term = [&](int64_t coef, int power) {
    if (power < 0) throw std::invalid_argument("negative power in polynomial literal");
    if (static_cast<int>(coeffs.size()) <= power) coeffs.resize(power + 1, 0);
    int64_t cur = (coeffs[power] + coef) % int64_t(q);
    if (cur < 0) cur += q;
    coeffs[power] = static_cast<uint32_t>(cur);
  };
  size_t i = 0;
  while (i < s.size()) {
    int64_t sign = 1;
    if (s[i] == '+') ++i;
    else if (s[i] == '-') { sign = -1; ++i; }
    if (i >= s.size()) throw std::invalid_argument("dangling sign in polynomial literal");
    int64_t coef = 1;
    bool saw_digits = false;
    int64_t digits = 0;
    while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) {
      digits = digits * 10 + (s[i] - '0');
      saw_digits = true;
      ++i;
    }
    if (saw_digits) coef = digits;
    if (i < s.size() && s[i] == '*') ++i;
    int power = 0;
    if (i < s.size() && (s[i] == 'T' || s[i] == 't')) {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') {
        ++i;
        if (i >= s.size() || !isdigit(static_cast<unsigned char>(s[i])))
          throw std::invalid_argument("malformed exponent in polynomial literal");
        int64_t e = 0;
        while (i < s.size() && isdigit(static_cast<unsigned char>(s[i]))) {
          e = e * 10 + (s[i] - '0');
          ++i;
        }
        power = static_cast<int>(e);
      }
    } else if (!saw_digits) {
      throw std::invalid_argument("malformed term in polynomial literal: " + text);
    }
    add_term(sign * coef, power);
  }
  return Poly(q, std::move(coeffs));
}

}  // namespace eisentree
