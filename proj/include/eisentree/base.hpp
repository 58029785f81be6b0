#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace eisentree {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Enumeration or evaluation exceeded a configured size bound. Never silently truncate.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

/// An operand does not carry enough retained Laurent terms for the requested read.
class precision_error : public std::runtime_error {
 public:
  explicit precision_error(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_prime_u32(uint32_t n) {
  if (n < 2) return false;
  for (uint32_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// The standing assumption on the base field size. Rejected at configuration time.
inline void check_modulus(uint32_t q) {
  if (!is_prime_u32(q) || q <= 3)
    throw std::domain_error("q must be prime > 3 (got " + std::to_string(q) + ")");
}

inline BigInt pow_bigint(uint32_t base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline BigInt pow_bigint_big(const BigInt& base, int exp) {
  BigInt r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

}  // namespace eisentree
