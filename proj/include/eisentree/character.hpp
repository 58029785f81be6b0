#pragma once

#include <complex>
#include <functional>

#include "eisentree/cyclotomic.hpp"
#include "eisentree/laurent.hpp"

namespace eisentree {

/// Exponent a_1 such that chi(x) = zeta_q^{a_1}: the T^{-1} coefficient of x.
/// Throws precision_error when the operand does not retain that coefficient.
inline uint32_t chi_exponent(const Laurent& x) {
  if (x.known_to() < 2)
    throw precision_error("chi requires the T^-1 coefficient; retained precision ends earlier");
  return x.coeff(1);
}

/// chi(x) = zeta_q^{a_1}, the standard residue character of k_inf/F_q[T].
inline CycInt chi(const Laurent& x) {
  return CycInt::root_of_unity(x.modulus(), chi_exponent(x));
}

/// Exponent of chi_Q(x) = chi(Qx). Reads the T^-1 coefficient of Q*x, which
/// needs x retained through T^{-(deg Q + 1)}.
inline uint32_t chi_exponent(const Poly& Q, const Laurent& x) {
  if (Q.is_zero()) return 0;
  const int need = Q.degree() + 2;
  if (x.known_to() < need)
    throw precision_error("chi_Q requires precision >= deg Q + 2");
  const uint32_t q = x.modulus();
  uint64_t acc = 0;
  for (int j = 0; j <= Q.degree(); ++j) {
    const uint32_t qc = Q.coeff(j);
    if (!qc) continue;
    acc += uint64_t(qc) * x.coeff(1 + j);  // T^j * T^{-(1+j)} -> T^{-1}
  }
  return static_cast<uint32_t>(acc % q);
}

inline CycInt chi_twisted(const Poly& Q, const Laurent& x) {
  return CycInt::root_of_unity(x.modulus(), chi_exponent(Q, x));
}

/// A depth-D sample point of the unit interval F_q((T^-1))/F_q[T]:
/// x = a_1 T^{-1} + ... + a_D T^{-D}, exact.
struct UnitIntervalSample {
  int depth;
  Laurent point;
};

/// Visit all q^depth sample points at the given depth, in odometer order
/// (a_1 fastest). Every point has norm < 1.
inline void for_each_unit_sample(uint32_t q, int depth,
                                 const std::function<void(const Laurent&)>& fn) {
  if (depth < 0) throw std::domain_error("sample depth must be >= 0");
  const uint64_t count = pow_u64(q, depth);
  for (uint64_t k = 0; k < count; ++k) {
    std::vector<uint32_t> c(depth, 0);
    uint64_t kk = k;
    for (int i = 0; i < depth; ++i) {
      c[i] = static_cast<uint32_t>(kk % q);
      kk /= q;
    }
    fn(Laurent(q, 1, std::move(c), Laurent::kExact));
  }
}

constexpr int kMaxIntegrationDepth = 9;

/// Exact integration over the compact fundamental domain: the average of f
/// over all q^depth sample points. Exact for integrands that depend only on
/// the first `depth` coefficients. Never Monte Carlo.
inline CycRat integrate_unit(const std::function<CycInt(const Laurent&)>& f, uint32_t q,
                             int depth) {
  if (depth > kMaxIntegrationDepth)
    throw resource_error("integrate_unit: depth " + std::to_string(depth) +
                         " exceeds the resource bound " + std::to_string(kMaxIntegrationDepth));
  CycInt sum = CycInt::zero(q);
  for_each_unit_sample(q, depth, [&](const Laurent& x) { sum = sum + f(x); });
  return divide_exact(sum, pow_bigint(q, depth));
}

/// Complex-valued variant for integrands that are not cyclotomic.
inline std::complex<double> integrate_unit_complex(
    const std::function<std::complex<double>(const Laurent&)>& f, uint32_t q, int depth) {
  if (depth > kMaxIntegrationDepth)
    throw resource_error("integrate_unit: depth exceeds the resource bound");
  std::complex<double> sum{0.0, 0.0};
  for_each_unit_sample(q, depth, [&](const Laurent& x) { sum += f(x); });
  return sum / double(pow_u64(q, depth));
}

}  // namespace eisentree
