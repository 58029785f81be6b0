#pragma once

#include <complex>

#include "eisentree/character.hpp"
#include "eisentree/cyclotomic.hpp"
#include "eisentree/laurent.hpp"
#include "eisentree/poly.hpp"
#include "eisentree/useries.hpp"

namespace eisentree {

using Complex = std::complex<double>;

/// Mobius function of a monic nonzero polynomial.
inline int mobius(const Poly& x, Factorizer& f) {
  if (x.is_zero() || !x.is_monic()) throw std::domain_error("mobius requires a monic nonzero argument");
  if (x.degree() == 0) return 1;
  int parity = 0;
  for (const auto& [p, e] : f.factor(x)) {
    if (e > 1) return 0;
    ++parity;
  }
  return parity % 2 ? -1 : 1;
}

/// Euler totient #(F_q[T]/(X))^x for nonzero X, as an exact integer.
inline BigInt totient(const Poly& x, Factorizer& f) {
  if (x.is_zero()) throw std::domain_error("totient of zero");
  BigInt v = 1;
  for (const auto& [p, e] : f.factor(x)) {
    const BigInt np = pow_bigint(x.modulus(), p.degree());
    v *= (np - 1) * pow_bigint_big(np, e - 1);
  }
  return v;
}

/// sigma_nu(Q) = sum over monic divisors D of Q of |D|^nu, evaluated as a
/// complex number. Q must be monic and nonzero.
inline Complex sigma_complex(const Poly& Q, Complex nu, Factorizer& f) {
  if (Q.is_zero() || !Q.is_monic()) throw std::domain_error("sigma requires monic nonzero Q");
  const double lnq = std::log(double(Q.modulus()));
  Complex prod{1.0, 0.0};
  for (const auto& [p, e] : f.factor(Q)) {
    Complex s{0.0, 0.0};
    for (int k = 0; k <= e; ++k) s += std::exp(nu * double(k * p.degree()) * lnq);
    prod *= s;
  }
  return prod;
}

/// Formal variant: sum over monic divisors D of (scale)^{deg D} x^{deg D} as a
/// polynomial in the series unit x. Realizes sigma_{1-s} with scale = q
/// (x = u), sigma_{1-2s} with scale = q (x = w = q^{-2s}), and so on.
/// Q = 0 is interpreted through the (X, 0) = X convention: every monic D
/// divides 0, so the result is the full geometric series to the truncation.
inline RatSeries sigma_formal(const Poly& Q, const Rational& scale, int trunc, Factorizer& f) {
  const uint32_t q = f.modulus();
  if (Q.is_zero()) {
    // sum_d (#monic of degree d) scale^d x^d = sum_d q^d scale^d x^d
    return geometric_series<Rational>(trunc, Rational(q) * scale, 1);
  }
  if (!Q.is_monic()) throw std::domain_error("sigma requires monic Q (or zero)");
  RatSeries prod = RatSeries::constant(trunc, Rational(1));
  for (const auto& [p, e] : f.factor(Q)) {
    RatSeries fac(trunc);
    Rational c = 1;
    const Rational step = [&] {
      Rational s = 1;
      for (int i = 0; i < p.degree(); ++i) s *= scale;
      return s;
    }();
    for (int k = 0; k <= e && k * p.degree() <= trunc; ++k) {
      fac.at(k * p.degree()) = c;
      c *= step;
    }
    // divisors beyond the truncation are dropped by the series horizon
    prod = prod * fac;
  }
  return prod;
}

/// sigma as a Laurent polynomial in the auxiliary unit y = q^nu:
/// sum over monic divisors D of y^{sign * deg D}.
inline YPoly sigma_ypoly(const Poly& Q, int sign, Factorizer& f) {
  if (Q.is_zero() || !Q.is_monic()) throw std::domain_error("sigma requires monic nonzero Q");
  YPoly prod = YPoly::one();
  for (const auto& [p, e] : f.factor(Q)) {
    YPoly fac;
    for (int k = 0; k <= e; ++k) fac = fac + YPoly::monomial(Rational(1), sign * k * p.degree());
    prod = prod * fac;
  }
  return prod;
}

/// Closed form mu(X/(X,Q)) phi(X) / phi(X/(X,Q)), an exact integer.
/// Convention (X, 0) = X, so the value specializes to phi(X) at Q = 0.
inline BigInt ramanujan_closed(const Poly& X, const Poly& Q, Factorizer& f) {
  if (X.is_zero() || !X.is_monic()) throw std::domain_error("ramanujan_closed requires monic nonzero X");
  const Poly g = Q.is_zero() ? X : gcd(X, Q);
  const Poly cof = (X / g).monic();
  const int mu = mobius(cof, f);
  if (mu == 0) return 0;
  return mu * totient(X, f) / totient(cof, f);
}

/// Brute-force character sum: sum of chi_Q(Y/X) over representatives Y mod AX
/// with Y = 1 mod A and (X, Y) = 1, exact in Z[zeta_q]. Enumeration size is
/// q^{deg AX}; beyond max_modulus_degree the call refuses rather than truncate.
inline CycInt ramanujan_brute(const Poly& X, const Poly& Q, const Poly& A, Factorizer& f,
                              int max_modulus_degree = 10) {
  const uint32_t q = X.modulus();
  if (X.is_zero() || !X.is_monic()) throw std::domain_error("ramanujan_brute requires monic nonzero X");
  if (A.is_zero() || !A.is_monic() || !f.is_irreducible(A))
    throw std::domain_error("ramanujan_brute requires monic irreducible A");
  const Poly AX = A * X;
  const int dax = AX.degree();
  if (dax > max_modulus_degree)
    throw resource_error("ramanujan_brute: deg(AX) = " + std::to_string(dax) +
                         " exceeds the configured bound " + std::to_string(max_modulus_degree));
  // Y = 1 + A Z with Z running over residues mod X picks out Y = 1 mod A once each.
  std::vector<BigInt> counts(q, BigInt(0));
  const int dz = X.degree();
  const uint64_t nz = pow_u64(q, dz);
  // Y/X must stay readable through T^{-(deg Q + 1)} after multiplying by Y,
  // whose degree can reach deg A + deg X - 1.
  const int keep = (Q.is_zero() ? 0 : Q.degree()) + A.degree() + X.degree() + 3;
  const Laurent xinv = Laurent::from_poly(X).inverse_to(keep);
  for (uint64_t k = 0; k < nz; ++k) {
    std::vector<uint32_t> zc(dz, 0);
    uint64_t kk = k;
    for (int i = 0; i < dz; ++i) {
      zc[i] = static_cast<uint32_t>(kk % q);
      kk /= q;
    }
    const Poly Y = (Poly::one(q) + A * Poly(q, std::move(zc))) % AX;
    if (!coprime(X, Y)) continue;
    if (Q.is_zero()) {
      counts[0] += 1;
      continue;
    }
    const Laurent ratio = xinv * Y;
    const uint32_t a1 = chi_exponent(Q, ratio);
    counts[a1] += 1;
  }
  return CycInt::from_exponent_counts(q, counts);
}

}  // namespace eisentree
