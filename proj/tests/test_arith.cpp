#include <gtest/gtest.h>

#include <complex>

#include "eisentree/arith.hpp"

using namespace eisentree;

namespace {
constexpr uint32_t q = 5;
Poly P(const std::string& s) { return Poly::parse(q, s); }

std::vector<Poly> monic_upto(int dmax, bool include_one = true) {
  std::vector<Poly> out;
  for (int d = include_one ? 0 : 1; d <= dmax; ++d)
    for_each_monic(q, d, [&](const Poly& p) { out.push_back(p); });
  return out;
}
}  // namespace

TEST(ArithFunc, MobiusExamples) {
  Factorizer f(q);
  EXPECT_EQ(mobius(P("T^2"), f), 0);
  EXPECT_EQ(mobius(P("T"), f), -1);
  EXPECT_EQ(mobius(P("T^2+T"), f), 1);  // T(T+1)
  EXPECT_THROW(mobius(Poly::zero(q), f), std::domain_error);
  EXPECT_THROW(mobius(P("2*T"), f), std::domain_error);
}

TEST(ArithFunc, TotientExamples) {
  Factorizer f(q);
  EXPECT_EQ(totient(P("T+2"), f), BigInt(4));
  EXPECT_EQ(totient(Poly::one(q), f), BigInt(1));
  EXPECT_THROW(totient(Poly::zero(q), f), std::domain_error);
  // Unit-count oracle for phi(T^2): count residues mod T^2 coprime to T^2.
  const Poly m = P("T^2");
  int count = 0;
  for (uint64_t k = 0; k < pow_u64(q, 2); ++k) {
    const Poly r(q, {uint32_t(k % q), uint32_t(k / q)});
    if (coprime(m, r)) ++count;
  }
  EXPECT_EQ(count, 20);
  EXPECT_EQ(totient(m, f), BigInt(count));
}

TEST(ArithFunc, MultiplicativityExhaustive) {
  Factorizer f(q);
  const auto polys = monic_upto(3);
  for (const auto& a : polys)
    for (const auto& b : polys) {
      if (a.degree() + b.degree() > 3 || !coprime(a, b)) continue;
      EXPECT_EQ(mobius(a * b, f), mobius(a, f) * mobius(b, f));
      EXPECT_EQ(totient(a * b, f), totient(a, f) * totient(b, f));
      const Complex nu{-0.7, 1.3};
      const Complex lhs = sigma_complex(a * b, nu, f);
      const Complex rhs = sigma_complex(a, nu, f) * sigma_complex(b, nu, f);
      EXPECT_NEAR(std::abs(lhs - rhs), 0.0, 1e-9 * (1.0 + std::abs(lhs)));
    }
}

TEST(ArithFunc, MobiusAndTotientDivisorSums) {
  Factorizer f(q);
  // sum_{D | X} mu(D) = [X = 1] and sum_{D | X} phi(D) = |X|, deg X <= 4
  const auto divisors_of = [&](const Poly& x) {
    std::vector<Poly> divs;
    for (int d = 0; d <= x.degree(); ++d)
      for_each_monic(q, d, [&](const Poly& p) {
        if (p.divides(x)) divs.push_back(p);
      });
    return divs;
  };
  for (int dx = 0; dx <= 4; ++dx)
    for_each_monic(q, dx, [&](const Poly& x) {
      BigInt msum = 0, psum = 0;
      for (const auto& d : divisors_of(x)) {
        msum += mobius(d, f);
        psum += totient(d, f);
      }
      EXPECT_EQ(msum, BigInt(x.is_one() ? 1 : 0));
      EXPECT_EQ(psum, BigInt(x.norm().convert_to<BigInt>()));
    });
}

TEST(ArithFunc, SigmaExamples) {
  Factorizer f(q);
  EXPECT_NEAR(std::abs(sigma_complex(P("T^2"), Complex{0, 0}, f) - Complex{3, 0}), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(sigma_complex(Poly::one(q), Complex{2.3, -1}, f) - Complex{1, 0}), 0.0,
              1e-12);
  // sigma_{-2it}(T) = 1 + 5^{-2i} at t = 1
  const Complex direct = 1.0 + std::exp(Complex{0, -2.0} * std::log(5.0));
  EXPECT_NEAR(std::abs(sigma_complex(P("T"), Complex{0, -2.0}, f) - direct), 0.0, 1e-12);
}

TEST(ArithFunc, SigmaFormalMatchesEnumeration) {
  Factorizer f(q);
  for (const auto& Q : {P("T^2"), P("T^2+T"), P("T^3+T+1"), P("T^4+2*T^2")}) {
    const RatSeries s = sigma_formal(Q, Rational(q), 8, f);
    // direct: sum over monic divisors D of q^{deg D} x^{deg D}
    RatSeries direct(8);
    for (int d = 0; d <= Q.degree(); ++d)
      for_each_monic(q, d, [&](const Poly& D) {
        if (D.divides(Q)) direct.at(d) += Rational(pow_bigint(q, d));
      });
    EXPECT_EQ(s, direct) << Q.to_compact_string();
  }
  // Q = 0: every monic divides, geometric series with ratio q * scale
  const RatSeries z = sigma_formal(Poly::zero(q), Rational(q), 4, f);
  for (int d = 0; d <= 4; ++d) EXPECT_EQ(z[d], Rational(pow_bigint(q, 2 * d)));
}

TEST(ArithFunc, RamanujanClosedExamples) {
  Factorizer f(q);
  // Q = 0 -> phi(X)
  EXPECT_EQ(ramanujan_closed(P("T^2+T"), Poly::zero(q), f), totient(P("T^2+T"), f));
  // X irreducible coprime to Q -> -1
  EXPECT_EQ(ramanujan_closed(P("T^2+2"), P("T+1"), f), BigInt(-1));
  // X = T^2, Q coprime to T -> 0
  EXPECT_EQ(ramanujan_closed(P("T^2"), P("T+3"), f), BigInt(0));
}

TEST(ArithFunc, RamanujanBruteExamples) {
  Factorizer f(q);
  // X = 1: single summand, chi_Q of a polynomial: 1
  EXPECT_EQ(ramanujan_brute(Poly::one(q), P("T^2+1"), P("T+1"), f), CycInt::one(q));
  // X = T, Q = 0, A = T+1: phi(T) = 4
  EXPECT_EQ(ramanujan_brute(P("T"), Poly::zero(q), P("T+1"), f), CycInt::integer(q, 4));
  // X = T, Q = 1, A = T+1: -1
  EXPECT_EQ(ramanujan_brute(P("T"), Poly::one(q), P("T+1"), f), CycInt::integer(q, -1));
}

TEST(ArithFunc, BruteMatchesClosedOnCoprimeDomain) {
  Factorizer f(q);
  const Poly A = P("T+1");
  for (const auto& X : {P("T"), P("T^2"), P("T^2+2"), P("T^2+T+2")}) {
    ASSERT_TRUE(coprime(A, X));
    for (const auto& Q : {Poly::zero(q), Poly::one(q), P("T"), P("T^2+1"), P("3*T+2")}) {
      const CycInt b = ramanujan_brute(X, Q, A, f);
      ASSERT_TRUE(b.is_rational()) << X.to_compact_string() << " " << Q.to_compact_string();
      EXPECT_EQ(b.rational_value(), ramanujan_closed(X, Q, f))
          << X.to_compact_string() << " " << Q.to_compact_string();
    }
  }
}

TEST(ArithFunc, BruteResourceBound) {
  Factorizer f(q);
  EXPECT_THROW(ramanujan_brute(P("T^12+2"), Poly::one(q), P("T"), f, 10), resource_error);
  EXPECT_THROW(ramanujan_brute(P("2*T"), Poly::one(q), P("T+1"), f), std::domain_error);
  EXPECT_THROW(ramanujan_brute(P("T"), Poly::one(q), P("T^2+1"), f), std::domain_error);
}
