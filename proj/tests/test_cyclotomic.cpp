#include <gtest/gtest.h>

#include "eisentree/cyclotomic.hpp"

using namespace eisentree;

namespace {
constexpr uint32_t q = 5;
}

TEST(Cyclotomic, ReductionIsCanonical) {
  // zeta^4 = -(1 + zeta + zeta^2 + zeta^3)
  const CycInt z4 = CycInt::root_of_unity(q, 4);
  for (const auto& c : z4.coeffs()) EXPECT_EQ(c, BigInt(-1));
  EXPECT_EQ(CycInt::root_of_unity(q, 5), CycInt::one(q));
  EXPECT_EQ(CycInt::root_of_unity(q, -1), z4);
}

TEST(Cyclotomic, ProductsOfRoots) {
  const CycInt z2 = CycInt::root_of_unity(q, 2), z3 = CycInt::root_of_unity(q, 3);
  EXPECT_EQ(z2 * z3, CycInt::one(q));
  // sum of all q-th roots of unity is zero
  CycInt s = CycInt::zero(q);
  for (int k = 0; k < int(q); ++k) s = s + CycInt::root_of_unity(q, k);
  EXPECT_TRUE(s.is_zero());
}

TEST(Cyclotomic, Conjugation) {
  const CycInt z = CycInt::root_of_unity(q, 1);
  EXPECT_EQ(z.conj(), CycInt::root_of_unity(q, q - 1));
  const CycInt x = z * BigInt(3) + CycInt::integer(q, 7);
  EXPECT_EQ(x.conj().conj(), x);
  const auto norm2 = (x * x.conj()).to_complex();
  EXPECT_NEAR(norm2.imag(), 0.0, 1e-10);
}

TEST(Cyclotomic, RationalityDetection) {
  EXPECT_TRUE(CycInt::integer(q, -12).is_rational());
  EXPECT_EQ(CycInt::integer(q, -12).rational_value(), BigInt(-12));
  EXPECT_FALSE(CycInt::root_of_unity(q, 1).is_rational());
  EXPECT_THROW(CycInt::root_of_unity(q, 1).rational_value(), std::domain_error);
}

TEST(Cyclotomic, ComplexEmbedding) {
  const auto z = CycInt::root_of_unity(q, 1).to_complex();
  EXPECT_NEAR(std::abs(z), 1.0, 1e-12);
  EXPECT_NEAR(std::arg(z), 2 * 3.14159265358979323846 / q, 1e-9);
  // zeta + zeta^4 + zeta^2 + zeta^3 = -1
  CycInt s = CycInt::zero(q);
  for (int k = 1; k < int(q); ++k) s = s + CycInt::root_of_unity(q, k);
  EXPECT_NEAR(s.to_complex().real(), -1.0, 1e-12);
  EXPECT_NEAR(s.to_complex().imag(), 0.0, 1e-12);
}

TEST(Cyclotomic, ExactDivision) {
  const CycInt n = CycInt::root_of_unity(q, 1) * BigInt(3) + CycInt::integer(q, 5);
  const CycRat r = divide_exact(n, BigInt(15));
  EXPECT_EQ(r.coeffs()[0], Rational(1, 3));
  EXPECT_EQ(r.coeffs()[1], Rational(1, 5));
}
