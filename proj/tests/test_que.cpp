#include <gtest/gtest.h>

#include "eisentree/que.hpp"

using namespace eisentree;

namespace {
constexpr uint32_t q = 5;
Poly P(const std::string& s) { return Poly::parse(q, s); }
const double kLnq = std::log(5.0);
}  // namespace

TEST(Que, MellinExamples) {
  const TestWeight delta0 = TestWeight::delta(0);
  EXPECT_NEAR(std::abs(delta0.mellin(q, Complex{0.7, 1.3}) - Complex{1.0, 0.0}), 0.0, 1e-14);
  const TestWeight two = TestWeight::parse("0:1,1:1");
  EXPECT_EQ(two.mass(), Rational(2));
  EXPECT_NEAR(std::abs(two.mellin(q, Complex{0.0, 0.0}) - Complex{2.0, 0.0}), 0.0, 1e-14);
}

TEST(Que, MellinInversionSpotCheck) {
  // psi(q^n) = log q * integral of H(s) q^{ns} ds/(2 pi i) over s = iy,
  // y in [-pi/log q, pi/log q]; trapezoid quadrature on the compact contour.
  const TestWeight two = TestWeight::parse("0:1,1:1");
  const int M = 4000;
  const double ylim = 3.14159265358979323846 / kLnq;
  for (int n = -1; n <= 2; ++n) {
    Complex acc{0.0, 0.0};
    for (int k = 0; k < M; ++k) {
      const double y = -ylim + (2 * ylim) * (k + 0.5) / M;
      const Complex s{0.0, y};
      acc += two.mellin(q, s) * std::exp(double(n) * s * kLnq) * (2 * ylim / M);
    }
    const Complex val = acc * kLnq / (2 * 3.14159265358979323846);
    const double expect = (n == 0 || n == 1) ? 1.0 : 0.0;
    EXPECT_NEAR(val.real(), expect, 1e-6) << n;
    EXPECT_NEAR(val.imag(), 0.0, 1e-6) << n;
  }
}

TEST(Que, ComputeIEmptyQRangeAtLevelT) {
  Factorizer f(q);
  const IParts p = compute_I(P("T"), 1.0, TestWeight::delta(0), 1.0, f);
  EXPECT_EQ(p.I2, 0.0);  // vanishing rule empties the Q-sum at a = 1, n = 0
  EXPECT_EQ(p.I, p.I1);
  const Complex c00 = coeff_closed(0, Poly::zero(q), Complex{0.5, 1.0}, P("T"), f);
  EXPECT_NEAR(p.I1, std::norm(c00), 1e-14);
}

TEST(Que, ComputeIFiniteSumAtDegreeThree) {
  Factorizer f(q);
  const Poly A = f.first_irreducible(3);
  const IParts p = compute_I(A, 1.0, TestWeight::delta(0), 1.0, f);
  EXPECT_GT(p.I2, 0.0);
  EXPECT_GT(p.I2_leading, 0.0);
  EXPECT_DOUBLE_EQ(p.I, p.I1 + p.I2);
}

TEST(Que, PeriodicityAndConjugationInT) {
  Factorizer f(q);
  const Poly A = f.first_irreducible(3);
  const TestWeight psi = TestWeight::parse("-1:1,0:2");
  const IParts p1 = compute_I(A, 0.8, psi, 1.0, f);
  const IParts p2 = compute_I(A, 0.8 + 3.14159265358979323846 / kLnq, psi, 1.0, f);
  EXPECT_NEAR(p1.I, p2.I, 1e-9 * (1 + std::abs(p1.I)));
  const IParts p3 = compute_I(A, -0.8, psi, 1.0, f);
  EXPECT_NEAR(p1.I, p3.I, 1e-12 * (1 + std::abs(p1.I)));
  EXPECT_NEAR(p1.I1, p3.I1, 1e-12 * (1 + std::abs(p1.I1)));
}

TEST(Que, SingularTRejected) {
  Factorizer f(q);
  EXPECT_THROW(compute_I(P("T"), 0.0, TestWeight::delta(0), 1.0, f), std::domain_error);
}

TEST(Que, PredictedLeading) {
  // slope constant for q = 5
  const double slope = (1.0 + 0.2) / (2.0 * kLnq);
  EXPECT_NEAR(slope, 0.372801, 1e-5);
  const LeadingPrediction lead = predicted_leading(P("T"), 1.0, TestWeight::delta(0));
  EXPECT_NEAR(lead.value, slope * kLnq / 6.0, 1e-12);
  EXPECT_NEAR(lead.G0_assembled, lead.G0_closed, 1e-10);
  // G(0) identity at several spectral parameters
  for (double t : {0.3, 0.77, 1.9, 2.5}) {
    const LeadingPrediction g = predicted_leading(P("T^2+2"), t, TestWeight::delta(0));
    EXPECT_NEAR(g.G0_assembled, g.G0_closed, 1e-10) << t;
  }
}

TEST(Que, SweepShapeAndDeterminism) {
  Factorizer f(q);
  const QueRun run = que_sweep(q, 1.0, 1, 3, TestWeight::delta(0), 1.0, f);
  ASSERT_EQ(run.levels.size(), 3u);
  EXPECT_EQ(run.levels[0].A, P("T"));
  EXPECT_EQ(run.levels[1].A, P("T^2+2"));   // first irreducible quadratic
  EXPECT_TRUE(run.slope_defined);
  EXPECT_EQ(run.levels[0].m, BigInt(6));
  const std::string csv = run.csv();
  EXPECT_NE(csv.find("q,A,deg_A,abs_A,m,t,H0,I1,I2,I,predicted_leading,scaled_I,residual"),
            std::string::npos);
  // I = I1 + I2 exactly at every level
  for (const auto& r : run.levels) EXPECT_DOUBLE_EQ(r.I, r.I1 + r.I2);
}

TEST(Que, SingleLevelSlopeUndefined) {
  Factorizer f(q);
  const QueRun run = que_sweep(q, 1.0, 2, 2, TestWeight::delta(0), 1.0, f);
  EXPECT_FALSE(run.slope_defined);
  EXPECT_TRUE(std::isnan(run.fitted_slope));
}

TEST(Que, ConfigParsing) {
  const VerifyConfig cfg = VerifyConfig::parse("q = 5\nt = 1.0\n# comment\ndeg_max = 4\npsi = 0:1,1:2\n");
  EXPECT_EQ(cfg.q, 5u);
  EXPECT_EQ(cfg.deg_max, 4);
  EXPECT_EQ(cfg.psi.mass(), Rational(3));
  EXPECT_THROW(VerifyConfig::parse("q = 4\n"), std::domain_error);   // q must be prime > 3
  EXPECT_THROW(VerifyConfig::parse("t = 0\nq = 5\n"), std::domain_error);  // t in R^x
  try {
    VerifyConfig::parse("q == 5\n");
    FAIL();
  } catch (const std::invalid_argument& e) {
    EXPECT_NE(std::string(e.what()).find("line 1"), std::string::npos);
  }
  EXPECT_THROW(VerifyConfig::parse("unknown_key = 3\n"), std::invalid_argument);
}
