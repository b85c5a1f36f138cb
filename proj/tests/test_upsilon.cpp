#include <gtest/gtest.h>

#include <cmath>

#include "curvcheck/operators.hpp"
#include "curvcheck/upsilon.hpp"

using namespace curvcheck;

TEST(Upsilon, Values) {
  EXPECT_EQ(upsilon(0.0), 0.0);
  EXPECT_NEAR(upsilon(1.0), std::exp(1.0) - 2.0, 1e-15);
  EXPECT_NEAR(upsilon(-2.0), std::exp(-2.0) + 1.0, 1e-15);
  EXPECT_NEAR(upsilon_prime(1.0), std::exp(1.0) - 1.0, 1e-15);
  EXPECT_EQ(upsilon_second(0.0), 1.0);
}

TEST(Upsilon, SeriesAccuracyNearZero) {
  // long double reference for e^r - r - 1 through the full series
  for (double r : {1e-8, -1e-8, 3e-9, 1e-5, -7e-4, 9e-3, -9.9e-3}) {
    long double term = static_cast<long double>(r) * r / 2, ref = term;
    for (int k = 3; k < 30; ++k) {
      term *= static_cast<long double>(r) / k;
      ref += term;
    }
    EXPECT_NEAR(upsilon(r), static_cast<double>(ref), 1e-14 * std::abs(static_cast<double>(ref))) << r;
    // the leading two terms already give six significant digits at |r| ≤ 1e-8
    if (std::abs(r) <= 1e-8) EXPECT_NEAR(upsilon(r), r * r / 2 + r * r * r / 6, 1e-6 * r * r / 2);
  }
}

TEST(Upsilon, SymmetricSumDominatesSquare) {
  for (double r = -30.0; r <= 30.0; r += 0.01) EXPECT_GE(upsilon(r) + upsilon(-r), r * r * (1 - 1e-15)) << r;
}

TEST(Upsilon, ContinuousAcrossSeriesSwitch) {
  const double below = std::nextafter(1e-2, 0.0);
  EXPECT_NEAR(upsilon(below), upsilon(1e-2), 1e-16);
  EXPECT_NEAR(upsilon(-below), upsilon(-1e-2), 1e-16);
}

TEST(Nu, Values) {
  for (double c : {0.5, 2.0, 7.0})
    for (double d : {0.0, 1.0, 5.0}) EXPECT_EQ(nu(c, d, 0.0), 0.0);
  EXPECT_NEAR(nu_second(2.0, 1.0, 0.0), 4.0, 1e-15);
  const double r = 0.7;
  EXPECT_NEAR(nu(2.0, 1.0, r), 2.0 * std::expm1(r) * r + upsilon(-r) - upsilon(r), 1e-15);
}

TEST(Nu, SecondDerivativeMatchesClosedForm) {
  // ν''_{1+λ,λ}(r) = e^r((1+λ)r + 2 + λ) + e^{-r}
  for (double lambda : {0.1, 0.5, 1.0})
    for (double r = -5.0; r <= 5.0; r += 0.25) {
      const double closed = std::exp(r) * ((1 + lambda) * r + 2 + lambda) + std::exp(-r);
      EXPECT_NEAR(nu_second(1 + lambda, lambda, r), closed, 1e-12 * (1 + std::abs(closed)));
    }
}

TEST(Nu, DerivativesMatchFiniteDifferences) {
  const double h = 1e-5;
  for (double c : {1.5, 2.0})
    for (double d : {0.5, 5.0})
      for (double r = -4.0; r <= 4.0; r += 0.5) {
        const double fd1 = (nu(c, d, r + h) - nu(c, d, r - h)) / (2 * h);
        const double fd2 = (nu_prime(c, d, r + h) - nu_prime(c, d, r - h)) / (2 * h);
        EXPECT_NEAR(nu_prime(c, d, r), fd1, 1e-6 * (1 + std::abs(fd1)));
        EXPECT_NEAR(nu_second(c, d, r), fd2, 1e-6 * (1 + std::abs(fd2)));
      }
}

TEST(Nu, ConvexOnGrid) {
  for (int i = 1; i <= 10; ++i) {
    const double lambda = 0.1 * i;
    const auto scan = convexity_scan(1 + lambda, lambda, -20.0, 20.0);
    EXPECT_GT(scan.min_second_derivative, 0.0) << lambda;
  }
  // a d large enough breaks convexity near 0
  EXPECT_LT(convexity_scan(1.0, 10.0, -1.0, 1.0).min_second_derivative, 0.0);
}

TEST(Nu, LongDoubleInstantiation) {
  const long double r = 0.3L;
  EXPECT_NEAR(static_cast<double>(nu(2.0L, 5.0L, r)), nu(2.0, 5.0, 0.3), 1e-15);
}
