#include <gtest/gtest.h>

#include <cmath>
#include <boost/math/distributions/binomial.hpp>

#include "anchored/formulas.hpp"

using namespace anchored;

TEST(Formulas, Psi) {
  EXPECT_EQ(psi(1.0), 4.0);
  EXPECT_NEAR(psi(0.5), std::pow(1.5, 3.0) / 0.5, 1e-12);
  EXPECT_NEAR(log_psi(2.0), std::log(std::pow(3.0, 1.5) / 2.0), 1e-12);
  EXPECT_THROW(psi(0.0), std::domain_error);
  // Psi decreases in h.
  EXPECT_GT(psi(0.5), psi(0.9));
}

TEST(Formulas, RateFunction) {
  for (double p : {0.1, 0.3, 0.5, 0.9}) {
    EXPECT_NEAR(rate_function(p, p), 0.0, 1e-12);
    EXPECT_NEAR(rate_function(p, 0.0), -std::log(1 - p), 1e-12);
    EXPECT_NEAR(rate_function(p, 1.0), -std::log(p), 1e-12);
    // Midpoint convexity on a grid.
    for (int i = 0; i <= 20; ++i) {
      for (int j = i; j <= 20; ++j) {
        const double a = i / 20.0, b = j / 20.0;
        EXPECT_LE(rate_function(p, (a + b) / 2), (rate_function(p, a) + rate_function(p, b)) / 2 + 1e-12);
      }
    }
  }
  EXPECT_THROW(rate_function(0.0, 0.5), std::domain_error);
  EXPECT_THROW(rate_function(0.5, 1.5), std::domain_error);
}

TEST(Formulas, BinomialTailMatchesBoost) {
  for (std::uint64_t n : {1u, 7u, 50u, 200u, 3000u}) {
    for (double p : {0.05, 0.3, 0.5, 0.93}) {
      const boost::math::binomial_distribution<double> d(static_cast<double>(n), p);
      for (std::uint64_t m : {std::uint64_t{0}, n / 3, n / 2, n}) {
        const double want = boost::math::cdf(d, static_cast<double>(m));
        EXPECT_NEAR(binomial_tail(n, p, m), want, 1e-12 + 1e-10 * want) << n << " " << p << " " << m;
      }
    }
  }
}

TEST(Formulas, ChernoffBound) {
  for (double p : {0.3, 0.5, 0.7, 0.9}) {
    for (int i = 0; i <= 9; ++i) {
      const double alpha = 0.1 * i * p;
      for (std::uint64_t n = 1; n <= 200; ++n) {
        const auto m = static_cast<std::uint64_t>(std::floor(alpha * static_cast<double>(n)));
        EXPECT_LE(binomial_tail(n, p, m), std::exp(-static_cast<double>(n) * rate_function(p, alpha)) * (1 + 1e-12));
      }
    }
  }
}

TEST(Formulas, Thresholds) {
  const auto t = thresholds(1.0);
  EXPECT_NEAR(t.pc_bound, 0.5, 1e-12);
  EXPECT_NEAR(t.expansion_threshold, 0.75, 1e-12);
  EXPECT_NEAR(t.survival_threshold, 0.5, 1e-12);
  const auto t2 = thresholds(2.0);
  EXPECT_NEAR(t2.expansion_threshold, 1 - 2.0 / std::pow(3.0, 1.5), 1e-12);
}

TEST(Formulas, PsiBoundInLogSpace) {
  EXPECT_TRUE(within_psi_bound(4, 1, 1.0));
  EXPECT_FALSE(within_psi_bound(5, 1, 1.0));
  // 4^40 overflows 64-bit integers; the comparison must not.
  EXPECT_TRUE(within_psi_bound(~0ULL, 40, 1.0));
  EXPECT_FALSE(within_psi_bound(~0ULL, 10, 1.0));
}

TEST(Formulas, Catalan) {
  const std::vector<std::uint64_t> want = {1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796};
  for (std::uint32_t n = 0; n < want.size(); ++n) EXPECT_EQ(catalan(n), want[n]);
  EXPECT_EQ(catalan(35), 3116285494907301262ULL);
}
