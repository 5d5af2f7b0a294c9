#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "hdrm/distributions.hpp"
#include "hdrm/rng.hpp"

namespace {
constexpr double kExpM1 = 0.36787944117144233;       // e^{-1}
constexpr double kChiSq95Df1 = 3.841458820694124;    // (Phi^{-1}(0.975))^2
constexpr double kNormal95 = 1.6448536269514722;
}  // namespace

TEST_CASE("chi-square CDF closed forms") {
  CHECK(hdrm::chisq_cdf(2.0, 2.0) == doctest::Approx(1.0 - kExpM1).epsilon(1e-12));
  CHECK(hdrm::chisq_cdf(0.0, 5.0) == 0.0);
  CHECK(hdrm::chisq_cdf(-3.0, 5.0) == 0.0);
  CHECK(hdrm::chisq_cdf(kChiSq95Df1, 1.0) == doctest::Approx(0.95).epsilon(1e-9));
  CHECK_THROWS_AS((void)hdrm::chisq_cdf(1.0, 0.0), std::domain_error);
}

TEST_CASE("chi-square CDF monotonicity") {
  double prev = -1.0;
  for (double x : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 50.0}) {
    const double c = hdrm::chisq_cdf(x, 3.0);
    CHECK(c >= prev);
    prev = c;
  }
  // decreasing in f for fixed x > 0
  double prev_f = 2.0;
  for (double f : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double c = hdrm::chisq_cdf(3.0, f);
    CHECK(c < prev_f);
    prev_f = c;
  }
}

TEST_CASE("chi-square quantiles") {
  CHECK(hdrm::chisq_quantile(1.0 - kExpM1, 2.0) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(hdrm::chisq_quantile(0.95, 1.0) == doctest::Approx(kChiSq95Df1).epsilon(1e-9));
  for (double f : {0.7, 1.0, 3.1657, 39.0}) {
    for (double p : {0.01, 0.2, 0.5, 0.9, 0.999}) {
      const double x = hdrm::chisq_quantile(p, f);
      CHECK(hdrm::chisq_cdf(x, f) == doctest::Approx(p).epsilon(1e-9));
    }
  }
  CHECK_THROWS_AS((void)hdrm::chisq_quantile(0.0, 2.0), std::domain_error);
  CHECK_THROWS_AS((void)hdrm::chisq_quantile(1.0, 2.0), std::domain_error);
}

TEST_CASE("pearson quantile closed forms and the normal limit") {
  CHECK(hdrm::pearson_quantile(0.05, 1.0) ==
        doctest::Approx((kChiSq95Df1 - 1.0) / std::sqrt(2.0)).epsilon(1e-9));
  CHECK(hdrm::pearson_quantile(kExpM1, 2.0) == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(std::fabs(hdrm::pearson_quantile(0.05, 1e6) - kNormal95) < 2e-3);
}

TEST_CASE("pearson p-values match the reported analyses") {
  CHECK(hdrm::pearson_pvalue(0.0, 2.0) == doctest::Approx(kExpM1).epsilon(1e-10));
  CHECK(hdrm::pearson_pvalue(18.4195, 1.0) < 1e-4);
  CHECK(std::fabs(hdrm::pearson_pvalue(0.5851, 3.1657) - 0.2199) < 5e-5);
  CHECK(std::fabs(hdrm::pearson_pvalue(0.4095, 2.038) - 0.2451) < 5e-5);
  // any w with f + w sqrt(2f) <= 0 sits at the lower endpoint
  CHECK(hdrm::pearson_pvalue(-50.0, 2.0) == 1.0);
}

TEST_CASE("pearson p-value and quantile round trip") {
  for (double alpha : {0.01, 0.05, 0.1}) {
    for (double f : {0.8, 1.0, 2.0, 3.1657, 5.0, 39.0}) {
      const double w = hdrm::pearson_quantile(alpha, f);
      CHECK(hdrm::pearson_pvalue(w, f) == doctest::Approx(alpha).epsilon(1e-8));
    }
  }
}

TEST_CASE("p-values are monotone decreasing in w") {
  double prev = 2.0;
  for (double w : {-2.0, -0.5, 0.0, 0.5, 1.0, 2.0, 5.0, 20.0}) {
    const double p = hdrm::pearson_pvalue(w, 3.0);
    CHECK(p < prev);
    CHECK(p >= 0.0);
    CHECK(p <= 1.0);
    prev = p;
  }
}

TEST_CASE("standardized chi-square has mean 0 and variance 1 (Monte Carlo)") {
  // inverse-CDF sampling; 10^6 draws, 3-sigma bands
  const double f = 5.0;
  const std::int64_t n = 1000000;
  hdrm::Rng rng(31415);
  double sum = 0.0, sq = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double u = rng.next_uniform();
    const double k = (hdrm::chisq_quantile(u, f) - f) / std::sqrt(2.0 * f);
    sum += k;
    sq += k * k;
  }
  const double mean = sum / static_cast<double>(n);
  const double var = sq / static_cast<double>(n) - mean * mean;
  // SE(mean) = 1/sqrt(n); SE(var) ~ sqrt((kurtosis-1)/n), kurtosis = 3 + 12/f
  CHECK(std::fabs(mean) < 3.0 / std::sqrt(static_cast<double>(n)));
  CHECK(std::fabs(var - 1.0) < 3.0 * std::sqrt((2.0 + 12.0 / f) / static_cast<double>(n)));
}
