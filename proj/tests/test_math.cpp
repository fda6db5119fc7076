#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>
#include <vector>

#include "unimix/math.hpp"

using namespace unimix;

TEST_CASE("normal quantile matches reference values") {
  // Reference quantiles computed with mpmath at 30 digits.
  CHECK(norm_quantile(0.5) == 0.0);
  CHECK_THAT(norm_quantile(0.95), Catch::Matchers::WithinAbs(1.6448536269514722, 1e-12));
  CHECK_THAT(norm_quantile(0.975), Catch::Matchers::WithinAbs(1.9599639845400545, 1e-12));
  CHECK_THAT(norm_quantile(0.05), Catch::Matchers::WithinAbs(-1.6448536269514722, 1e-12));
  CHECK_THAT(norm_quantile(0.999), Catch::Matchers::WithinAbs(3.0902323061678132, 1e-12));
  CHECK_THAT(norm_quantile(1e-10), Catch::Matchers::WithinRel(-6.3613409024040557, 1e-12));
  CHECK_THROWS_AS(norm_quantile(-0.1), invalid_level_error);
}

TEST_CASE("quantile inverts the CDF") {
  for (double p : {0.001, 0.01, 0.2, 0.5, 0.7, 0.99, 0.9999}) {
    CHECK_THAT(norm_cdf(norm_quantile(p)), Catch::Matchers::WithinAbs(p, 1e-12));
  }
}

TEST_CASE("log density constants") {
  CHECK_THAT(log_norm_pdf(0.0), Catch::Matchers::WithinAbs(-0.9189385332046727, 1e-15));
  CHECK_THAT(norm_pdf(0.0), Catch::Matchers::WithinAbs(0.3989422804014327, 1e-15));
  CHECK_THAT(kLogSqrt2TimesPi, Catch::Matchers::WithinAbs(std::log(std::sqrt(2.0) * M_PI), 1e-15));
  CHECK_THAT(kLog2PiSquared, Catch::Matchers::WithinAbs(std::log(2.0 * M_PI * M_PI), 1e-15));
}

TEST_CASE("log_sum_exp handles extreme spreads") {
  CHECK_THAT(log_sum_exp(0.0, 0.0), Catch::Matchers::WithinAbs(std::log(2.0), 1e-15));
  CHECK_THAT(log_sum_exp(-1000.0, 0.0), Catch::Matchers::WithinAbs(0.0, 1e-15));
  CHECK_THAT(log_sum_exp(700.0, 710.0),
             Catch::Matchers::WithinRel(710.0 + std::log1p(std::exp(-10.0)), 1e-15));
}

TEST_CASE("sum_log1p_scaled agrees with log1p") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> unif(-0.9, 40.0);
  std::vector<double> z(500);
  for (auto& v : z) v = unif(gen);
  for (double p : {1e-6, 1e-3, 0.2, 0.97}) {
    double direct = 0.0;
    for (double v : z) direct += std::log1p(p * v);
    CHECK_THAT(sum_log1p_scaled(z, p), Catch::Matchers::WithinAbs(direct, 1e-10));
  }
  CHECK(sum_log1p_scaled(z, 0.0) == 0.0);
}

TEST_CASE("ks distance of a perfect grid is 1/(2n)") {
  std::vector<double> grid;
  const int n = 100;
  for (int i = 0; i < n; ++i) grid.push_back((i + 0.5) / n);
  const double d = ks_distance(std::span<double>(grid), [](double x) { return x; });
  CHECK_THAT(d, Catch::Matchers::WithinAbs(0.005, 1e-12));
}

TEST_CASE("log_log guards its domain") {
  CHECK_THROWS_AS(log_log(2), degenerate_size_error);
  CHECK_THAT(log_log(1000), Catch::Matchers::WithinAbs(1.9326447339160655, 1e-13));
}
