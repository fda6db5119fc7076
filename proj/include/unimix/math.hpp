#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>

#include "unimix/errors.hpp"

namespace unimix {

inline constexpr double kLog2Pi = 1.8378770664093454835606594728112;   // ln(2*pi)
inline constexpr double kLogSqrt2Pi = 0.9189385332046727417803297364056;  // ln(sqrt(2*pi))
inline constexpr double kLogSqrt2TimesPi = 1.4913034761293727562025356126;  // ln(sqrt(2)*pi)
inline constexpr double kLog2PiSquared = 2.9826069522587455124050712252;   // ln(2*pi^2)

/// Standard normal density.
inline double norm_pdf(double x) { return std::exp(-0.5 * x * x - kLogSqrt2Pi); }

/// Log of the standard normal density.
inline double log_norm_pdf(double x) { return -0.5 * x * x - kLogSqrt2Pi; }

/// Standard normal CDF.
inline double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

/// log(e^a + e^b) without overflow.
inline double log_sum_exp(double a, double b) {
  if (a == -std::numeric_limits<double>::infinity()) return b;
  if (b == -std::numeric_limits<double>::infinity()) return a;
  const double m = std::max(a, b);
  return m + std::log(std::exp(a - m) + std::exp(b - m));
}

/// Standard normal quantile, Wichura's algorithm AS 241 (PPND16).
/// Relative accuracy is about 1e-15 over (0, 1).
inline double norm_quantile(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (p == 1.0) return std::numeric_limits<double>::infinity();
    throw invalid_level_error("norm_quantile: p must lie in [0, 1]");
  }
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e3 * r + 3.3430575583588128105e4) * r +
                 6.7265770927008700853e4) * r + 4.5921953931549871457e4) * r +
               1.3731693765509461125e4) * r + 1.9715909503065514427e3) * r +
             1.3314166789178437745e2) * r + 3.3871328727963666080e0) /
           (((((((5.2264952788528545610e3 * r + 2.8729085735721942674e4) * r +
                 3.9307895800092710610e4) * r + 2.1213794301586595867e4) * r +
               5.3941960214247511077e3) * r + 6.8718700749205790830e2) * r +
             4.2313330701600911252e1) * r + 1.0);
  }
  double r = (q < 0.0) ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double x;
  if (r <= 5.0) {
    r -= 1.6;
    x = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
              2.41780725177450611770e-1) * r + 1.27045825245236838258e0) * r +
            3.64784832476320460504e0) * r + 5.76949722146069140550e0) * r +
          4.63033784615654529590e0) * r + 1.42343711074968357734e0) /
        (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
              1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
            6.89767334985100004550e-1) * r + 1.67638483018380384940e0) * r +
          2.05319162663775882187e0) * r + 1.0);
  } else {
    r -= 5.0;
    x = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
              1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
            2.96560571828504891230e-1) * r + 1.78482653991729133580e0) * r +
          5.46378491116411436990e0) * r + 6.65790464350110377720e0) /
        (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
              1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
            1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
          5.99832206555887937690e-1) * r + 1.0);
  }
  return (q < 0.0) ? -x : x;
}

/// ln ln n; requires n >= 3 so the result is positive and real.
inline double log_log(std::size_t n) {
  if (n < 3) throw degenerate_size_error("log_log: n must be at least 3");
  return std::log(std::log(static_cast<double>(n)));
}

/// exp(x) for x <= 0, accurate to a few ulp.  Branch-free Cephes-style
/// reduction so the compiler can vectorize callers' loops; inputs below -700
/// clamp to the underflow region where callers cannot tell the difference.
inline double exp_nonpositive(double x) {
  x = x < -700.0 ? -700.0 : x;
  constexpr double kInvLn2 = 1.4426950408889634074;
  constexpr double kLn2Hi = 6.93147180369123816490e-01;
  constexpr double kLn2Lo = 1.90821492927058770002e-10;
  constexpr double kMagic = 6755399441055744.0;  // 1.5 * 2^52
  const double k = (x * kInvLn2 + kMagic) - kMagic;
  const double r = (x - k * kLn2Hi) - k * kLn2Lo;
  // Taylor polynomial of degree 11 on |r| <= ln(2)/2.
  double p = 1.0 / 39916800.0;
  p = p * r + 1.0 / 3628800.0;
  p = p * r + 1.0 / 362880.0;
  p = p * r + 1.0 / 40320.0;
  p = p * r + 1.0 / 5040.0;
  p = p * r + 1.0 / 720.0;
  p = p * r + 1.0 / 120.0;
  p = p * r + 1.0 / 24.0;
  p = p * r + 1.0 / 6.0;
  p = p * r + 0.5;
  p = p * r + 1.0;
  p = p * r + 1.0;
  // Assemble 2^k; k is integral and within [-1010, 0], so int32 conversion
  // (which vectorizes) is exact and the exponent stays normal.
  const auto ki = static_cast<std::int32_t>(k);
  const std::int64_t sb = static_cast<std::int64_t>(ki + 1023) << 52;
  double scale;
  __builtin_memcpy(&scale, &sb, sizeof(scale));
  return p * scale;
}

/// log1p(e) on [0, 1], absolute error below 2e-13, exact at 0.  Chebyshev fit
/// with the constant term dropped; branch-free for vectorization.
inline double log1p_unit(double e) {
  double p = 2.35235867903045012e-04;
  p = p * e + -2.13152965120095130e-03;
  p = p * e + 9.10155917217320316e-03;
  p = p * e + -2.46352712478766431e-02;
  p = p * e + 4.83078099209106465e-02;
  p = p * e + -7.50593193488103549e-02;
  p = p * e + 9.96548493462440371e-02;
  p = p * e + -1.20964318346340277e-01;
  p = p * e + 1.41792022283129648e-01;
  p = p * e + -1.66461944366605913e-01;
  p = p * e + 1.99972418999425666e-01;
  p = p * e + -2.49997534914919883e-01;
  p = p * e + 3.33333199021941029e-01;
  p = p * e + -4.99999996131746116e-01;
  p = p * e + 9.99999999955694219e-01;
  return p * e;
}

/// Sum of log1p(p * z[i]).  Small arguments take a Horner polynomial of the
/// log1p series (|x| <= 1/32 keeps the truncation error below 4e-15 per term).
inline double sum_log1p_scaled(std::span<const double> z, double p) {
  if (p == 0.0) return 0.0;
  double acc = 0.0;
  for (const double zi : z) {
    const double x = p * zi;
    if (std::fabs(x) <= 0.03125) {
      acc += x * (1.0 + x * (-1.0 / 2 + x * (1.0 / 3 + x * (-1.0 / 4 +
             x * (1.0 / 5 + x * (-1.0 / 6 + x * (1.0 / 7 + x * (-1.0 / 8))))))));
    } else {
      acc += std::log1p(x);
    }
  }
  return acc;
}

/// Kolmogorov-Smirnov distance between the empirical CDF of `values`
/// (will be sorted in place) and the CDF handed in as a callable.
template <class Cdf>
double ks_distance(std::span<double> values, Cdf&& cdf) {
  std::sort(values.begin(), values.end());
  const double n = static_cast<double>(values.size());
  double d = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double f = cdf(values[i]);
    d = std::max(d, std::fabs(f - static_cast<double>(i) / n));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / n - f));
  }
  return d;
}

}  // namespace unimix
