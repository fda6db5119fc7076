#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "unimix/errors.hpp"
#include "unimix/likelihood.hpp"
#include "unimix/math.hpp"
#include "unimix/model.hpp"
#include "unimix/rng.hpp"

namespace unimix {

/// How D0/D1 are carved out of the data.  D0 (first n0 = floor(m0 n)
/// observations, after an optional seeded shuffle) is used for inference,
/// D1 for estimation.
struct SplitConfig {
  double m0 = 0.5;
  bool shuffle = false;
  std::uint64_t seed = 0;

  void validate() const {
    if (!(m0 > 0.0 && m0 < 1.0))
      throw invalid_fraction_error("SplitConfig: m0 must lie strictly between 0 and 1");
  }

  std::size_t n0(std::size_t n) const { return static_cast<std::size_t>(std::floor(m0 * static_cast<double>(n))); }
  std::size_t n1(std::size_t n) const { return n - n0(n); }
  double beta() const { return m0 / (1.0 - m0); }
};

enum class ThresholdRule { universal, asymptotic_lrt, asymptotic_slrt };

inline const char* to_string(ThresholdRule rule) {
  switch (rule) {
    case ThresholdRule::universal: return "universal";
    case ThresholdRule::asymptotic_lrt: return "asymptotic-lrt";
    case ThresholdRule::asymptotic_slrt: return "asymptotic-slrt";
  }
  return "?";
}

struct TestResult {
  double statistic = 0.0;
  ThresholdRule threshold_rule = ThresholdRule::universal;
  double threshold = 0.0;
  bool reject = false;
  std::optional<double> e_value;  // exp(statistic/2), SLRT only
  double alpha = 0.05;
};

/// Universal critical value -2 ln(alpha); valid for every n by Markov.
inline double universal_threshold(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0))
    throw invalid_level_error("universal_threshold: alpha must lie in (0, 1]");
  return -2.0 * std::log(alpha);
}

/// Asymptotic critical value of the LR statistic:
/// ln ln n - ln(2 pi^2) - 2 ln ln (1-alpha)^{-1}.
inline double asymptotic_lrt_threshold(std::size_t n, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw invalid_level_error("asymptotic_lrt_threshold: alpha must lie in (0, 1)");
  if (n < 16) throw degenerate_size_error("asymptotic_lrt_threshold: n must be at least 16");
  return log_log(n) - kLog2PiSquared - 2.0 * std::log(std::log(1.0 / (1.0 - alpha)));
}

/// Asymptotic critical value of the SLR statistic:
/// 2 sqrt(beta ln ln n) Phi^{-1}(1-alpha) - beta ln ln n, beta = m0/(1-m0).
inline double asymptotic_slrt_threshold(std::size_t n, double alpha, double m0) {
  if (!(alpha > 0.0 && alpha < 1.0))
    throw invalid_level_error("asymptotic_slrt_threshold: alpha must lie in (0, 1)");
  if (n < 16) throw degenerate_size_error("asymptotic_slrt_threshold: n must be at least 16");
  if (!(m0 > 0.0 && m0 < 1.0))
    throw invalid_fraction_error("asymptotic_slrt_threshold: m0 must lie strictly between 0 and 1");
  const double b = m0 / (1.0 - m0);
  const double bl = b * log_log(n);
  return 2.0 * std::sqrt(bl) * norm_quantile(1.0 - alpha) - bl;
}

inline double threshold_for(ThresholdRule rule, std::size_t n, double alpha, double m0) {
  switch (rule) {
    case ThresholdRule::universal: return universal_threshold(alpha);
    case ThresholdRule::asymptotic_lrt: return asymptotic_lrt_threshold(n, alpha);
    case ThresholdRule::asymptotic_slrt: return asymptotic_slrt_threshold(n, alpha, m0);
  }
  throw invalid_level_error("threshold_for: unknown rule");
}

/// Positional split into views (no shuffle).  D0 = first n0, D1 = rest.
inline std::pair<std::span<const double>, std::span<const double>> split_view(
    std::span<const double> data, const SplitConfig& config) {
  config.validate();
  const std::size_t n0 = config.n0(data.size());
  const std::size_t n1 = data.size() - n0;
  if (n0 == 0 || n1 == 0)
    throw degenerate_split_error("split: both halves must be nonempty");
  return {data.subspan(0, n0), data.subspan(n0)};
}

/// Split into owned halves, honoring the shuffle flag.  The shuffle is a
/// seeded Fisher-Yates pass, order-stable given the seed.
inline std::pair<Sample, Sample> split(std::span<const double> data, const SplitConfig& config) {
  config.validate();
  const std::size_t n0 = config.n0(data.size());
  if (n0 == 0 || data.size() - n0 == 0)
    throw degenerate_split_error("split: both halves must be nonempty");
  std::vector<double> work(data.begin(), data.end());
  if (config.shuffle) {
    Xoshiro256pp rng(derive_seed(config.seed));
    for (std::size_t i = work.size() - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
      std::swap(work[i], work[j]);
    }
  }
  Sample d0, d1;
  d0.seed = d1.seed = config.seed;
  d0.values.assign(work.begin(), work.begin() + static_cast<std::ptrdiff_t>(n0));
  d1.values.assign(work.begin() + static_cast<std::ptrdiff_t>(n0), work.end());
  return {std::move(d0), std::move(d1)};
}

/// 2 sum_{D0} [log f_{p,t}(x) - log phi(x)] = 2 sum log(1 + p Z_i(t)).
/// Depends on D1 only through the fitted parameters.
inline double split_lr_statistic_contaminated(std::span<const double> d0,
                                              const ContaminatedParams& fitted) {
  fitted.validate();
  if (fitted.p == 0.0 || fitted.t == 0.0) return 0.0;
  if (fitted.p == 1.0) {
    double s = 0.0;
    for (const double x : d0) s += fitted.t * x - 0.5 * fitted.t * fitted.t;
    return 2.0 * s;
  }
  const double half_t2 = 0.5 * fitted.t * fitted.t;
  double s = 0.0;
  for (const double x : d0) s += std::log1p(fitted.p * std::expm1(fitted.t * x - half_t2));
  return 2.0 * s;
}

/// 2 sum_{D0} [log f_{p,t1,t2}(x) - log phi(x - null_mean)].
inline double split_lr_statistic_two_mean(std::span<const double> d0,
                                          const TwoMeanParams& fitted, double null_mean) {
  fitted.validate();
  const bool fit_is_null = (fitted.t1 == fitted.t2 && fitted.t1 == null_mean) ||
                           (fitted.p == 0.0 && fitted.t1 == null_mean) ||
                           (fitted.p == 1.0 && fitted.t2 == null_mean);
  if (fit_is_null) return 0.0;
  double s = two_mean_loglik(d0, fitted);
  for (const double x : d0) s -= log_norm_pdf(x - null_mean);
  return 2.0 * s;
}

inline double split_lr_statistic_contaminated(std::initializer_list<double> d0,
                                              const ContaminatedParams& fitted) {
  return split_lr_statistic_contaminated(std::span<const double>(d0.begin(), d0.size()), fitted);
}

inline double split_lr_statistic_two_mean(std::initializer_list<double> d0,
                                          const TwoMeanParams& fitted, double null_mean) {
  return split_lr_statistic_two_mean(std::span<const double>(d0.begin(), d0.size()), fitted,
                                     null_mean);
}

/// Split likelihood ratio test for the contaminated model: full-model MLE on
/// D1, likelihood ratio against the standard normal evaluated on D0.
inline TestResult slrt_contaminated(std::span<const double> data, const SplitConfig& config,
                                    double alpha = 0.05,
                                    ThresholdRule rule = ThresholdRule::universal,
                                    detail::ScanBuffers* buffers = nullptr) {
  std::optional<std::pair<Sample, Sample>> owned;
  std::span<const double> d0, d1;
  if (config.shuffle) {
    owned = split(data, config);
    d0 = owned->first.values;
    d1 = owned->second.values;
  } else {
    std::tie(d0, d1) = split_view(data, config);
  }
  detail::ScanBuffers local;
  const MleResult fit = lrt_contaminated(d1, buffers ? *buffers : local);
  TestResult result;
  result.statistic = split_lr_statistic_contaminated(d0, fit.contaminated());
  result.threshold_rule = rule;
  result.alpha = alpha;
  result.threshold = threshold_for(rule, data.size(), alpha, config.m0);
  result.reject = result.statistic > result.threshold;
  result.e_value = std::exp(0.5 * result.statistic);
  return result;
}

/// Split likelihood ratio test for the two-unknown-means model.  The null
/// MLE on D0 is the D0 sample mean.
inline TestResult slrt_two_mean(std::span<const double> data, const SplitConfig& config,
                                double alpha = 0.05,
                                ThresholdRule rule = ThresholdRule::universal,
                                int restarts = 10, std::uint64_t em_seed = 0) {
  std::optional<std::pair<Sample, Sample>> owned;
  std::span<const double> d0, d1;
  if (config.shuffle) {
    owned = split(data, config);
    d0 = owned->first.values;
    d1 = owned->second.values;
  } else {
    std::tie(d0, d1) = split_view(data, config);
  }
  if (d0.size() < 2 || d1.size() < 2)
    throw too_few_points_error("slrt_two_mean: both halves need at least 2 points");
  const MleResult fit = em_fit_two_mean(d1, restarts, em_seed);
  const double null_mean = std::accumulate(d0.begin(), d0.end(), 0.0) / static_cast<double>(d0.size());
  TestResult result;
  result.statistic = split_lr_statistic_two_mean(d0, fit.two_mean(), null_mean);
  result.threshold_rule = rule;
  result.alpha = alpha;
  result.threshold = threshold_for(rule, data.size(), alpha, config.m0);
  result.reject = result.statistic > result.threshold;
  result.e_value = std::exp(0.5 * result.statistic);
  return result;
}

}  // namespace unimix
