#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <span>
#include <thread>
#include <vector>

#include "unimix/errors.hpp"
#include "unimix/likelihood.hpp"
#include "unimix/math.hpp"
#include "unimix/model.hpp"
#include "unimix/rng.hpp"
#include "unimix/universal.hpp"

namespace unimix {

/// The empirical process S_n(t) = n^{-1/2} sum (e^{t X_i - t^2/2} - 1) e^{-t^2/2}
/// on the scan grid, together with its supremum M_n.  S_n(0) = 0, so M_n >= 0.
struct ProcessCurve {
  std::vector<double> t_grid;
  std::vector<double> s_values;
  double m_n = 0.0;
  double t_star = 0.0;
};

namespace detail {

inline double s_n_direct(std::span<const double> data, double t) {
  const double c = std::exp(-0.5 * t * t);
  double sum_e = 0.0;
  for (const double x : data) sum_e += std::exp(t * x);
  const double n = static_cast<double>(data.size());
  return c * (c * sum_e - n) / std::sqrt(n);
}

}  // namespace detail

/// Scan S_n over the shared location grid and refine the supremum.
inline ProcessCurve process_supremum(std::span<const double> data) {
  if (data.empty()) throw empty_sample_error();
  const double t_max = location_scan_range(data);
  const double n = static_cast<double>(data.size());
  const double sqrt_n = std::sqrt(n);
  ProcessCurve curve;
  detail::ScanBuffers buf;
  double best_s = -std::numeric_limits<double>::infinity();
  double best_t = 0.0;
  const long k_max = static_cast<long>(std::floor(t_max / detail::kGridStep + 1e-9));
  curve.t_grid.assign(static_cast<std::size_t>(2 * k_max + 1), 0.0);
  curve.s_values.assign(curve.t_grid.size(), 0.0);
  detail::scan_symmetric_grid(data, t_max, detail::kGridStep, buf,
                              [&](long k, double t, std::span<const double> expo) {
    double sum_e = 0.0;
    for (const double e : expo) sum_e += e;
    const double c = std::exp(-0.5 * t * t);
    const double s = c * (c * sum_e - n) / sqrt_n;
    const std::size_t idx = static_cast<std::size_t>(k + k_max);
    curve.t_grid[idx] = t;
    curve.s_values[idx] = s;
    if (detail::better_location(s, t, best_s, best_t)) {
      best_s = s;
      best_t = t;
    }
  });
  const double lo = std::max(best_t - detail::kGridStep, -t_max);
  const double hi = std::min(best_t + detail::kGridStep, t_max);
  detail::golden_refine(lo, hi, [&](double t) {
    return detail::s_n_direct(data, t);
  }, best_s, best_t);
  curve.m_n = best_s;
  curve.t_star = best_t;
  return curve;
}

/// Gumbel standardization of M_n:
/// sqrt(ln ln n) (m - sqrt(ln ln n)) + ln(sqrt(2) pi); the limit CDF is exp{-exp(-x)}.
inline double gumbel_standardize_m(double m_n, std::size_t n) {
  if (n < 16) throw degenerate_size_error("gumbel_standardize_m: n must be at least 16");
  const double ll = log_log(n);
  return std::sqrt(ll) * (m_n - std::sqrt(ll)) + kLogSqrt2TimesPi;
}

/// Gumbel standardization of the LR statistic:
/// lambda - ln ln n + ln(2 pi^2); the limit CDF is exp{-exp(-x/2)}.
inline double gumbel_standardize_lambda(double lambda, std::size_t n) {
  if (n < 16) throw degenerate_size_error("gumbel_standardize_lambda: n must be at least 16");
  return lambda - log_log(n) + kLog2PiSquared;
}

/// Normal standardization of the SLR statistic:
/// (lambda_split + beta ln ln n) / (2 sqrt(beta ln ln n)), beta = m0/(1-m0).
inline double normal_standardize_split(double lambda_split, std::size_t n, double m0) {
  if (n < 16) throw degenerate_size_error("normal_standardize_split: n must be at least 16");
  if (!(m0 > 0.0 && m0 < 1.0))
    throw invalid_fraction_error("normal_standardize_split: m0 must lie strictly between 0 and 1");
  const double bl = (m0 / (1.0 - m0)) * log_log(n);
  return (lambda_split + bl) / (2.0 * std::sqrt(bl));
}

/// The interval A_{2,n} = [2 sqrt(ln ln ln n), sqrt((ln n)/2) - 2 sqrt(ln ln n)]
/// where the location argmax concentrates asymptotically.  Empty (upper <=
/// lower) for every sample size reachable by simulation; it becomes nonempty
/// only near n ~ 1e40.
struct IntervalA2 {
  double lower = 0.0;
  double upper = 0.0;

  bool valid() const { return lower < upper; }
};

inline IntervalA2 interval_a2(std::size_t n) {
  if (n < 16) throw degenerate_size_error("interval_a2: n must be at least 16");
  const double ln = std::log(static_cast<double>(n));
  const double lll = std::log(std::log(ln));
  IntervalA2 iv;
  iv.lower = 2.0 * std::sqrt(lll);
  iv.upper = std::sqrt(ln / 2.0) - 2.0 * std::sqrt(std::log(ln));
  return iv;
}

/// Null-simulation summary of |t_hat_{n,1}| against uniformity on A_{2,n1}.
struct UniformityReport {
  std::size_t n = 0;
  double m0 = 0.5;
  int reps = 0;
  IntervalA2 interval;
  double in_fraction = 0.0;   // share of |t_hat| inside A_{2,n1}
  double ks_distance = 0.0;   // KS distance of the in-interval values to U(A_{2,n1})
  std::vector<double> t_hats; // |t_hat| per replication
};

/// Simulate H0, fit the full contaminated model on D1 per replication, and
/// report where |t_hat| falls relative to A_{2,n1}.  Reported, not asserted:
/// the uniformity limit converges too slowly for hard checks.
inline UniformityReport that_uniformity_report(std::size_t n, double m0, int reps,
                                               std::uint64_t seed, int threads = 0) {
  SplitConfig config;
  config.m0 = m0;
  config.validate();
  if (n < 2) throw degenerate_split_error("that_uniformity_report: n must be at least 2");
  const std::size_t n1 = config.n1(n);
  if (n1 < 16) throw degenerate_size_error("that_uniformity_report: n1 must be at least 16");
  const IntervalA2 iv = interval_a2(n1);
  if (!iv.valid())
    throw empty_interval_error("that_uniformity_report: A_{2,n1} is empty at this n");
  if (reps < 1) throw invalid_scenario_error("that_uniformity_report: reps must be positive");

  UniformityReport report;
  report.n = n;
  report.m0 = m0;
  report.reps = reps;
  report.interval = iv;
  report.t_hats.assign(static_cast<std::size_t>(reps), 0.0);

  AlternativeScenario null_scenario{ScenarioCase::i, 0.0, n};
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, reps));
  std::atomic<int> next{0};
  auto worker = [&]() {
    detail::ScanBuffers buf;
    for (int r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) {
      const Sample sample = sample_scenario(null_scenario, derive_seed(seed, static_cast<std::uint64_t>(r)));
      const auto [d0, d1] = split_view(sample.values, config);
      (void)d0;
      const MleResult fit = lrt_contaminated(d1, buf);
      report.t_hats[static_cast<std::size_t>(r)] = std::fabs(fit.t_hat);
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  std::vector<double> inside;
  for (const double t : report.t_hats)
    if (t >= iv.lower && t <= iv.upper) inside.push_back(t);
  report.in_fraction = static_cast<double>(inside.size()) / static_cast<double>(reps);
  if (!inside.empty()) {
    const double width = iv.upper - iv.lower;
    report.ks_distance = ks_distance(inside, [&](double x) { return (x - iv.lower) / width; });
  }
  return report;
}

}  // namespace unimix
