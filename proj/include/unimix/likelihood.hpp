#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <variant>
#include <vector>

#include "unimix/errors.hpp"
#include "unimix/math.hpp"
#include "unimix/model.hpp"
#include "unimix/rng.hpp"

namespace unimix {

/// Z_i(t) = exp(t X_i - t^2/2) - 1.  Always > -1 for finite arguments.
inline std::vector<double> z_values(std::span<const double> data, double t) {
  if (!std::isfinite(t)) throw invalid_scenario_error("z_values: non-finite t");
  std::vector<double> z(data.size());
  const double half_t2 = 0.5 * t * t;
  for (std::size_t i = 0; i < data.size(); ++i) z[i] = std::expm1(t * data[i] - half_t2);
  return z;
}

/// Profile maximizer of the mixing weight at a fixed location t.
struct ProfilePoint {
  double t = 0.0;
  double p_hat = 0.0;
  double eta_hat = 0.0;      // p_hat * exp(t^2/2)
  double loglik_gain = 0.0;  // 2 sum log(1 + p_hat Z_i(t)) >= 0
  double kkt_residual = 0.0; // |g'(p_hat)| for interior p_hat, boundary-signed slack otherwise
};

namespace detail {

// Reusable scratch for the location scans; sized to the sample once.
struct ScanBuffers {
  std::vector<double> step_factor;  // exp(step * x_i)
  std::vector<double> expo;         // exp(t * x_i), maintained incrementally
  std::vector<double> z;            // Z_i(t) for the profile solve
};

struct ProfileSolveResult {
  double p = 0.0;
  double gain = 0.0;  // 2 sum log(1 + p Z_i)
  double kkt = 0.0;
};

// Maximize g(p) = sum log(1 + p z_i) over p in [0, 1] given expo_i = exp(t x_i)
// and c = exp(-t^2/2).  g is concave; safeguarded Newton on g' with a
// bisection fallback.  sum_x enables the exact boundary identity at p = 1.
inline ProfileSolveResult solve_profile(std::span<const double> expo, double c, double t,
                                        double sum_x, std::vector<double>& zbuf) {
  const std::size_t n = expo.size();
  zbuf.resize(n);
  double s0 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double z = std::fma(expo[i], c, -1.0);
    zbuf[i] = z;
    s0 += z;
  }
  ProfileSolveResult out;
  if (!(s0 > 0.0)) {
    // g'(0) = s0 <= 0: ties at flat objectives resolve toward the null.
    out.kkt = std::max(s0, 0.0);
    return out;
  }
  // g'(1) = sum z/(1+z) = sum (1 - 1/(expo_i c)), stable even when z ~ -1.
  double gp1 = 0.0;
  double s2 = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    gp1 += 1.0 - 1.0 / (expo[i] * c);
    s2 += zbuf[i] * zbuf[i];
  }
  const double tol = 1e-11 * static_cast<double>(n);
  if (gp1 >= 0.0) {
    out.p = 1.0;
    out.gain = 2.0 * (t * sum_x - 0.5 * t * t * static_cast<double>(n));
    out.kkt = std::max(-gp1, 0.0);
    return out;
  }
  double lo = 0.0, hi = 1.0;  // g'(lo) > 0 > g'(hi)
  double p = std::clamp(s0 / s2, 1e-12, 1.0 - 1e-12);
  double g1 = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    g1 = 0.0;
    double g2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = zbuf[i] / (1.0 + p * zbuf[i]);
      g1 += r;
      g2 += r * r;
    }
    if (std::fabs(g1) <= tol) break;
    if (g1 > 0.0) lo = p; else hi = p;
    const double next = p + g1 / g2;
    p = (next > lo && next < hi) ? next : 0.5 * (lo + hi);
  }
  out.p = p;
  out.gain = 2.0 * sum_log1p_scaled(zbuf, p);
  out.kkt = std::fabs(g1);
  return out;
}

inline double sum_of(std::span<const double> x) {
  double s = 0.0;
  for (const double v : x) s += v;
  return s;
}

// Symmetric grid over t = k*step, |t| <= t_max, visited as k = 0..K then
// k = -1..-K.  exp(t x_i) is carried as a running product within fixed-size
// chunks anchored at multiples of the chunk size, so t = 0 uses exact unit
// exponentials, +k and -k sit at identical chunk offsets (the scan of -data
// mirrors the scan of data bit for bit), and results do not depend on how
// the scan might be partitioned.  visit(k, t, expo) with expo_i = exp(t x_i).
template <class Visit>
void scan_symmetric_grid(std::span<const double> x, double t_max, double step,
                         ScanBuffers& buf, Visit&& visit) {
  constexpr long kChunk = 64;
  const long k_max = static_cast<long>(std::floor(t_max / step + 1e-9));
  const std::size_t n = x.size();
  buf.step_factor.resize(n);
  buf.expo.resize(n);
  for (int sign = 0; sign < 2; ++sign) {
    const double signed_step = sign == 0 ? step : -step;
    for (std::size_t i = 0; i < n; ++i) buf.step_factor[i] = std::exp(signed_step * x[i]);
    for (long kb = 0; kb <= k_max; kb += kChunk) {
      const double t0 = signed_step * static_cast<double>(kb);
      for (std::size_t i = 0; i < n; ++i) buf.expo[i] = std::exp(t0 * x[i]);
      const long k_end = std::min(kb + kChunk - 1, k_max);
      for (long k = kb; k <= k_end; ++k) {
        if (k > kb)
          for (std::size_t i = 0; i < n; ++i) buf.expo[i] *= buf.step_factor[i];
        if (sign == 1 && k == 0) continue;
        const long signed_k = sign == 0 ? k : -k;
        visit(signed_k, signed_step * static_cast<double>(k), std::span<const double>(buf.expo));
      }
    }
  }
}

// Tie-breaking for location argmaxes: larger value, then smaller |t|,
// then negative t.
inline bool better_location(double value, double t, double best_value, double best_t) {
  if (value != best_value) return value > best_value;
  const double a = std::fabs(t), b = std::fabs(best_t);
  if (a != b) return a < b;
  return t < best_t;
}

inline constexpr double kGridStep = 0.02;
inline constexpr double kRefineTol = 1e-8;

// Golden-section refinement of a scalar objective on [a, b], tracking the
// best evaluated point.  `eval` returns the objective value.
template <class Eval>
void golden_refine(double a, double b, Eval&& eval, double& best_value, double& best_t) {
  constexpr double invphi = 0.6180339887498948482;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  if (better_location(fc, c, best_value, best_t)) { best_value = fc; best_t = c; }
  if (better_location(fd, d, best_value, best_t)) { best_value = fd; best_t = d; }
  while (b - a > kRefineTol) {
    if (fc > fd) {
      b = d; d = c; fd = fc;
      c = b - invphi * (b - a);
      fc = eval(c);
      if (better_location(fc, c, best_value, best_t)) { best_value = fc; best_t = c; }
    } else {
      a = c; c = d; fc = fd;
      d = a + invphi * (b - a);
      fd = eval(d);
      if (better_location(fd, d, best_value, best_t)) { best_value = fd; best_t = d; }
    }
  }
}

}  // namespace detail

/// Truncated location range for the sup over t: sqrt(2 ln n) + 1, with a
/// single observation handled so the analytic argmax t = X_1 stays reachable.
inline double location_scan_range(std::span<const double> data) {
  if (data.empty()) throw empty_sample_error();
  if (data.size() == 1) return std::max(std::fabs(data[0]), 1.0) + 1.0;
  return std::sqrt(2.0 * std::log(static_cast<double>(data.size()))) + 1.0;
}

/// Maximize sum log(1 + p Z_i(t)) over the weight p at fixed t.
inline ProfilePoint profile_weight(std::span<const double> data, double t) {
  if (data.empty()) throw empty_sample_error();
  if (!std::isfinite(t)) throw invalid_scenario_error("profile_weight: non-finite t");
  std::vector<double> expo(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) expo[i] = std::exp(t * data[i]);
  const double c = std::exp(-0.5 * t * t);
  std::vector<double> zbuf;
  const auto sol = detail::solve_profile(expo, c, t, detail::sum_of(data), zbuf);
  ProfilePoint point;
  point.t = t;
  point.p_hat = sol.p;
  point.eta_hat = sol.p == 0.0 ? 0.0 : sol.p * std::exp(0.5 * t * t);
  point.loglik_gain = sol.gain;
  point.kkt_residual = sol.kkt;
  return point;
}

/// Fit result shared by both mixture models.
struct MleResult {
  std::variant<ContaminatedParams, TwoMeanParams> params;
  double loglik = 0.0;
  double lambda = 0.0;
  double t_hat = std::numeric_limits<double>::quiet_NaN();
  bool converged = true;
  int iterations = 0;
  bool lambda_clamped = false;

  const ContaminatedParams& contaminated() const { return std::get<ContaminatedParams>(params); }
  const TwoMeanParams& two_mean() const { return std::get<TwoMeanParams>(params); }
};

/// Null log-likelihood under the standard normal (no free parameters).
inline double null_loglik_contaminated(std::span<const double> data) {
  double ss = 0.0;
  for (const double x : data) ss += x * x;
  return -0.5 * ss - static_cast<double>(data.size()) * kLogSqrt2Pi;
}

/// Classical LR statistic for the contaminated model: grid scan of the
/// profiled objective over |t| <= location_scan_range, then golden-section
/// refinement around the best cell.
inline MleResult lrt_contaminated(std::span<const double> data, detail::ScanBuffers& buf) {
  if (data.empty()) throw empty_sample_error();
  const double t_max = location_scan_range(data);
  const double sum_x = detail::sum_of(data);
  double best_gain = -std::numeric_limits<double>::infinity();
  double best_t = 0.0, best_p = 0.0;
  int evals = 0;
  detail::scan_symmetric_grid(data, t_max, detail::kGridStep, buf,
                              [&](long, double t, std::span<const double> expo) {
    const double c = std::exp(-0.5 * t * t);
    const auto sol = detail::solve_profile(expo, c, t, sum_x, buf.z);
    ++evals;
    if (detail::better_location(sol.gain, t, best_gain, best_t)) {
      best_gain = sol.gain;
      best_t = t;
      best_p = sol.p;
    }
  });
  const double lo = std::max(best_t - detail::kGridStep, -t_max);
  const double hi = std::min(best_t + detail::kGridStep, t_max);
  auto eval = [&](double t) {
    buf.expo.resize(data.size());
    for (std::size_t i = 0; i < data.size(); ++i) buf.expo[i] = std::exp(t * data[i]);
    const double c = std::exp(-0.5 * t * t);
    const auto sol = detail::solve_profile(buf.expo, c, t, sum_x, buf.z);
    ++evals;
    if (detail::better_location(sol.gain, t, best_gain, best_t)) {
      best_gain = sol.gain;
      best_t = t;
      best_p = sol.p;
    }
    return sol.gain;
  };
  double refined_value = best_gain, refined_t = best_t;
  detail::golden_refine(lo, hi, eval, refined_value, refined_t);
  MleResult result;
  result.params = ContaminatedParams{best_p, best_t};
  result.lambda = best_gain;
  result.t_hat = best_t;
  result.loglik = null_loglik_contaminated(data) + 0.5 * best_gain;
  result.iterations = evals;
  return result;
}

inline MleResult lrt_contaminated(std::span<const double> data) {
  detail::ScanBuffers buf;
  return lrt_contaminated(data, buf);
}

// initializer-list conveniences, mostly for tests and examples
inline std::vector<double> z_values(std::initializer_list<double> data, double t) {
  return z_values(std::span<const double>(data.begin(), data.size()), t);
}
inline ProfilePoint profile_weight(std::initializer_list<double> data, double t) {
  return profile_weight(std::span<const double>(data.begin(), data.size()), t);
}
inline MleResult lrt_contaminated(std::initializer_list<double> data) {
  return lrt_contaminated(std::span<const double>(data.begin(), data.size()));
}
inline double null_loglik_contaminated(std::initializer_list<double> data) {
  return null_loglik_contaminated(std::span<const double>(data.begin(), data.size()));
}

// ---------------------------------------------------------------------------
// Two-component mixture with two unknown means, unit variances.
// ---------------------------------------------------------------------------

inline double two_mean_loglik(std::span<const double> x, const TwoMeanParams& params) {
  params.validate();
  if (params.p == 0.0 || params.t1 == params.t2) {
    double s = 0.0;
    for (const double v : x) s += log_norm_pdf(v - params.t1);
    return s;
  }
  if (params.p == 1.0) {
    double s = 0.0;
    for (const double v : x) s += log_norm_pdf(v - params.t2);
    return s;
  }
  // log f = log(1-p) + log phi(x - t1) + softplus(-u), u = a + b x linear in x.
  const double a = std::log((1.0 - params.p) / params.p) + 0.5 * (params.t2 * params.t2 - params.t1 * params.t1);
  const double b = params.t1 - params.t2;
  double s = 0.0;
  for (const double v : x) {
    const double u = a + b * v;
    const double softplus = u > 0.0 ? std::log1p(std::exp(-u)) : -u + std::log1p(std::exp(u));
    const double d = v - params.t1;
    s += -0.5 * d * d + softplus;
  }
  return s + static_cast<double>(x.size()) * (std::log1p(-params.p) - kLogSqrt2Pi);
}

struct EmStepResult {
  TwoMeanParams next;
  double loglik;  // log-likelihood of the parameters handed in
};

/// One EM update.  Responsibilities reduce to a logistic in x, so the E and
/// M steps need a single exp per observation.
inline EmStepResult two_mean_em_step(std::span<const double> x, const TwoMeanParams& cur) {
  cur.validate();
  const std::size_t n = x.size();
  const double sum_x = detail::sum_of(x);
  if (cur.p == 0.0 || cur.p == 1.0 || cur.t1 == cur.t2) {
    // Degenerate component assignments are absorbing: refit the single mean.
    const double mean = sum_x / static_cast<double>(n);
    EmStepResult r;
    r.loglik = two_mean_loglik(x, cur);
    r.next = cur;
    if (cur.p == 0.0) r.next.t1 = mean;
    else if (cur.p == 1.0) r.next.t2 = mean;
    else { r.next.t1 = mean; r.next.t2 = mean; }
    return r;
  }
  const double a = std::log((1.0 - cur.p) / cur.p) + 0.5 * (cur.t2 * cur.t2 - cur.t1 * cur.t1);
  const double b = cur.t1 - cur.t2;
  // Pass 1 is branch-free so it vectorizes: one shared exp(-|u|) feeds the
  // responsibility r = 1/(1+e^u) and the softplus term of the log-likelihood.
  thread_local std::vector<double> r_buf, sp_buf;
  r_buf.resize(n);
  sp_buf.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = a + b * x[i];
    const double e = exp_nonpositive(-std::fabs(u));
    const double denom = 1.0 + e;
    r_buf[i] = (u >= 0.0 ? e : 1.0) / denom;
    sp_buf[i] = (u >= 0.0 ? 0.0 : -u) + log1p_unit(e);
  }
  double ll = 0.0, sr = 0.0, srx = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - cur.t1;
    ll += -0.5 * d * d + sp_buf[i];
    sr += r_buf[i];
    srx += r_buf[i] * x[i];
  }
  ll += static_cast<double>(n) * (std::log1p(-cur.p) - kLogSqrt2Pi);
  EmStepResult out;
  out.loglik = ll;
  const double nn = static_cast<double>(n);
  if (sr <= 0.0) {
    out.next = TwoMeanParams{0.0, sum_x / nn, cur.t2};
  } else if (sr >= nn) {
    out.next = TwoMeanParams{1.0, cur.t1, sum_x / nn};
  } else {
    out.next = TwoMeanParams{sr / nn, (sum_x - srx) / (nn - sr), srx / sr};
  }
  return out;
}

namespace detail {

struct EmRun {
  TwoMeanParams params;
  double loglik;
  int iterations;
  bool converged;
};

inline EmRun run_em(std::span<const double> x, TwoMeanParams init, int max_iter, double tol) {
  TwoMeanParams cur = init;
  double prev_ll = -std::numeric_limits<double>::infinity();
  double cur_ll = prev_ll;
  int it = 0;
  bool converged = false;
  for (it = 1; it <= max_iter; ++it) {
    const auto step = two_mean_em_step(x, cur);
    cur_ll = step.loglik;
    if (std::fabs(cur_ll - prev_ll) < tol) {
      converged = true;
      break;
    }
    prev_ll = cur_ll;
    cur = step.next;
  }
  return EmRun{cur, cur_ll, std::min(it, max_iter), converged};
}

}  // namespace detail

/// Best-of-restarts EM fit of (p, t1, t2).  The first start splits the data
/// at the median; the rest draw locations uniformly from
/// [min(data)-1, max(data)+1].  Labels come back canonical (t1 <= t2).
inline MleResult em_fit_two_mean(std::span<const double> x, int restarts = 10,
                                 std::uint64_t seed = 0) {
  if (x.size() < 2) throw too_few_points_error("em_fit_two_mean: need at least 2 points");
  restarts = std::max(restarts, 1);
  constexpr int kMaxIter = 500;
  constexpr double kTol = 1e-10;

  std::vector<double> sorted(x.begin(), x.end());
  std::sort(sorted.begin(), sorted.end());
  const double median = 0.5 * (sorted[(sorted.size() - 1) / 2] + sorted[sorted.size() / 2]);
  double lo_sum = 0.0, hi_sum = 0.0;
  std::size_t lo_n = 0;
  for (const double v : sorted) {
    if (v <= median) { lo_sum += v; ++lo_n; }
    else hi_sum += v;
  }
  TwoMeanParams moment_init;
  moment_init.p = 0.5;
  moment_init.t1 = lo_sum / static_cast<double>(lo_n);
  moment_init.t2 = lo_n == sorted.size() ? moment_init.t1
                                         : hi_sum / static_cast<double>(sorted.size() - lo_n);

  detail::EmRun best = detail::run_em(x, moment_init, kMaxIter, kTol);
  int total_iters = best.iterations;
  const double box_lo = sorted.front() - 1.0;
  const double box_hi = sorted.back() + 1.0;
  for (int r = 1; r < restarts; ++r) {
    Xoshiro256pp rng(derive_seed(seed, static_cast<std::uint64_t>(r)));
    TwoMeanParams init;
    init.p = rng.uniform();
    init.t1 = box_lo + (box_hi - box_lo) * rng.uniform();
    init.t2 = box_lo + (box_hi - box_lo) * rng.uniform();
    const auto run = detail::run_em(x, init, kMaxIter, kTol);
    total_iters += run.iterations;
    if (run.loglik > best.loglik) best = run;
  }

  const double mean = detail::sum_of(x) / static_cast<double>(x.size());
  double null_ll = 0.0;
  for (const double v : x) null_ll += log_norm_pdf(v - mean);
  // The single-normal fit lies inside the full model; keep it as a candidate
  // so the reported maximum never falls below it.
  if (null_ll > best.loglik) best = detail::EmRun{TwoMeanParams{0.5, mean, mean}, null_ll, 1, true};

  MleResult result;
  result.params = best.params.canonical();
  result.loglik = best.loglik;
  result.converged = best.converged;
  result.iterations = total_iters;
  result.lambda = 2.0 * (best.loglik - null_ll);
  if (result.lambda < 0.0) {
    result.lambda = 0.0;
    result.lambda_clamped = true;
  }
  return result;
}

/// Classical LR statistic for the two-unknown-means model.  The null MLE is
/// the sample mean; lambda is clamped at zero (with a flag) if the EM fit
/// lands below the null.
inline MleResult lrt_two_mean(std::span<const double> x, int restarts = 10,
                              std::uint64_t seed = 0) {
  if (x.size() < 2) throw too_few_points_error("lrt_two_mean: need at least 2 points");
  return em_fit_two_mean(x, restarts, seed);
}

}  // namespace unimix
