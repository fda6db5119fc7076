#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "unimix/errors.hpp"
#include "unimix/math.hpp"
#include "unimix/rng.hpp"

namespace unimix {

/// Observations plus the provenance they were generated with.
struct Sample {
  std::vector<double> values;
  std::uint64_t seed = 0;
  std::string scenario;

  std::size_t size() const { return values.size(); }
  std::span<const double> view() const { return values; }
};

/// Contaminated Gaussian mixture (1-p) N(0,1) + p N(t,1).
/// The null (standard normal) holds exactly when p = 0 or t = 0.
struct ContaminatedParams {
  double p = 0.0;
  double t = 0.0;

  bool is_null() const { return p == 0.0 || t == 0.0; }

  void validate() const {
    if (!(p >= 0.0 && p <= 1.0))
      throw invalid_scenario_error("ContaminatedParams: mixing weight outside [0, 1]");
    if (!std::isfinite(t))
      throw invalid_scenario_error("ContaminatedParams: non-finite location");
  }
};

/// Two-component Gaussian mixture (1-p) N(t1,1) + p N(t2,1) with free means.
/// (p, t1, t2) and (1-p, t2, t1) label the same density.
struct TwoMeanParams {
  double p = 0.0;
  double t1 = 0.0;
  double t2 = 0.0;

  void validate() const {
    if (!(p >= 0.0 && p <= 1.0))
      throw invalid_scenario_error("TwoMeanParams: mixing weight outside [0, 1]");
    if (!std::isfinite(t1) || !std::isfinite(t2))
      throw invalid_scenario_error("TwoMeanParams: non-finite location");
  }

  /// Swap labels so t1 <= t2.
  TwoMeanParams canonical() const {
    if (t1 <= t2) return *this;
    return TwoMeanParams{1.0 - p, t2, t1};
  }
};

inline double log_density_contaminated(const ContaminatedParams& params, double x) {
  params.validate();
  if (params.p == 0.0) return log_norm_pdf(x);
  if (params.p == 1.0) return log_norm_pdf(x - params.t);
  return log_sum_exp(std::log1p(-params.p) + log_norm_pdf(x),
                     std::log(params.p) + log_norm_pdf(x - params.t));
}

inline double log_density_two_mean(const TwoMeanParams& params, double x) {
  params.validate();
  if (params.p == 0.0) return log_norm_pdf(x - params.t1);
  if (params.p == 1.0) return log_norm_pdf(x - params.t2);
  return log_sum_exp(std::log1p(-params.p) + log_norm_pdf(x - params.t1),
                     std::log(params.p) + log_norm_pdf(x - params.t2));
}

/// Simulation scenarios.  Cases i-v follow the alternative sequences used in
/// the power study; `contig` is the contiguous sequence q_n = gamma n^{-1/2}/mu,
/// mu_n = mu.
enum class ScenarioCase { i, ii, iii, iv, v, contig };

inline const char* to_string(ScenarioCase c) {
  switch (c) {
    case ScenarioCase::i: return "i";
    case ScenarioCase::ii: return "ii";
    case ScenarioCase::iii: return "iii";
    case ScenarioCase::iv: return "iv";
    case ScenarioCase::v: return "v";
    case ScenarioCase::contig: return "contig";
  }
  return "?";
}

inline bool is_two_mean_case(ScenarioCase c) {
  return c == ScenarioCase::iv || c == ScenarioCase::v;
}

struct AlternativeScenario {
  ScenarioCase case_id = ScenarioCase::i;
  double gamma = 0.0;
  std::size_t n = 0;
  double contig_mu = 1.0;  // only used by ScenarioCase::contig
};

/// Concrete mixture parameters for a scenario.  Contaminated cases have
/// mu1 = 0; the generated data follow (1-q) N(mu1,1) + q N(mu2,1).
struct ResolvedScenario {
  bool two_mean = false;
  double q = 0.0;
  double mu1 = 0.0;
  double mu2 = 0.0;
};

inline ResolvedScenario resolve_scenario(const AlternativeScenario& scenario) {
  if (scenario.n < 3)
    throw degenerate_size_error("resolve_scenario: n must be at least 3 so log log n > 0");
  if (!std::isfinite(scenario.gamma))
    throw invalid_scenario_error("resolve_scenario: non-finite gamma");
  const double n = static_cast<double>(scenario.n);
  const double s = std::sqrt(std::log(std::log(n)) / n);  // (n^{-1} ln ln n)^{1/2}
  ResolvedScenario r;
  switch (scenario.case_id) {
    case ScenarioCase::i:
    case ScenarioCase::iii:
      r.q = scenario.gamma * s * std::sqrt(std::log(n));
      r.mu2 = 1.0 / std::sqrt(std::log(n));
      break;
    case ScenarioCase::ii:
      r.q = 0.5;
      r.mu2 = 2.0 * scenario.gamma * s;
      break;
    case ScenarioCase::iv:
      r.two_mean = true;
      r.q = 0.5;
      r.mu1 = -4.0 * scenario.gamma * s;
      r.mu2 = 4.0 * scenario.gamma * s;
      break;
    case ScenarioCase::v:
      r.two_mean = true;
      r.q = 0.5;
      r.mu1 = -3.0 * scenario.gamma * s;
      r.mu2 = 5.0 * scenario.gamma * s;
      break;
    case ScenarioCase::contig:
      if (scenario.contig_mu == 0.0 || !std::isfinite(scenario.contig_mu))
        throw invalid_scenario_error("resolve_scenario: contig scenario needs a nonzero mu");
      r.q = scenario.gamma / (std::sqrt(n) * scenario.contig_mu);
      r.mu2 = scenario.contig_mu;
      break;
  }
  if (!(r.q >= 0.0 && r.q <= 1.0) || !std::isfinite(r.q))
    throw invalid_scenario_error("resolve_scenario: mixing weight outside [0, 1]");
  return r;
}

/// Draw n observations via the indicator representation
/// X_i = X0_i + (J_i ? mu2 : mu1) with J_i ~ Bernoulli(q).
/// Deterministic given (scenario, seed); one normal and one Bernoulli
/// uniform are consumed per observation regardless of q.
inline Sample sample_scenario(const AlternativeScenario& scenario, std::uint64_t seed) {
  const ResolvedScenario r = resolve_scenario(scenario);
  Xoshiro256pp rng(derive_seed(seed));
  Sample out;
  out.seed = seed;
  out.scenario = to_string(scenario.case_id);
  out.values.resize(scenario.n);
  for (auto& x : out.values) {
    const double base = rng.normal();
    const bool shifted = rng.bernoulli(r.q);
    x = base + (shifted ? r.mu2 : r.mu1);
  }
  return out;
}

}  // namespace unimix
