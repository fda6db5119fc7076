#pragma once

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <exception>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "unimix/errors.hpp"
#include "unimix/fixtures.hpp"
#include "unimix/io.hpp"
#include "unimix/likelihood.hpp"
#include "unimix/model.hpp"
#include "unimix/rng.hpp"
#include "unimix/universal.hpp"

namespace unimix {

enum class Method { lrt, slrt };

inline const char* to_string(Method m) { return m == Method::lrt ? "LRT" : "SLRT"; }

struct MethodSpec {
  Method method = Method::lrt;
  double m0 = std::numeric_limits<double>::quiet_NaN();  // SLRT only
  ThresholdRule rule = ThresholdRule::asymptotic_lrt;
};

struct ExperimentSpec {
  AlternativeScenario scenario;  // gamma field is ignored; gammas below drive it
  std::vector<double> gammas;
  std::vector<MethodSpec> methods;
  int reps = 1000;
  double alpha = 0.05;
  std::uint64_t seed = 1;
  int em_restarts = 10;

  void validate() const {
    if (reps < 1) throw invalid_scenario_error("ExperimentSpec: reps must be at least 1");
    if (gammas.empty()) throw invalid_scenario_error("ExperimentSpec: gamma list is empty");
    if (methods.empty()) throw invalid_scenario_error("ExperimentSpec: method list is empty");
    if (!(alpha > 0.0 && alpha < 1.0))
      throw invalid_level_error("ExperimentSpec: alpha must lie in (0, 1)");
  }
};

/// A (method, m0) pair whose statistic is computed once per replication and
/// shared by every threshold rule that reads it.
struct StatUnit {
  Method method;
  double m0;  // NaN for LRT
};

struct SimRow {
  MethodSpec method;
  double gamma = 0.0;
  double frequency = 0.0;
  double se = 0.0;
  int reps = 0;
  std::size_t unit = 0;  // index into SimReport::units
};

struct SimReport {
  ScenarioCase case_id = ScenarioCase::i;
  std::size_t n = 0;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  int reps = 0;
  std::vector<double> gammas;
  std::vector<StatUnit> units;
  std::vector<SimRow> rows;
  // statistics[u][j * reps + r]: statistic of unit u at gammas[j], replication r.
  std::vector<std::vector<double>> statistics;
  double wall_seconds = 0.0;

  double statistic(std::size_t unit, std::size_t gamma_idx, int rep) const {
    return statistics[unit][gamma_idx * static_cast<std::size_t>(reps) + static_cast<std::size_t>(rep)];
  }
};

/// Monte Carlo half-width k sqrt(f(1-f)/reps).
inline double mc_tolerance(double frequency, int reps, double k = 3.0) {
  if (reps < 1) throw invalid_scenario_error("mc_tolerance: reps must be at least 1");
  if (!(frequency >= 0.0 && frequency <= 1.0))
    throw invalid_scenario_error("mc_tolerance: frequency must lie in [0, 1]");
  return k * std::sqrt(frequency * (1.0 - frequency) / static_cast<double>(reps));
}

namespace detail {

inline bool same_m0(double a, double b) {
  const bool na = std::isnan(a), nb = std::isnan(b);
  if (na || nb) return na && nb;
  return std::fabs(a - b) < 1e-9;
}

}  // namespace detail

/// Shared-sample Monte Carlo driver.  Replication r under gammas[j] draws its
/// sample from the stream (seed, r, j); every method sees that same sample, so
/// method contrasts are paired.  Output is independent of `threads`.
inline SimReport run_experiment(const ExperimentSpec& spec, int threads = 0) {
  spec.validate();
  const auto t_begin = std::chrono::steady_clock::now();

  SimReport report;
  report.case_id = spec.scenario.case_id;
  report.n = spec.scenario.n;
  report.alpha = spec.alpha;
  report.seed = spec.seed;
  report.reps = spec.reps;
  report.gammas = spec.gammas;

  // Dedupe (method, m0) into stat units; keep rows in method-list order.
  for (const MethodSpec& m : spec.methods) {
    std::size_t u = 0;
    for (; u < report.units.size(); ++u)
      if (report.units[u].method == m.method && detail::same_m0(report.units[u].m0, m.m0)) break;
    if (u == report.units.size()) report.units.push_back(StatUnit{m.method, m.m0});
  }
  const std::size_t n_units = report.units.size();
  const std::size_t n_gammas = spec.gammas.size();
  report.statistics.assign(n_units, std::vector<double>(n_gammas * static_cast<std::size_t>(spec.reps), 0.0));

  const bool two_mean = is_two_mean_case(spec.scenario.case_id);
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, spec.reps));

  std::atomic<int> next_rep{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  std::string error_context;

  auto worker = [&]() {
    detail::ScanBuffers buf;
    for (int r = next_rep.fetch_add(1); r < spec.reps; r = next_rep.fetch_add(1)) {
      for (std::size_t j = 0; j < n_gammas; ++j) {
        try {
          AlternativeScenario scenario = spec.scenario;
          scenario.gamma = spec.gammas[j];
          const Sample sample = sample_scenario(
              scenario, derive_seed(spec.seed, static_cast<std::uint64_t>(r), j));
          for (std::size_t u = 0; u < n_units; ++u) {
            const StatUnit& unit = report.units[u];
            double stat = 0.0;
            if (unit.method == Method::lrt) {
              if (two_mean) {
                stat = lrt_two_mean(sample.values, spec.em_restarts,
                                    derive_seed(spec.seed, static_cast<std::uint64_t>(r), j, 1000 + u))
                           .lambda;
              } else {
                stat = lrt_contaminated(sample.values, buf).lambda;
              }
            } else {
              SplitConfig config;
              config.m0 = unit.m0;
              const auto [d0, d1] = split_view(sample.values, config);
              if (two_mean) {
                const MleResult fit = em_fit_two_mean(
                    d1, spec.em_restarts,
                    derive_seed(spec.seed, static_cast<std::uint64_t>(r), j, 1000 + u));
                const double null_mean =
                    std::accumulate(d0.begin(), d0.end(), 0.0) / static_cast<double>(d0.size());
                stat = split_lr_statistic_two_mean(d0, fit.two_mean(), null_mean);
              } else {
                const MleResult fit = lrt_contaminated(d1, buf);
                stat = split_lr_statistic_contaminated(d0, fit.contaminated());
              }
            }
            report.statistics[u][j * static_cast<std::size_t>(spec.reps) + static_cast<std::size_t>(r)] = stat;
          }
        } catch (...) {
          std::lock_guard<std::mutex> guard(error_mutex);
          if (!first_error) {
            first_error = std::current_exception();
            std::ostringstream ctx;
            ctx << "gamma=" << spec.gammas[j] << ", replication=" << r;
            error_context = ctx.str();
          }
          return;
        }
      }
    }
  };

  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (first_error) {
    try {
      std::rethrow_exception(first_error);
    } catch (const std::exception& e) {
      throw error(std::string(e.what()) + " [at " + error_context + "]");
    }
  }

  for (const MethodSpec& m : spec.methods) {
    std::size_t u = 0;
    for (; u < n_units; ++u)
      if (report.units[u].method == m.method && detail::same_m0(report.units[u].m0, m.m0)) break;
    const double threshold = threshold_for(m.rule, spec.scenario.n, spec.alpha,
                                           std::isnan(m.m0) ? 0.5 : m.m0);
    for (std::size_t j = 0; j < n_gammas; ++j) {
      int count = 0;
      for (int r = 0; r < spec.reps; ++r)
        if (report.statistic(u, j, r) > threshold) ++count;
      SimRow row;
      row.method = m;
      row.gamma = spec.gammas[j];
      row.reps = spec.reps;
      row.frequency = static_cast<double>(count) / static_cast<double>(spec.reps);
      row.se = std::sqrt(row.frequency * (1.0 - row.frequency) / static_cast<double>(spec.reps));
      row.unit = u;
      report.rows.push_back(row);
    }
  }

  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_begin).count();
  return report;
}

// ---------------------------------------------------------------------------
// Plain-text experiment configs: `key = value` lines, '#' comments.
// Recognized keys: case, n, gamma (comma list), reps, seed, alpha,
// m0 (comma list), methods (comma list of lrt/slrt), em_restarts, mu.
// ---------------------------------------------------------------------------

struct ExperimentConfig {
  std::string case_name = "i";
  std::size_t n = 0;  // 0: per-case default
  std::vector<double> gammas{0.0, 0.5, 1.0, 2.0, 4.0};
  int reps = -1;  // -1: per-case default
  std::uint64_t seed = 1;
  double alpha = 0.05;
  std::vector<double> m0s{0.4, 0.5, 0.6};
  std::vector<std::string> methods{"lrt", "slrt"};
  int em_restarts = 10;
  double contig_mu = 1.0;
};

inline ExperimentConfig parse_experiment_config(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string line;
  long line_no = 0;
  auto parse_list = [](const std::string& value, long ln) {
    std::vector<double> out;
    for (const std::string& field : split_csv_line(value)) out.push_back(parse_double(field, ln));
    return out;
  };
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw parse_error("config line is not 'key = value'", line_no);
      continue;
    }
    auto trim = [](std::string s) {
      const std::size_t b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const std::size_t e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "case") {
      config.case_name = value;
    } else if (key == "n") {
      config.n = static_cast<std::size_t>(parse_double(value, line_no));
    } else if (key == "gamma") {
      config.gammas = parse_list(value, line_no);
    } else if (key == "reps") {
      config.reps = static_cast<int>(parse_double(value, line_no));
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(parse_double(value, line_no));
    } else if (key == "alpha") {
      config.alpha = parse_double(value, line_no);
    } else if (key == "m0") {
      config.m0s = parse_list(value, line_no);
    } else if (key == "methods") {
      config.methods.clear();
      for (const std::string& m : split_csv_line(value)) config.methods.push_back(trim(m));
    } else if (key == "em_restarts") {
      config.em_restarts = static_cast<int>(parse_double(value, line_no));
    } else if (key == "mu") {
      config.contig_mu = parse_double(value, line_no);
    } else {
      throw parse_error("unknown config key '" + key + "'", line_no);
    }
  }
  return config;
}

// ---------------------------------------------------------------------------
// Reference-table comparison.
// ---------------------------------------------------------------------------

struct ReferenceRow {
  std::string method;
  double m0 = std::numeric_limits<double>::quiet_NaN();
  std::string rule;
  double gamma = 0.0;
  double frequency = 0.0;
};

struct ReferenceTable {
  std::string case_name;
  std::vector<ReferenceRow> rows;
};

inline ReferenceTable parse_reference_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  ReferenceTable table;
  long line_no = 0;
  bool header = true;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (header) {
      header = false;
      continue;
    }
    const auto fields = split_csv_line(line);
    if (fields.size() != 6)
      throw parse_error("reference table row needs 6 fields", line_no);
    ReferenceRow row;
    table.case_name = fields[0];
    row.method = fields[1];
    row.m0 = fields[2].empty() ? std::numeric_limits<double>::quiet_NaN()
                               : parse_double(fields[2], line_no);
    row.rule = fields[3];
    row.gamma = parse_double(fields[4], line_no);
    row.frequency = parse_double(fields[5], line_no);
    table.rows.push_back(row);
  }
  return table;
}

struct CellVerdict {
  SimRow observed;
  double reference = 0.0;
  double band = 0.0;
  bool pass = false;
};

/// Per-cell comparison: pass iff |observed - reference| is within the sum of
/// the two 3-sigma Monte Carlo half-widths (both runs carry sampling error).
inline std::vector<CellVerdict> compare_to_reference(const SimReport& report,
                                                     const ReferenceTable& reference,
                                                     int reference_reps = 1000,
                                                     double k = 3.0) {
  std::vector<CellVerdict> verdicts;
  for (const SimRow& row : report.rows) {
    const ReferenceRow* match = nullptr;
    for (const ReferenceRow& ref : reference.rows) {
      if (ref.method != to_string(row.method.method)) continue;
      if (!detail::same_m0(ref.m0, row.method.m0)) continue;
      if (ref.rule != to_string(row.method.rule)) continue;
      if (std::fabs(ref.gamma - row.gamma) > 1e-12) continue;
      match = &ref;
      break;
    }
    if (!match) {
      std::ostringstream msg;
      msg << "compare_to_reference: no reference cell for (" << to_string(row.method.method)
          << ", m0=" << row.method.m0 << ", " << to_string(row.method.rule)
          << ", gamma=" << row.gamma << ")";
      throw key_mismatch_error(msg.str());
    }
    CellVerdict verdict;
    verdict.observed = row;
    verdict.reference = match->frequency;
    verdict.band = mc_tolerance(match->frequency, reference_reps, k) +
                   mc_tolerance(row.frequency, row.reps, k);
    verdict.pass = std::fabs(row.frequency - match->frequency) <= verdict.band;
    verdicts.push_back(verdict);
  }
  return verdicts;
}

// ---------------------------------------------------------------------------
// Rendering.
// ---------------------------------------------------------------------------

inline std::string report_to_csv(const SimReport& report) {
  std::ostringstream out;
  out << "case,method,m0,rule,gamma,frequency,se,reps,seed\n";
  for (const SimRow& row : report.rows) {
    out << to_string(report.case_id) << ',' << to_string(row.method.method) << ',';
    if (!std::isnan(row.method.m0)) out << format_double(row.method.m0);
    out << ',' << to_string(row.method.rule) << ',' << format_double(row.gamma) << ','
        << format_double(row.frequency) << ',' << format_double(row.se) << ',' << row.reps << ','
        << report.seed << '\n';
  }
  return out.str();
}

inline std::string verdicts_to_csv(const SimReport& report, const std::vector<CellVerdict>& verdicts) {
  std::ostringstream out;
  out << "case,method,m0,rule,gamma,frequency,reference,band,verdict\n";
  for (const CellVerdict& v : verdicts) {
    out << to_string(report.case_id) << ',' << to_string(v.observed.method.method) << ',';
    if (!std::isnan(v.observed.method.m0)) out << format_double(v.observed.method.m0);
    out << ',' << to_string(v.observed.method.rule) << ',' << format_double(v.observed.gamma)
        << ',' << format_double(v.observed.frequency) << ',' << format_double(v.reference) << ','
        << format_double(v.band) << ',' << (v.pass ? "pass" : "fail") << '\n';
  }
  return out.str();
}

}  // namespace unimix
