// Acceptance suite: reproduces the published size/power tables and checks the
// statistic identities end to end.  Prints one PASS/FAIL line per criterion
// and exits with the number of failures.  The n = 1e7 table check lives in
// acceptance_tab4 (long-running, excluded from the default ctest set).

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "unimix/unimix.hpp"

using namespace unimix;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
int failures = 0;

void report(int id, const std::string& label, bool pass, const std::string& detail = "") {
  std::printf("%-4s criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", id, label.c_str(),
              detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::vector<MethodSpec> full_method_grid() {
  std::vector<MethodSpec> methods{{Method::lrt, kNaN, ThresholdRule::asymptotic_lrt}};
  for (double m0 : {0.4, 0.5, 0.6}) {
    methods.push_back({Method::slrt, m0, ThresholdRule::universal});
    methods.push_back({Method::slrt, m0, ThresholdRule::asymptotic_slrt});
  }
  return methods;
}

SimReport run_table(ScenarioCase case_id, std::uint64_t seed) {
  ExperimentSpec spec;
  spec.scenario = AlternativeScenario{case_id, 0.0, 1000};
  spec.gammas = {0.0, 0.5, 1.0, 2.0, 4.0};
  spec.methods = full_method_grid();
  spec.reps = 1000;
  spec.alpha = 0.05;
  spec.seed = seed;
  return run_experiment(spec);
}

struct TableCheck {
  int cells = 0;
  int cells_failed = 0;
  std::string worst;
};

TableCheck check_against_fixture(const SimReport& report,
                                 bool (*row_filter)(const SimRow&) = nullptr) {
  const ReferenceTable table = parse_reference_csv(bundled_reference_csv(report.case_id));
  const auto verdicts = compare_to_reference(report, table, 1000, 3.0);
  TableCheck check;
  double worst_excess = -1e300;
  for (const auto& v : verdicts) {
    if (row_filter && !row_filter(v.observed)) continue;
    ++check.cells;
    const double excess = std::fabs(v.observed.frequency - v.reference) - v.band;
    if (excess > worst_excess) {
      worst_excess = excess;
      char buf[160];
      std::snprintf(buf, sizeof(buf), "%s m0=%.1f %s gamma=%g: obs %.3f ref %.3f band %.3f",
                    to_string(v.observed.method.method), v.observed.method.m0,
                    to_string(v.observed.method.rule), v.observed.gamma, v.observed.frequency,
                    v.reference, v.band);
      check.worst = buf;
    }
    if (!v.pass) ++check.cells_failed;
  }
  return check;
}

bool trend_nondecreasing(const SimReport& report) {
  // Rejection frequency must be non-decreasing in gamma once +-2 SE bands
  // are pooled, within every (method, m0, rule) row.
  for (std::size_t base = 0; base + report.gammas.size() <= report.rows.size();
       base += report.gammas.size()) {
    for (std::size_t j = 1; j < report.gammas.size(); ++j) {
      const SimRow& prev = report.rows[base + j - 1];
      const SimRow& cur = report.rows[base + j];
      if (cur.frequency < prev.frequency - 2.0 * (prev.se + cur.se)) return false;
    }
  }
  return true;
}

}  // namespace

int main() {
  std::printf("acceptance suite (alpha = 0.05, reference tables at 1000 replications)\n");

  // ---- Criteria 1, 2: table reproduction ---------------------------------
  const SimReport table_i = run_table(ScenarioCase::i, 1001);
  {
    auto filter = +[](const SimRow& row) {
      if (row.method.method == Method::lrt) return true;
      return std::fabs(row.method.m0 - 0.5) < 1e-9;
    };
    const TableCheck c = check_against_fixture(table_i, filter);
    char detail[224];
    std::snprintf(detail, sizeof(detail), "%d/%d cells in band; tightest: %s",
                  c.cells - c.cells_failed, c.cells, c.worst.c_str());
    report(1, "case i table (LRT row, SLRT m0=0.5 rows)", c.cells_failed == 0, detail);
  }

  const SimReport table_ii = run_table(ScenarioCase::ii, 1002);
  const SimReport table_iv = run_table(ScenarioCase::iv, 1004);
  const SimReport table_v = run_table(ScenarioCase::v, 1005);
  {
    const TableCheck c2 = check_against_fixture(table_ii);
    const TableCheck c4 = check_against_fixture(table_iv);
    const TableCheck c5 = check_against_fixture(table_v);
    const int bad = c2.cells_failed + c4.cells_failed + c5.cells_failed;
    char detail[224];
    std::snprintf(detail, sizeof(detail), "case ii %d/35, case iv %d/35, case v %d/35 in band",
                  35 - c2.cells_failed, 35 - c4.cells_failed, 35 - c5.cells_failed);
    report(2, "case ii and two-mean cases iv-v tables", bad == 0, detail);
  }

  std::printf("---- criterion  3: case iii (n=1e7) runs in acceptance_tab4 (long mode)\n");

  // ---- Criterion 4: e-value bound ----------------------------------------
  ExperimentSpec evspec;
  evspec.scenario = AlternativeScenario{ScenarioCase::i, 0.0, 1000};
  evspec.gammas = {0.0};
  evspec.methods = {{Method::slrt, 0.4, ThresholdRule::universal},
                    {Method::slrt, 0.5, ThresholdRule::universal},
                    {Method::slrt, 0.6, ThresholdRule::universal}};
  evspec.reps = 10000;
  evspec.seed = 4001;
  const SimReport evreport = run_experiment(evspec);
  {
    bool pass = true;
    std::string detail;
    for (std::size_t u = 0; u < evreport.units.size(); ++u) {
      double mean = 0.0, sq = 0.0;
      for (int r = 0; r < evreport.reps; ++r) {
        const double e = std::exp(0.5 * evreport.statistic(u, 0, r));
        mean += e;
        sq += e * e;
      }
      mean /= evreport.reps;
      const double var = sq / evreport.reps - mean * mean;
      const double se = std::sqrt(var / evreport.reps);
      char buf[80];
      std::snprintf(buf, sizeof(buf), "m0=%.1f mean %.4f (+3se %.4f) ", evreport.units[u].m0,
                    mean, mean + 3.0 * se);
      detail += buf;
      pass = pass && mean <= 1.0 + 3.0 * se;
    }
    report(4, "e-value mean <= 1 + 3se over 1e4 null replications", pass, detail);
  }

  // ---- Criterion 5: finite-sample validity --------------------------------
  {
    bool pass = true;
    double worst = 0.0;
    for (const SimReport* rep : {&table_i, &table_ii, &table_iv, &table_v}) {
      for (const SimRow& row : rep->rows) {
        if (row.gamma != 0.0 || row.method.rule != ThresholdRule::universal) continue;
        const double bound = 0.05 + 3.0 * std::sqrt(0.05 * 0.95 / row.reps);
        worst = std::max(worst, row.frequency);
        pass = pass && row.frequency <= bound;
      }
    }
    const double u_thr = universal_threshold(0.05);
    for (std::size_t u = 0; u < evreport.units.size(); ++u) {
      int rejections = 0;
      for (int r = 0; r < evreport.reps; ++r)
        if (evreport.statistic(u, 0, r) > u_thr) ++rejections;
      const double freq = double(rejections) / evreport.reps;
      const double bound = 0.05 + 3.0 * std::sqrt(0.05 * 0.95 / evreport.reps);
      worst = std::max(worst, freq);
      pass = pass && freq <= bound;
    }
    char detail[96];
    std::snprintf(detail, sizeof(detail), "largest null universal rejection rate %.4f", worst);
    report(5, "universal threshold is finite-sample valid in every H0 run", pass, detail);
  }

  // ---- Criterion 6: analytic identities -----------------------------------
  {
    bool pass = true;
    std::string detail;
    for (double x : {2.0, -1.5, 0.3, 4.2}) {
      const double lambda = lrt_contaminated(std::vector<double>{x}).lambda;
      if (std::fabs(lambda - x * x) > 1e-9) {
        pass = false;
        detail += "lambda_1 != X^2 at X=" + format_double(x) + " ";
      }
    }
    const std::vector<double> zeros(1000, 0.0);
    if (lrt_contaminated(zeros).lambda != 0.0) {
      pass = false;
      detail += "lambda(zeros) != 0 ";
    }
    const Sample s = sample_scenario({ScenarioCase::i, 1.0, 400}, 606);
    const TestResult tr = slrt_contaminated(s.values, SplitConfig{0.5, false, 0});
    if (!tr.e_value || *tr.e_value != std::exp(0.5 * tr.statistic)) {
      pass = false;
      detail += "e-value != exp(stat/2) ";
    }
    for (std::size_t n : {std::size_t{1000}, std::size_t{50000}}) {
      for (double alpha : {0.01, 0.05, 0.10}) {
        const double inv_lrt = gumbel_standardize_lambda(asymptotic_lrt_threshold(n, alpha), n);
        if (std::fabs(inv_lrt + 2.0 * std::log(std::log(1.0 / (1.0 - alpha)))) > 1e-9) {
          pass = false;
          detail += "lrt threshold inversion ";
        }
        for (double m0 : {0.4, 0.5, 0.6}) {
          const double inv = normal_standardize_split(asymptotic_slrt_threshold(n, alpha, m0), n, m0);
          if (std::fabs(inv - norm_quantile(1.0 - alpha)) > 1e-9) {
            pass = false;
            detail += "slrt threshold inversion ";
          }
        }
      }
    }
    report(6, "analytic identities exact to 1e-9", pass, detail);
  }

  // ---- Criterion 7: oracle equivalence ------------------------------------
  {
    bool pass = true;
    double worst_gap = -1e300, worst_kkt = 0.0;
    for (int sample_idx = 0; sample_idx < 100; ++sample_idx) {
      Xoshiro256pp rng(derive_seed(7007, sample_idx));
      std::vector<double> x(50);
      for (auto& v : x) v = rng.normal();
      const MleResult fit = lrt_contaminated(x);
      const double t_max = location_scan_range(x);
      // Independent dense oracle: t grid step 1e-4, weight grid step 1e-4.
      // The objective is concave in the weight, so the grid argmax sits where
      // the slope changes sign; binary search finds it exactly.
      double oracle = 0.0;
      std::vector<double> z(x.size());
      const long k_hi = static_cast<long>(std::floor(t_max / 1e-4));
      for (long k = -k_hi; k <= k_hi; ++k) {
        const double t = 1e-4 * double(k);
        const double half_t2 = 0.5 * t * t;
        double slope0 = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
          z[i] = std::expm1(t * x[i] - half_t2);
          slope0 += z[i];
        }
        if (slope0 <= 0.0) continue;
        auto slope_at = [&](double p) {
          double g = 0.0;
          for (double zi : z) g += zi / (1.0 + p * zi);
          return g;
        };
        auto gain_at = [&](double p) {
          double g = 0.0;
          for (double zi : z) g += std::log1p(p * zi);
          return 2.0 * g;
        };
        std::size_t lo = 0, hi = 10000;
        while (lo < hi) {
          const std::size_t mid = (lo + hi + 1) / 2;
          if (slope_at(double(mid) * 1e-4) > 0.0) lo = mid;
          else hi = mid - 1;
        }
        oracle = std::max(oracle, gain_at(double(lo) * 1e-4));
        if (lo < 10000) oracle = std::max(oracle, gain_at(double(lo + 1) * 1e-4));
      }
      worst_gap = std::max(worst_gap, oracle - fit.lambda);
      if (fit.lambda < oracle - 1e-6) pass = false;
      const ProfilePoint point = profile_weight(x, fit.t_hat);
      worst_kkt = std::max(worst_kkt, point.kkt_residual);
      if (point.kkt_residual > 1e-10 * double(x.size())) pass = false;
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "max oracle-production gap %.2e, max KKT residual %.2e",
                  worst_gap, worst_kkt);
    report(7, "production lambda dominates the dense oracle on 100 samples", pass, detail);
  }

  // ---- Criterion 8: detection-boundary trend ------------------------------
  {
    const bool pass = trend_nondecreasing(table_i) && trend_nondecreasing(table_ii) &&
                      trend_nondecreasing(table_iv) && trend_nondecreasing(table_v);
    report(8, "rejection frequency non-decreasing in gamma (2se pooling)", pass);
  }

  // ---- Criterion 9: contiguous alternative --------------------------------
  {
    ExperimentSpec base;
    base.scenario = AlternativeScenario{ScenarioCase::contig, 0.0, 10000};
    base.scenario.contig_mu = 1.0;
    base.methods = {{Method::slrt, 0.5, ThresholdRule::universal},
                    {Method::slrt, 0.5, ThresholdRule::asymptotic_slrt}};
    base.reps = 2000;
    base.seed = 9001;
    // Same seed and gamma slot: the alternative run reuses the null run's
    // base normals, so the two rates are paired through common random numbers.
    ExperimentSpec null_spec = base;
    null_spec.gammas = {0.0};
    ExperimentSpec alt_spec = base;
    alt_spec.gammas = {1.0};
    const SimReport null_run = run_experiment(null_spec);
    const SimReport alt_run = run_experiment(alt_spec);
    double universal_rate = 0.0, null_csplit = 0.0, alt_csplit = 0.0;
    for (const SimRow& row : alt_run.rows) {
      if (row.method.rule == ThresholdRule::universal) universal_rate = row.frequency;
      if (row.method.rule == ThresholdRule::asymptotic_slrt) alt_csplit = row.frequency;
    }
    for (const SimRow& row : null_run.rows)
      if (row.method.rule == ThresholdRule::asymptotic_slrt) null_csplit = row.frequency;
    const bool pass = universal_rate <= 0.01 && std::fabs(alt_csplit - null_csplit) <= 0.02;
    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "universal rate %.4f, c-split rates %.4f (gamma=1) vs %.4f (gamma=0)",
                  universal_rate, alt_csplit, null_csplit);
    report(9, "contiguous alternative is null-equivalent", pass, detail);
  }

  // ---- Criterion 10: determinism ------------------------------------------
  {
    ExperimentSpec spec;
    spec.scenario = AlternativeScenario{ScenarioCase::i, 0.0, 500};
    spec.gammas = {0.0, 1.0, 4.0};
    spec.methods = full_method_grid();
    spec.reps = 100;
    spec.seed = 555;
    const SimReport a = run_experiment(spec, 1);
    const SimReport b = run_experiment(spec, 2);
    const bool pass = report_to_csv(a) == report_to_csv(b);
    report(10, "identical seeds give byte-identical reports across worker counts", pass);
  }

  std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
