#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <vector>

#include "unimix/simulation.hpp"

using namespace unimix;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ExperimentSpec small_case_i() {
  ExperimentSpec spec;
  spec.scenario = AlternativeScenario{ScenarioCase::i, 0.0, 200};
  spec.gammas = {0.0, 2.0};
  spec.methods = {MethodSpec{Method::lrt, kNaN, ThresholdRule::asymptotic_lrt},
                  MethodSpec{Method::slrt, 0.5, ThresholdRule::universal},
                  MethodSpec{Method::slrt, 0.5, ThresholdRule::asymptotic_slrt}};
  spec.reps = 40;
  spec.seed = 2024;
  return spec;
}

}  // namespace

TEST_CASE("mc tolerance closed forms") {
  CHECK_THAT(mc_tolerance(0.5, 1000, 3.0), Catch::Matchers::WithinAbs(0.047434164902525691, 1e-12));
  CHECK_THAT(mc_tolerance(0.05, 1000, 3.0), Catch::Matchers::WithinAbs(0.020676073128135333, 1e-12));
  CHECK(mc_tolerance(0.0, 1000) == 0.0);
  CHECK(mc_tolerance(1.0, 1000) == 0.0);
  CHECK_THROWS_AS(mc_tolerance(0.5, 0), invalid_scenario_error);
  CHECK_THROWS_AS(mc_tolerance(1.2, 100), invalid_scenario_error);
}

TEST_CASE("single replication yields degenerate frequencies") {
  ExperimentSpec spec = small_case_i();
  spec.reps = 1;
  const SimReport report = run_experiment(spec, 1);
  for (const SimRow& row : report.rows) {
    CHECK((row.frequency == 0.0 || row.frequency == 1.0));
    CHECK(row.se == 0.0);
  }
}

TEST_CASE("report is byte-identical across worker counts") {
  const ExperimentSpec spec = small_case_i();
  const SimReport a = run_experiment(spec, 1);
  const SimReport b = run_experiment(spec, 2);
  REQUIRE(report_to_csv(a) == report_to_csv(b));
  for (std::size_t u = 0; u < a.statistics.size(); ++u)
    REQUIRE(a.statistics[u] == b.statistics[u]);
}

TEST_CASE("stat units are shared across rules and rows are paired") {
  const ExperimentSpec spec = small_case_i();
  const SimReport report = run_experiment(spec, 2);
  REQUIRE(report.units.size() == 2);  // LRT and SLRT(0.5)
  REQUIRE(report.rows.size() == 6);   // 3 methods x 2 gammas
  // The two SLRT rules read the same statistics.
  const SimRow* universal_row = nullptr;
  const SimRow* asymptotic_row = nullptr;
  for (const SimRow& row : report.rows) {
    if (row.method.method != Method::slrt || row.gamma != 0.0) continue;
    if (row.method.rule == ThresholdRule::universal) universal_row = &row;
    if (row.method.rule == ThresholdRule::asymptotic_slrt) asymptotic_row = &row;
  }
  REQUIRE(universal_row);
  REQUIRE(asymptotic_row);
  CHECK(universal_row->unit == asymptotic_row->unit);

  // SE is consistent with the frequency.
  for (const SimRow& row : report.rows) {
    CHECK_THAT(row.se,
               Catch::Matchers::WithinAbs(
                   std::sqrt(row.frequency * (1.0 - row.frequency) / row.reps), 1e-12));
  }
}

TEST_CASE("universal rejections imply asymptotic-split rejections per replication") {
  ExperimentSpec spec = small_case_i();
  spec.scenario.n = 1000;
  spec.gammas = {0.0};
  spec.reps = 100;
  spec.methods = {MethodSpec{Method::slrt, 0.4, ThresholdRule::universal},
                  MethodSpec{Method::slrt, 0.4, ThresholdRule::asymptotic_slrt},
                  MethodSpec{Method::slrt, 0.5, ThresholdRule::universal},
                  MethodSpec{Method::slrt, 0.5, ThresholdRule::asymptotic_slrt},
                  MethodSpec{Method::slrt, 0.6, ThresholdRule::universal},
                  MethodSpec{Method::slrt, 0.6, ThresholdRule::asymptotic_slrt}};
  const SimReport report = run_experiment(spec, 2);
  for (std::size_t u = 0; u < report.units.size(); ++u) {
    const double m0 = report.units[u].m0;
    const double u_thr = universal_threshold(spec.alpha);
    const double c_thr = asymptotic_slrt_threshold(spec.scenario.n, spec.alpha, m0);
    REQUIRE(u_thr > c_thr);
    for (int r = 0; r < spec.reps; ++r) {
      const double stat = report.statistic(u, 0, r);
      if (stat > u_thr) CHECK(stat > c_thr);
    }
  }
}

TEST_CASE("errors are annotated with gamma and replication") {
  ExperimentSpec spec = small_case_i();
  spec.gammas = {-1.0};  // invalid weight for case i
  try {
    run_experiment(spec, 1);
    FAIL("expected an error");
  } catch (const error& e) {
    const std::string msg = e.what();
    CHECK(msg.find("gamma=-1") != std::string::npos);
    CHECK(msg.find("replication=") != std::string::npos);
  }
}

TEST_CASE("comparison verdicts follow the combined band rule") {
  const ReferenceTable table = parse_reference_csv(
      "case,method,m0,rule,gamma,frequency\n"
      "i,LRT,,asymptotic-lrt,0,0.847\n"
      "i,SLRT,0.5,universal,0,0.055\n");
  SimReport report;
  report.case_id = ScenarioCase::i;
  report.reps = 1000;
  SimRow row;
  row.method = MethodSpec{Method::lrt, kNaN, ThresholdRule::asymptotic_lrt};
  row.gamma = 0.0;
  row.reps = 1000;
  row.frequency = 0.862;  // band ~ +-0.068 combined: pass
  report.rows.push_back(row);
  row.method = MethodSpec{Method::slrt, 0.5, ThresholdRule::universal};
  row.frequency = 0.30;  // far outside any band: fail
  report.rows.push_back(row);
  const auto verdicts = compare_to_reference(report, table, 1000, 3.0);
  REQUIRE(verdicts.size() == 2);
  CHECK(verdicts[0].pass);
  CHECK_THAT(verdicts[0].band, Catch::Matchers::WithinAbs(0.0669, 0.005));
  CHECK_FALSE(verdicts[1].pass);

  // Identical tables pass everywhere.
  report.rows[1].frequency = 0.055;
  for (const auto& v : compare_to_reference(report, table, 1000, 3.0)) CHECK(v.pass);
}

TEST_CASE("comparison with a missing key throws") {
  const ReferenceTable table = parse_reference_csv(
      "case,method,m0,rule,gamma,frequency\n"
      "i,LRT,,asymptotic-lrt,0,0.05\n");
  SimReport report;
  report.case_id = ScenarioCase::i;
  SimRow row;
  row.method = MethodSpec{Method::lrt, kNaN, ThresholdRule::asymptotic_lrt};
  row.gamma = 0.5;  // not in the table
  row.reps = 1000;
  report.rows.push_back(row);
  CHECK_THROWS_AS(compare_to_reference(report, table), key_mismatch_error);
}

TEST_CASE("bundled tables parse and carry the expected shape") {
  for (auto c : {ScenarioCase::i, ScenarioCase::ii, ScenarioCase::iii, ScenarioCase::iv,
                 ScenarioCase::v}) {
    const ReferenceTable table = parse_reference_csv(bundled_reference_csv(c));
    CHECK(table.case_name == to_string(c));
    CHECK(table.rows.size() == 35);  // 1 LRT row + 3 m0 x 2 rules, 5 gammas each
  }
  CHECK_THROWS_AS(bundled_reference_csv(ScenarioCase::contig), key_mismatch_error);
}

TEST_CASE("experiment config files parse") {
  const ExperimentConfig config = parse_experiment_config(
      "# power study\n"
      "case = ii\n"
      "gamma = 0, 1, 2\n"
      "n = 500\n"
      "reps = 250\n"
      "seed = 77\n"
      "m0 = 0.5\n"
      "alpha = 0.1\n");
  CHECK(config.case_name == "ii");
  CHECK(config.n == 500);
  CHECK(config.gammas == std::vector<double>{0.0, 1.0, 2.0});
  CHECK(config.reps == 250);
  CHECK(config.seed == 77);
  CHECK(config.m0s == std::vector<double>{0.5});
  CHECK(config.alpha == 0.1);
  CHECK_THROWS_AS(parse_experiment_config("bogus_key = 3\n"), parse_error);
  CHECK_THROWS_AS(parse_experiment_config("just some text\n"), parse_error);
}

TEST_CASE("report csv includes the spec columns") {
  const SimReport report = run_experiment(small_case_i(), 2);
  const std::string csv = report_to_csv(report);
  CHECK(csv.rfind("case,method,m0,rule,gamma,frequency,se,reps,seed\n", 0) == 0);
  CHECK(csv.find("i,LRT,,asymptotic-lrt,0,") != std::string::npos);
  CHECK(csv.find("i,SLRT,0.5,universal,") != std::string::npos);
}
