// Reproduce one row of the case-i power table at reduced replication count.

#include <cstdio>

#include "unimix/unimix.hpp"

int main() {
  using namespace unimix;

  ExperimentSpec spec;
  spec.scenario = AlternativeScenario{ScenarioCase::i, 0.0, 1000};
  spec.gammas = {0.0, 0.5, 1.0, 2.0, 4.0};
  spec.methods = {
      MethodSpec{Method::lrt, std::numeric_limits<double>::quiet_NaN(), ThresholdRule::asymptotic_lrt},
      MethodSpec{Method::slrt, 0.5, ThresholdRule::universal},
      MethodSpec{Method::slrt, 0.5, ThresholdRule::asymptotic_slrt},
  };
  spec.reps = 200;
  spec.seed = 20240811;

  const SimReport report = run_experiment(spec);
  std::printf("%s", report_to_csv(report).c_str());
  std::printf("# wall time %.1fs\n", report.wall_seconds);
  return 0;
}
