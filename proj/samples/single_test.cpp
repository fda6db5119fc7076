// Minimal library walkthrough: draw a contaminated sample, run the classical
// LRT and the split LRT on it, and print both decisions.

#include <cstdio>

#include "unimix/unimix.hpp"

int main() {
  using namespace unimix;

  AlternativeScenario scenario{ScenarioCase::i, /*gamma=*/2.0, /*n=*/1000};
  const Sample sample = sample_scenario(scenario, /*seed=*/7);

  const MleResult lrt = lrt_contaminated(sample.values);
  const double c_lrt = asymptotic_lrt_threshold(sample.size(), 0.05);
  std::printf("LRT   lambda = %8.4f  c_{n,0.05} = %.4f  -> %s\n", lrt.lambda, c_lrt,
              lrt.lambda > c_lrt ? "reject" : "accept");

  SplitConfig config;  // m0 = 0.5, positional split
  const TestResult slrt = slrt_contaminated(sample.values, config, 0.05, ThresholdRule::universal);
  std::printf("SLRT  lambda = %8.4f  -2 ln alpha = %.4f  -> %s  (e-value %.3f)\n", slrt.statistic,
              slrt.threshold, slrt.reject ? "reject" : "accept", *slrt.e_value);
  return 0;
}
