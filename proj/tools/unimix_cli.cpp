// Command-line front end for the homogeneity tests: run a single test on a
// data file, reproduce the simulation tables, print critical values, and emit
// null-distribution diagnostics.

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "unimix/unimix.hpp"

namespace {

using json = nlohmann::json;
using namespace unimix;

constexpr int kExitOk = 0;
constexpr int kExitComparisonFailed = 1;
constexpr int kExitParse = 2;
constexpr int kExitPrecondition = 3;

std::string human(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.8g", v);
  return buf;
}

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw error("cannot open output file '" + out_path + "'");
  out << text;
}

ScenarioCase parse_case(const std::string& name) {
  if (name == "i") return ScenarioCase::i;
  if (name == "ii") return ScenarioCase::ii;
  if (name == "iii") return ScenarioCase::iii;
  if (name == "iv") return ScenarioCase::iv;
  if (name == "v") return ScenarioCase::v;
  if (name == "contig") return ScenarioCase::contig;
  throw CLI::ValidationError("--case", "unknown case '" + name + "'");
}

ThresholdRule parse_rule(const std::string& name) {
  if (name == "universal") return ThresholdRule::universal;
  if (name == "asymptotic-lrt") return ThresholdRule::asymptotic_lrt;
  if (name == "asymptotic-slrt") return ThresholdRule::asymptotic_slrt;
  throw CLI::ValidationError("--rule", "unknown rule '" + name + "'");
}

template <class Fn>
void parallel_reps(int reps, int threads, Fn&& fn) {
  if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min(threads, reps));
  std::atomic<int> next{0};
  auto worker = [&]() {
    for (int r = next.fetch_add(1); r < reps; r = next.fetch_add(1)) fn(r);
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < threads; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
}

// ---------------------------------------------------------------------------
// test
// ---------------------------------------------------------------------------

struct TestOptions {
  std::string data_path;
  std::string model = "contaminated";
  std::string method = "lrt";
  std::string rule;  // empty: default per method
  double m0 = 0.5;
  double alpha = 0.05;
  bool shuffle = false;
  std::uint64_t split_seed = 0;
  int restarts = 10;
  std::uint64_t em_seed = 0;
  std::string format = "markdown";
  std::string out_path;
};

int run_test(const TestOptions& opt) {
  const std::vector<double> data = read_data_file(opt.data_path);
  const std::size_t n = data.size();
  const ThresholdRule rule =
      parse_rule(opt.rule.empty() ? (opt.method == "slrt" ? "universal" : "asymptotic-lrt")
                                  : opt.rule);
  TestResult result;
  if (opt.method == "lrt") {
    double lambda = 0.0;
    if (opt.model == "contaminated") {
      lambda = lrt_contaminated(data).lambda;
    } else {
      lambda = lrt_two_mean(data, opt.restarts, opt.em_seed).lambda;
    }
    result.statistic = lambda;
    result.threshold_rule = rule;
    result.alpha = opt.alpha;
    result.threshold = threshold_for(rule, n, opt.alpha, opt.m0);
    result.reject = result.statistic > result.threshold;
  } else {
    SplitConfig config{opt.m0, opt.shuffle, opt.split_seed};
    result = opt.model == "contaminated"
                 ? slrt_contaminated(data, config, opt.alpha, rule)
                 : slrt_two_mean(data, config, opt.alpha, rule, opt.restarts, opt.em_seed);
  }

  std::ostringstream text;
  if (opt.format == "csv") {
    text << "n,model,method,m0,rule,alpha,statistic,threshold,reject,e_value\n"
         << n << ',' << opt.model << ',' << opt.method << ',';
    if (opt.method == "slrt") text << format_double(opt.m0);
    text << ',' << to_string(result.threshold_rule) << ',' << format_double(result.alpha) << ','
         << format_double(result.statistic) << ',' << format_double(result.threshold) << ','
         << (result.reject ? 1 : 0) << ',';
    if (result.e_value) text << format_double(*result.e_value);
    text << '\n';
  } else if (opt.format == "json") {
    json j{{"n", n},
           {"model", opt.model},
           {"method", opt.method},
           {"rule", to_string(result.threshold_rule)},
           {"alpha", result.alpha},
           {"statistic", result.statistic},
           {"threshold", result.threshold},
           {"reject", result.reject}};
    if (opt.method == "slrt") {
      j["m0"] = opt.m0;
      if (result.e_value) j["e_value"] = *result.e_value;
    }
    text << j.dump(2) << '\n';
  } else {
    text << "statistic  " << human(result.statistic) << '\n'
         << "threshold  " << human(result.threshold) << "  (" << to_string(result.threshold_rule)
         << ", alpha=" << human(result.alpha) << ")\n"
         << "decision   " << (result.reject ? "reject" : "accept") << '\n';
    if (opt.method == "slrt" && result.e_value)
      text << "e-value    " << human(*result.e_value) << '\n';
  }
  write_output(text.str(), opt.out_path);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateOptions {
  std::string config_path;
  std::string case_name;
  std::size_t n = 0;  // 0: case default
  std::vector<double> gammas{0.0, 0.5, 1.0, 2.0, 4.0};
  int reps = -1;  // -1: case default (1000; 200 for case iii)
  double alpha = 0.05;
  std::uint64_t seed = 1;
  std::vector<double> m0s{0.4, 0.5, 0.6};
  std::vector<std::string> methods{"lrt", "slrt"};
  int em_restarts = 10;
  int threads = 0;
  double contig_mu = 1.0;
  bool compare = false;
  std::string reference_path;
  std::string format = "csv";
  std::string out_path;
};

std::string report_to_markdown(const SimReport& report) {
  std::ostringstream text;
  text << "| case | method | m0 | rule | gamma | frequency | se | reps |\n"
       << "|---|---|---|---|---|---|---|---|\n";
  for (const SimRow& row : report.rows) {
    text << "| " << to_string(report.case_id) << " | " << to_string(row.method.method) << " | ";
    if (!std::isnan(row.method.m0)) text << human(row.method.m0);
    text << " | " << to_string(row.method.rule) << " | " << human(row.gamma) << " | "
         << human(row.frequency) << " | " << human(row.se) << " | " << row.reps << " |\n";
  }
  return text.str();
}

json report_to_json_obj(const SimReport& report) {
  json rows = json::array();
  for (const SimRow& row : report.rows) {
    json r{{"case", to_string(report.case_id)},
           {"method", to_string(row.method.method)},
           {"rule", to_string(row.method.rule)},
           {"gamma", row.gamma},
           {"frequency", row.frequency},
           {"se", row.se},
           {"reps", row.reps}};
    if (!std::isnan(row.method.m0)) r["m0"] = row.method.m0;
    rows.push_back(r);
  }
  return json{{"case", to_string(report.case_id)}, {"n", report.n},     {"alpha", report.alpha},
              {"seed", report.seed},               {"reps", report.reps}, {"rows", rows},
              {"wall_seconds", report.wall_seconds}};
}

int run_simulate(SimulateOptions opt, bool reps_given, bool n_given,
                 const std::vector<std::pair<CLI::Option*, int>>& config_overrides) {
  if (!opt.config_path.empty()) {
    std::ifstream in(opt.config_path);
    if (!in) throw parse_error("cannot open config file '" + opt.config_path + "'", 0);
    std::stringstream ss;
    ss << in.rdbuf();
    const ExperimentConfig config = parse_experiment_config(ss.str());
    // Values from the config apply wherever the flag was not given explicitly.
    auto given = [&](int idx) { return config_overrides[idx].first->count() > 0; };
    if (!given(0)) opt.case_name = config.case_name;
    if (!given(1) && config.n > 0) { opt.n = config.n; n_given = true; }
    if (!given(2)) opt.gammas = config.gammas;
    if (!given(3) && config.reps > 0) { opt.reps = config.reps; reps_given = true; }
    if (!given(4)) opt.seed = config.seed;
    if (!given(5)) opt.alpha = config.alpha;
    if (!given(6)) opt.m0s = config.m0s;
    if (!given(7)) opt.methods = config.methods;
    if (!given(8)) opt.em_restarts = config.em_restarts;
    if (!given(9)) opt.contig_mu = config.contig_mu;
  }
  if (opt.case_name.empty())
    throw CLI::ValidationError("--case", "required (either the flag or a config file)");
  const ScenarioCase case_id = parse_case(opt.case_name);
  ExperimentSpec spec;
  spec.scenario.case_id = case_id;
  spec.scenario.n = n_given ? opt.n : (case_id == ScenarioCase::iii ? 10000000 : 1000);
  spec.scenario.contig_mu = opt.contig_mu;
  spec.gammas = opt.gammas;
  spec.alpha = opt.alpha;
  spec.seed = opt.seed;
  spec.em_restarts = opt.em_restarts;
  if (reps_given) {
    spec.reps = opt.reps;
  } else if (case_id == ScenarioCase::iii) {
    spec.reps = 200;
    std::cerr << "note: case iii defaults to 200 replications; pass --reps 1000 for the full table\n";
  } else {
    spec.reps = 1000;
  }
  if (spec.reps < 1) throw CLI::ValidationError("--reps", "must be at least 1");
  for (const std::string& m : opt.methods) {
    if (m == "lrt") {
      spec.methods.push_back(MethodSpec{Method::lrt, std::numeric_limits<double>::quiet_NaN(),
                                        ThresholdRule::asymptotic_lrt});
    } else if (m == "slrt") {
      for (const double m0 : opt.m0s) {
        spec.methods.push_back(MethodSpec{Method::slrt, m0, ThresholdRule::universal});
        spec.methods.push_back(MethodSpec{Method::slrt, m0, ThresholdRule::asymptotic_slrt});
      }
    } else {
      throw CLI::ValidationError("--methods", "unknown method '" + m + "'");
    }
  }

  const SimReport report = run_experiment(spec, opt.threads);

  std::vector<CellVerdict> verdicts;
  bool all_pass = true;
  if (opt.compare) {
    ReferenceTable table;
    if (!opt.reference_path.empty()) {
      std::ifstream in(opt.reference_path);
      if (!in) throw parse_error("cannot open reference file '" + opt.reference_path + "'", 0);
      std::stringstream ss;
      ss << in.rdbuf();
      table = parse_reference_csv(ss.str());
    } else {
      table = parse_reference_csv(bundled_reference_csv(case_id));
    }
    verdicts = compare_to_reference(report, table, 1000, 3.0);
    for (const CellVerdict& v : verdicts) all_pass = all_pass && v.pass;
  }

  std::ostringstream text;
  if (opt.format == "json") {
    json j = report_to_json_obj(report);
    if (opt.compare) {
      json vs = json::array();
      for (const CellVerdict& v : verdicts) {
        json o{{"method", to_string(v.observed.method.method)},
               {"rule", to_string(v.observed.method.rule)},
               {"gamma", v.observed.gamma},
               {"frequency", v.observed.frequency},
               {"reference", v.reference},
               {"band", v.band},
               {"pass", v.pass}};
        if (!std::isnan(v.observed.method.m0)) o["m0"] = v.observed.method.m0;
        vs.push_back(o);
      }
      j["verdicts"] = vs;
      j["all_pass"] = all_pass;
    }
    text << j.dump(2) << '\n';
  } else if (opt.format == "markdown") {
    text << report_to_markdown(report);
    if (opt.compare) {
      text << "\n| cell | observed | reference | band | verdict |\n|---|---|---|---|---|\n";
      for (const CellVerdict& v : verdicts) {
        text << "| " << to_string(v.observed.method.method);
        if (!std::isnan(v.observed.method.m0)) text << " m0=" << human(v.observed.method.m0);
        text << " " << to_string(v.observed.method.rule) << " gamma=" << human(v.observed.gamma)
             << " | " << human(v.observed.frequency) << " | " << human(v.reference) << " | "
             << human(v.band) << " | " << (v.pass ? "pass" : "fail") << " |\n";
      }
    }
  } else {
    text << report_to_csv(report);
    if (opt.compare) text << '\n' << verdicts_to_csv(report, verdicts);
  }
  write_output(text.str(), opt.out_path);
  if (opt.compare && !all_pass) return kExitComparisonFailed;
  return kExitOk;
}

// ---------------------------------------------------------------------------
// thresholds
// ---------------------------------------------------------------------------

int run_thresholds(std::size_t n, double alpha, const std::vector<double>& m0s,
                   const std::string& format, const std::string& out_path) {
  std::ostringstream text;
  if (format == "csv") {
    text << "n,alpha,m0,universal,asymptotic_lrt,asymptotic_slrt\n";
    for (const double m0 : m0s) {
      text << n << ',' << format_double(alpha) << ',' << format_double(m0) << ','
           << format_double(universal_threshold(alpha)) << ','
           << format_double(asymptotic_lrt_threshold(n, alpha)) << ','
           << format_double(asymptotic_slrt_threshold(n, alpha, m0)) << '\n';
    }
  } else if (format == "json") {
    json rows = json::array();
    for (const double m0 : m0s) {
      rows.push_back(json{{"m0", m0},
                          {"universal", universal_threshold(alpha)},
                          {"asymptotic_lrt", asymptotic_lrt_threshold(n, alpha)},
                          {"asymptotic_slrt", asymptotic_slrt_threshold(n, alpha, m0)}});
    }
    text << json{{"n", n}, {"alpha", alpha}, {"thresholds", rows}}.dump(2) << '\n';
  } else {
    text << "| m0 | universal | asymptotic-lrt | asymptotic-slrt |\n|---|---|---|---|\n";
    for (const double m0 : m0s) {
      text << "| " << human(m0) << " | " << human(universal_threshold(alpha)) << " | "
           << human(asymptotic_lrt_threshold(n, alpha)) << " | "
           << human(asymptotic_slrt_threshold(n, alpha, m0)) << " |\n";
    }
  }
  write_output(text.str(), out_path);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// nulldist
// ---------------------------------------------------------------------------

struct NulldistOptions {
  std::string stat = "lrt";  // lrt | slrt | mn
  std::size_t n = 1000;
  int reps = 1000;
  std::uint64_t seed = 1;
  double m0 = 0.5;
  double alpha = 0.05;
  int threads = 0;
  std::string format = "csv";
  std::string out_path;
  std::string summary_path;
};

int run_nulldist(const NulldistOptions& opt) {
  if (opt.reps < 1) throw CLI::ValidationError("--reps", "must be at least 1");
  std::vector<double> stats(static_cast<std::size_t>(opt.reps));
  std::vector<double> standardized(static_cast<std::size_t>(opt.reps));
  AlternativeScenario null_scenario{ScenarioCase::i, 0.0, opt.n};
  parallel_reps(opt.reps, opt.threads, [&](int r) {
    thread_local detail::ScanBuffers buf;
    const Sample sample =
        sample_scenario(null_scenario, derive_seed(opt.seed, static_cast<std::uint64_t>(r)));
    double s = 0.0, z = 0.0;
    if (opt.stat == "lrt") {
      s = lrt_contaminated(sample.values, buf).lambda;
      z = gumbel_standardize_lambda(s, opt.n);
    } else if (opt.stat == "mn") {
      s = process_supremum(sample.values).m_n;
      z = gumbel_standardize_m(s, opt.n);
    } else {
      SplitConfig config;
      config.m0 = opt.m0;
      const auto [d0, d1] = split_view(sample.values, config);
      const MleResult fit = lrt_contaminated(d1, buf);
      s = split_lr_statistic_contaminated(d0, fit.contaminated());
      z = normal_standardize_split(s, opt.n, opt.m0);
    }
    stats[static_cast<std::size_t>(r)] = s;
    standardized[static_cast<std::size_t>(r)] = z;
  });

  // Distance to the limit law of the standardized statistic.
  std::vector<double> sorted = standardized;
  double ks = 0.0;
  if (opt.stat == "lrt") {
    ks = ks_distance(sorted, [](double x) { return std::exp(-std::exp(-x / 2.0)); });
  } else if (opt.stat == "mn") {
    ks = ks_distance(sorted, [](double x) { return std::exp(-std::exp(-x)); });
  } else {
    ks = ks_distance(sorted, [](double x) { return norm_cdf(x); });
  }
  double mean = 0.0;
  for (const double s : stats) mean += s;
  mean /= static_cast<double>(opt.reps);
  int rejections = 0;
  double reject_threshold = 0.0;
  if (opt.stat == "lrt") reject_threshold = asymptotic_lrt_threshold(opt.n, opt.alpha);
  else if (opt.stat == "slrt") reject_threshold = universal_threshold(opt.alpha);
  if (opt.stat != "mn") {
    for (const double s : stats)
      if (s > reject_threshold) ++rejections;
  }
  json summary{{"stat", opt.stat},
               {"n", opt.n},
               {"reps", opt.reps},
               {"seed", opt.seed},
               {"ks_distance", ks},
               {"mean_statistic", mean}};
  if (opt.stat == "slrt") summary["m0"] = opt.m0;
  if (opt.stat != "mn") {
    summary["reject_threshold"] = reject_threshold;
    summary["reject_fraction"] = static_cast<double>(rejections) / static_cast<double>(opt.reps);
  }

  std::ostringstream text;
  if (opt.format == "json") {
    json rows = json::array();
    for (int r = 0; r < opt.reps; ++r)
      rows.push_back(json{{"rep", r},
                          {"statistic", stats[static_cast<std::size_t>(r)]},
                          {"standardized", standardized[static_cast<std::size_t>(r)]}});
    summary["rows"] = rows;
    text << summary.dump(2) << '\n';
  } else {
    text << "rep,statistic,standardized\n";
    for (int r = 0; r < opt.reps; ++r)
      text << r << ',' << format_double(stats[static_cast<std::size_t>(r)]) << ','
           << format_double(standardized[static_cast<std::size_t>(r)]) << '\n';
  }
  write_output(text.str(), opt.out_path);
  if (!opt.summary_path.empty()) {
    std::ofstream out(opt.summary_path);
    if (!out) throw error("cannot open summary file '" + opt.summary_path + "'");
    out << summary.dump(2) << '\n';
  } else if (opt.format != "json") {
    std::cerr << summary.dump(2) << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// diagnose
// ---------------------------------------------------------------------------

struct DiagnoseOptions {
  std::size_t n = 100000;
  double m0 = 0.5;
  int reps = 2000;
  std::uint64_t seed = 1;
  int threads = 0;
  std::string format = "csv";
  std::string out_path;
  std::string summary_path;
};

int run_diagnose(const DiagnoseOptions& opt) {
  const UniformityReport report = that_uniformity_report(opt.n, opt.m0, opt.reps, opt.seed, opt.threads);
  const double width = report.interval.upper - report.interval.lower;
  json summary{{"n", report.n},
               {"m0", report.m0},
               {"reps", report.reps},
               {"seed", opt.seed},
               {"interval_lower", report.interval.lower},
               {"interval_upper", report.interval.upper},
               {"in_fraction", report.in_fraction},
               {"ks_distance", report.ks_distance}};
  std::ostringstream text;
  if (opt.format == "json") {
    json rows = json::array();
    for (std::size_t r = 0; r < report.t_hats.size(); ++r)
      rows.push_back(json{{"rep", r},
                          {"statistic", report.t_hats[r]},
                          {"standardized", (report.t_hats[r] - report.interval.lower) / width}});
    summary["rows"] = rows;
    text << summary.dump(2) << '\n';
  } else {
    text << "rep,statistic,standardized\n";
    for (std::size_t r = 0; r < report.t_hats.size(); ++r)
      text << r << ',' << format_double(report.t_hats[r]) << ','
           << format_double((report.t_hats[r] - report.interval.lower) / width) << '\n';
  }
  write_output(text.str(), opt.out_path);
  if (!opt.summary_path.empty()) {
    std::ofstream out(opt.summary_path);
    if (!out) throw error("cannot open summary file '" + opt.summary_path + "'");
    out << summary.dump(2) << '\n';
  } else if (opt.format != "json") {
    std::cerr << summary.dump(2) << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Likelihood ratio and split likelihood ratio tests for Gaussian mixture homogeneity"};
  app.require_subcommand(1);
  app.failure_message(CLI::FailureMessage::help);

  TestOptions test_opt;
  auto* cmd_test = app.add_subcommand("test", "Run a single test on a data file");
  cmd_test->add_option("--data", test_opt.data_path, "Data file, one real per line")->required();
  cmd_test->add_option("--model", test_opt.model, "contaminated | two-mean")
      ->check(CLI::IsMember({"contaminated", "two-mean"}));
  cmd_test->add_option("--method", test_opt.method, "lrt | slrt")
      ->check(CLI::IsMember({"lrt", "slrt"}));
  cmd_test->add_option("--rule", test_opt.rule, "universal | asymptotic-lrt | asymptotic-slrt");
  cmd_test->add_option("--m0", test_opt.m0, "Inference fraction for the split");
  cmd_test->add_option("--alpha", test_opt.alpha, "Significance level");
  cmd_test->add_flag("--shuffle", test_opt.shuffle, "Shuffle before splitting");
  cmd_test->add_option("--split-seed", test_opt.split_seed, "Seed for the shuffle");
  cmd_test->add_option("--restarts", test_opt.restarts, "EM restarts (two-mean model)");
  cmd_test->add_option("--seed", test_opt.em_seed, "Seed for EM restarts");
  cmd_test->add_option("--format", test_opt.format, "markdown | csv | json")
      ->check(CLI::IsMember({"markdown", "csv", "json"}));
  cmd_test->add_option("--out", test_opt.out_path, "Write output to a file");

  SimulateOptions sim_opt;
  auto* cmd_sim = app.add_subcommand("simulate", "Monte Carlo size/power experiment");
  cmd_sim->add_option("--config", sim_opt.config_path, "Key-value experiment config file");
  auto* sim_case = cmd_sim->add_option("--case", sim_opt.case_name, "i | ii | iii | iv | v | contig");
  auto* sim_n = cmd_sim->add_option("--n", sim_opt.n, "Sample size (default per case)");
  auto* sim_gamma = cmd_sim->add_option("--gamma", sim_opt.gammas, "Gamma grid")->delimiter(',');
  auto* sim_reps = cmd_sim->add_option("--reps", sim_opt.reps, "Replications (default 1000; 200 for case iii)");
  auto* sim_alpha = cmd_sim->add_option("--alpha", sim_opt.alpha, "Significance level");
  auto* sim_seed = cmd_sim->add_option("--seed", sim_opt.seed, "Root seed");
  auto* sim_m0 = cmd_sim->add_option("--m0", sim_opt.m0s, "Split fractions for the SLRT")->delimiter(',');
  auto* sim_methods = cmd_sim->add_option("--methods", sim_opt.methods, "lrt,slrt")->delimiter(',');
  auto* sim_restarts = cmd_sim->add_option("--em-restarts", sim_opt.em_restarts, "EM restarts (two-mean cases)");
  cmd_sim->add_option("--threads", sim_opt.threads, "Worker threads (0 = hardware)");
  auto* sim_mu = cmd_sim->add_option("--mu", sim_opt.contig_mu, "Location for the contig case");
  cmd_sim->add_flag("--compare", sim_opt.compare, "Compare against the bundled reference table");
  cmd_sim->add_option("--reference", sim_opt.reference_path, "Reference CSV overriding the bundled table");
  cmd_sim->add_option("--format", sim_opt.format, "csv | json | markdown")
      ->check(CLI::IsMember({"markdown", "csv", "json"}));
  cmd_sim->add_option("--out", sim_opt.out_path, "Write the report to a file");

  std::size_t thr_n = 1000;
  double thr_alpha = 0.05;
  std::vector<double> thr_m0s{0.5};
  std::string thr_format = "markdown";
  std::string thr_out;
  auto* cmd_thr = app.add_subcommand("thresholds", "Print the three critical values");
  cmd_thr->add_option("--n", thr_n, "Sample size")->required();
  cmd_thr->add_option("--alpha", thr_alpha, "Significance level");
  cmd_thr->add_option("--m0", thr_m0s, "Split fractions")->delimiter(',');
  cmd_thr->add_option("--format", thr_format, "markdown | csv | json")
      ->check(CLI::IsMember({"markdown", "csv", "json"}));
  cmd_thr->add_option("--out", thr_out, "Write output to a file");

  NulldistOptions nd_opt;
  auto* cmd_nd = app.add_subcommand("nulldist", "Simulate a null distribution and standardize it");
  cmd_nd->add_option("--stat", nd_opt.stat, "lrt | slrt | mn")
      ->check(CLI::IsMember({"lrt", "slrt", "mn"}));
  cmd_nd->add_option("--n", nd_opt.n, "Sample size");
  cmd_nd->add_option("--reps", nd_opt.reps, "Replications");
  cmd_nd->add_option("--seed", nd_opt.seed, "Root seed");
  cmd_nd->add_option("--m0", nd_opt.m0, "Split fraction (slrt)");
  cmd_nd->add_option("--alpha", nd_opt.alpha, "Level for the reported rejection fraction");
  cmd_nd->add_option("--threads", nd_opt.threads, "Worker threads (0 = hardware)");
  cmd_nd->add_option("--format", nd_opt.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_nd->add_option("--out", nd_opt.out_path, "Write per-replication CSV to a file");
  cmd_nd->add_option("--summary", nd_opt.summary_path, "Write the JSON summary to a file");

  DiagnoseOptions dg_opt;
  auto* cmd_dg = app.add_subcommand("diagnose", "Location-MLE uniformity diagnostic over A_{2,n1}");
  cmd_dg->add_option("--n", dg_opt.n, "Sample size");
  cmd_dg->add_option("--m0", dg_opt.m0, "Split fraction");
  cmd_dg->add_option("--reps", dg_opt.reps, "Replications");
  cmd_dg->add_option("--seed", dg_opt.seed, "Root seed");
  cmd_dg->add_option("--threads", dg_opt.threads, "Worker threads (0 = hardware)");
  cmd_dg->add_option("--format", dg_opt.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd_dg->add_option("--out", dg_opt.out_path, "Write per-replication CSV to a file");
  cmd_dg->add_option("--summary", dg_opt.summary_path, "Write the JSON summary to a file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    app.exit(e);
    return kExitParse;
  }

  try {
    if (cmd_test->parsed()) return run_test(test_opt);
    if (cmd_sim->parsed()) {
      const std::vector<std::pair<CLI::Option*, int>> overrides{
          {sim_case, 0}, {sim_n, 1},       {sim_gamma, 2},    {sim_reps, 3}, {sim_seed, 4},
          {sim_alpha, 5}, {sim_m0, 6},     {sim_methods, 7},  {sim_restarts, 8}, {sim_mu, 9}};
      return run_simulate(sim_opt, sim_reps->count() > 0, sim_n->count() > 0, overrides);
    }
    if (cmd_thr->parsed()) return run_thresholds(thr_n, thr_alpha, thr_m0s, thr_format, thr_out);
    if (cmd_nd->parsed()) return run_nulldist(nd_opt);
    if (cmd_dg->parsed()) return run_diagnose(dg_opt);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what();
    if (e.line() > 0) std::cerr << " (line " << e.line() << ")";
    std::cerr << '\n';
    return kExitParse;
  } catch (const error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitPrecondition;
  }
  return kExitOk;
}
