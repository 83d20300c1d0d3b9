// Runs one experiment (or a threshold sweep) and appends its row to <out>/results.csv.
#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "esrf/cli/experiment.hpp"
#include "esrf/cli/run_config.hpp"
#include "esrf/common/errors.hpp"

namespace {

std::vector<double> parse_list(const std::string& key, const std::string& text) {
  std::vector<double> values;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    esrf::RunConfig probe;
    esrf::set_config_value(probe, key, item);
    values.push_back(key == "tg" ? probe.tg : probe.ts);
  }
  if (values.empty()) throw esrf::ConfigError(key, "empty list");
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Elastic swap random forest experiments"};

  std::string config_path;
  app.add_option("--config", config_path, "key=value file; flags override its entries");

  // flag name -> config key
  const std::vector<std::pair<std::string, std::string>> flag_keys = {
      {"--stream", "stream"},       {"--data", "data"},
      {"--format", "format"},       {"--instances", "instances"},
      {"--learner", "learner"},     {"--n-trees", "n_trees"},
      {"--fs", "fs"},               {"--cs", "cs"},
      {"--r", "r"},                 {"--tg", "tg"},
      {"--ts", "ts"},               {"--window", "window"},
      {"--min-fs", "min_fs"},       {"--max-total", "max_total"},
      {"--handover", "handover"},
      {"--folds", "folds"},         {"--report-interval", "report_interval"},
      {"--seed", "seed"},           {"--baseline", "baseline"},
      {"--baseline-learner", "baseline_learner"},
      {"--out", "out"},             {"--jobs", "jobs"},
      {"--threads", "threads"},
  };
  std::map<std::string, std::string> given;
  for (const auto& [flag, key] : flag_keys) {
    app.add_option(flag, given[key], "sets " + key);
  }

  std::string sweep_tg;
  std::string sweep_ts;
  app.add_option("--sweep-tg", sweep_tg, "comma-separated grow thresholds for a sweep");
  app.add_option("--sweep-ts", sweep_ts, "comma-separated shrink thresholds for a sweep");
  bool print_config = false;
  app.add_flag("--print-config", print_config, "print the resolved configuration and exit");

  CLI11_PARSE(app, argc, argv);

  try {
    esrf::RunConfig config;
    if (!config_path.empty()) config = esrf::load_config_file(config_path);
    for (const auto& [flag, key] : flag_keys) {
      if (app.count(flag) > 0) esrf::set_config_value(config, key, given[key]);
    }
    esrf::validate_config(config);

    if (print_config) {
      std::cout << esrf::serialize_config(config);
      return 0;
    }

    if (!sweep_tg.empty() || !sweep_ts.empty()) {
      const auto tgs = sweep_tg.empty() ? std::vector<double>{config.tg} : parse_list("tg", sweep_tg);
      const auto tss = sweep_ts.empty() ? std::vector<double>{config.ts} : parse_list("ts", sweep_ts);
      const auto rows = esrf::emit_sweep(esrf::threshold_grid(config, tgs, tss));
      for (const auto& row : rows) std::cout << esrf::format_result_row(row) << '\n';
      return 0;
    }

    const auto row = esrf::run_experiment(config);
    std::cout << esrf::kResultsHeader << '\n' << esrf::format_result_row(row) << '\n';
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
