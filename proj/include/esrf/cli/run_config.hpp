#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "esrf/ensemble/arf.hpp"
#include "esrf/ensemble/esrf.hpp"
#include "esrf/eval/prequential.hpp"

namespace esrf {

enum class LearnerKind { Arf, Srf, Esrf };
enum class DataFormat { Arff, Csv };

const char* to_string(LearnerKind kind) noexcept;
const char* to_string(DataFormat format) noexcept;

// Flat experiment description. Text form is one `key=value` per line; '#' starts a comment.
struct RunConfig {
  std::string stream;  // preset name or synthetic spec
  std::string data;    // file path
  DataFormat format = DataFormat::Arff;
  std::uint64_t instances = 1000000;  // stream length for synthetic input, cap for files
  LearnerKind learner = LearnerKind::Esrf;
  int n_trees = 100;
  int fs = 10;
  int cs = 10;
  int r = 1;
  double tg = 0.01;
  double ts = 0.001;
  int window = 2000;
  int min_fs = 10;
  int max_total = 100;
  int handover = 1;  // tracker handover after a resize (0 or 1)
  int folds = 10;  // 1 means plain prequential
  std::uint64_t report_interval = 1000;
  std::uint64_t seed = 1;
  std::string baseline;          // results file holding the reference rows
  std::string baseline_learner;  // learner tag to match; empty picks the last ARF row
  std::string out = ".";
  int jobs = 1;
  int threads = 1;

  bool operator==(const RunConfig&) const = default;
};

// Every recognised key, in serialization order.
const std::vector<std::string>& config_keys();

// Assigns one key from its text form. Throws ConfigError for unknown keys or bad values.
void set_config_value(RunConfig& config, const std::string& key, const std::string& value);
std::string get_config_value(const RunConfig& config, const std::string& key);

// Applies `key=value` lines on top of `config`.
void apply_config_text(RunConfig& config, const std::string& text);
RunConfig parse_config_text(const std::string& text);
RunConfig load_config_file(const std::string& path);
std::string serialize_config(const RunConfig& config);

// Range checks; throws ConfigError naming the key.
void validate_config(const RunConfig& config);
// Additionally requires exactly one stream source.
void validate_runnable(const RunConfig& config);

// Short learner label as used in result tables, e.g. ARF100, SRF35, ESRF.
std::string learner_tag(const RunConfig& config);
// Parameters that distinguish runs of the same learner, separated by ';'.
std::string config_summary(const RunConfig& config);
std::string dataset_name(const RunConfig& config);

EsrfConfig make_esrf_config(const RunConfig& config, std::uint64_t seed);
ArfConfig make_arf_config(const RunConfig& config, std::uint64_t seed);
EvalConfig make_eval_config(const RunConfig& config);

}  // namespace esrf
