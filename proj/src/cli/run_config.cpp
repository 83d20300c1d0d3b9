#include "esrf/cli/run_config.hpp"

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "esrf/common/errors.hpp"
#include "esrf/common/rng.hpp"
#include "esrf/streams/stream_factory.hpp"

namespace esrf {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

template <typename T>
T parse_integer(const std::string& key, const std::string& text) {
  T value{};
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    throw ConfigError(key, "expected an integer, got '" + text + "'");
  }
  return value;
}

double parse_real(const std::string& key, const std::string& text) {
  double value = 0.0;
  const auto* end = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || text.empty() || !std::isfinite(value)) {
    throw ConfigError(key, "expected a finite number, got '" + text + "'");
  }
  return value;
}

std::string format_real(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

struct Field {
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <typename T>
Field integer_field(T RunConfig::*member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) {
            c.*member = parse_integer<T>(k, v);
          },
          [member](const RunConfig& c) { return std::to_string(c.*member); }};
}

Field real_field(double RunConfig::*member) {
  return {[member](RunConfig& c, const std::string& k, const std::string& v) {
            c.*member = parse_real(k, v);
          },
          [member](const RunConfig& c) { return format_real(c.*member); }};
}

Field text_field(std::string RunConfig::*member) {
  return {[member](RunConfig& c, const std::string&, const std::string& v) { c.*member = v; },
          [member](const RunConfig& c) { return c.*member; }};
}

const std::map<std::string, Field>& fields() {
  static const std::map<std::string, Field> table = {
      {"stream", text_field(&RunConfig::stream)},
      {"data", text_field(&RunConfig::data)},
      {"format",
       {[](RunConfig& c, const std::string& k, const std::string& v) {
          if (v == "arff") {
            c.format = DataFormat::Arff;
          } else if (v == "csv") {
            c.format = DataFormat::Csv;
          } else {
            throw ConfigError(k, "must be arff or csv");
          }
        },
        [](const RunConfig& c) { return std::string(to_string(c.format)); }}},
      {"instances", integer_field(&RunConfig::instances)},
      {"learner",
       {[](RunConfig& c, const std::string& k, const std::string& v) {
          if (v == "arf") {
            c.learner = LearnerKind::Arf;
          } else if (v == "srf") {
            c.learner = LearnerKind::Srf;
          } else if (v == "esrf") {
            c.learner = LearnerKind::Esrf;
          } else {
            throw ConfigError(k, "must be arf, srf or esrf");
          }
        },
        [](const RunConfig& c) { return std::string(to_string(c.learner)); }}},
      {"n_trees", integer_field(&RunConfig::n_trees)},
      {"fs", integer_field(&RunConfig::fs)},
      {"cs", integer_field(&RunConfig::cs)},
      {"r", integer_field(&RunConfig::r)},
      {"tg", real_field(&RunConfig::tg)},
      {"ts", real_field(&RunConfig::ts)},
      {"window", integer_field(&RunConfig::window)},
      {"min_fs", integer_field(&RunConfig::min_fs)},
      {"max_total", integer_field(&RunConfig::max_total)},
      {"handover", integer_field(&RunConfig::handover)},
      {"folds", integer_field(&RunConfig::folds)},
      {"report_interval", integer_field(&RunConfig::report_interval)},
      {"seed", integer_field(&RunConfig::seed)},
      {"baseline", text_field(&RunConfig::baseline)},
      {"baseline_learner", text_field(&RunConfig::baseline_learner)},
      {"out", text_field(&RunConfig::out)},
      {"jobs", integer_field(&RunConfig::jobs)},
      {"threads", integer_field(&RunConfig::threads)},
  };
  return table;
}

const Field& field(const std::string& key) {
  auto it = fields().find(key);
  if (it == fields().end()) throw ConfigError(key, "unknown key");
  return it->second;
}

}  // namespace

const char* to_string(LearnerKind kind) noexcept {
  switch (kind) {
    case LearnerKind::Arf: return "arf";
    case LearnerKind::Srf: return "srf";
    case LearnerKind::Esrf: return "esrf";
  }
  return "?";
}

const char* to_string(DataFormat format) noexcept {
  return format == DataFormat::Csv ? "csv" : "arff";
}

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {
      "stream", "data",      "format", "instances", "learner", "n_trees",
      "fs",     "cs",        "r",      "tg",        "ts",      "window",
      "min_fs", "max_total", "handover", "folds",  "report_interval",      "seed",
      "baseline", "baseline_learner",  "out",       "jobs",    "threads"};
  return keys;
}

void set_config_value(RunConfig& config, const std::string& key, const std::string& value) {
  field(key).set(config, key, value);
}

std::string get_config_value(const RunConfig& config, const std::string& key) {
  return field(key).get(config);
}

void apply_config_text(RunConfig& config, const std::string& text) {
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line, "expected key=value");
    set_config_value(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

RunConfig parse_config_text(const std::string& text) {
  RunConfig config;
  apply_config_text(config, text);
  validate_config(config);
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::string serialize_config(const RunConfig& config) {
  std::string text;
  for (const auto& key : config_keys()) text += key + "=" + get_config_value(config, key) + "\n";
  return text;
}

void validate_config(const RunConfig& config) {
  auto require = [](bool ok, const char* key, const char* constraint) {
    if (!ok) throw ConfigError(key, constraint);
  };
  require(config.stream.empty() || config.data.empty(), "data",
          "only one of stream and data may be given");
  require(config.instances >= 1, "instances", "must be >= 1");
  require(config.n_trees >= 1, "n_trees", "must be >= 1");
  require(config.fs >= 1, "fs", "must be >= 1");
  require(config.cs >= 1, "cs", "must be >= 1");
  require(config.r >= 1, "r", "must be >= 1");
  require(config.tg >= 0.0, "tg", "threshold must be >= 0");
  require(config.ts >= 0.0, "ts", "threshold must be >= 0");
  require(config.window >= 1, "window", "must be >= 1");
  require(config.min_fs >= 1, "min_fs", "must be >= 1");
  require(config.max_total >= 1, "max_total", "must be >= 1");
  require(config.handover == 0 || config.handover == 1, "handover", "must be 0 or 1");
  require(config.folds >= 1, "folds", "must be >= 1 (1 = plain prequential)");
  require(config.report_interval >= 1, "report_interval", "must be >= 1");
  require(config.jobs >= 1, "jobs", "must be >= 1");
  require(config.threads >= 1, "threads", "must be >= 1");
  if (config.learner == LearnerKind::Esrf) {
    require(config.fs >= config.min_fs, "fs", "must be >= min_fs");
    require(config.min_fs > config.r, "min_fs", "must exceed r");
    require(config.fs + config.cs + config.r <= config.max_total, "max_total",
            "must hold fs + cs + r");
  } else if (config.learner == LearnerKind::Srf) {
    require(config.fs + config.cs <= config.max_total, "max_total", "must hold fs + cs");
  }
}

void validate_runnable(const RunConfig& config) {
  validate_config(config);
  if (config.stream.empty() && config.data.empty()) {
    throw ConfigError("stream", "one of stream or data is required");
  }
}

std::string learner_tag(const RunConfig& config) {
  switch (config.learner) {
    case LearnerKind::Arf: return "ARF" + std::to_string(config.n_trees);
    case LearnerKind::Srf: return "SRF" + std::to_string(config.fs);
    case LearnerKind::Esrf: return "ESRF";
  }
  return "?";
}

std::string config_summary(const RunConfig& config) {
  const std::string eval = "folds=" + std::to_string(config.folds) +
                           ";instances=" + std::to_string(config.instances);
  switch (config.learner) {
    case LearnerKind::Arf: return "n_trees=" + std::to_string(config.n_trees) + ";" + eval;
    case LearnerKind::Srf:
      return "fs=" + std::to_string(config.fs) + ";cs=" + std::to_string(config.cs) + ";" + eval;
    case LearnerKind::Esrf:
      return "fs=" + std::to_string(config.fs) + ";cs=" + std::to_string(config.cs) +
             ";r=" + std::to_string(config.r) + ";tg=" + format_real(config.tg) +
             ";ts=" + format_real(config.ts) + ";window=" + std::to_string(config.window) +
             ";min_fs=" + std::to_string(config.min_fs) +
             ";max_total=" + std::to_string(config.max_total) +
             (config.handover ? "" : ";handover=0") + ";" + eval;
  }
  return eval;
}

std::string dataset_name(const RunConfig& config) {
  if (!config.data.empty()) return std::filesystem::path(config.data).stem().string();
  std::string name = config.stream;
  for (char& ch : name) {
    if (ch == ',') ch = ';';
  }
  return name;
}

EsrfConfig make_esrf_config(const RunConfig& config, std::uint64_t seed) {
  EsrfConfig c;
  c.initial_fs = config.fs;
  c.cs_size = config.cs;
  c.resize_factor = config.r;
  c.grow_threshold = config.tg;
  c.shrink_threshold = config.ts;
  c.ewma_window = config.window;
  c.min_fs = config.min_fs;
  c.max_total = config.max_total;
  c.elastic = config.learner == LearnerKind::Esrf;
  c.tracker_handover = config.handover == 1;
  if (!c.elastic) c.min_fs = std::min(c.min_fs, c.initial_fs);
  c.seed = seed;
  c.threads = config.threads;
  return c;
}

ArfConfig make_arf_config(const RunConfig& config, std::uint64_t seed) {
  ArfConfig c;
  c.n_trees = config.n_trees;
  c.seed = seed;
  c.threads = config.threads;
  return c;
}

EvalConfig make_eval_config(const RunConfig& config) {
  EvalConfig e;
  e.mode = config.folds >= 2 ? EvalConfig::Mode::KFoldCV : EvalConfig::Mode::Prequential;
  e.folds = std::max(config.folds, 2);
  e.report_interval = config.report_interval;
  e.max_instances = config.instances;
  e.seed = config.seed;
  e.jobs = config.jobs;
  return e;
}

}  // namespace esrf
