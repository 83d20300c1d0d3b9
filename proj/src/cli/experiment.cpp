#include "esrf/cli/experiment.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "esrf/common/errors.hpp"
#include "esrf/common/parallel.hpp"
#include "esrf/common/rng.hpp"
#include "esrf/streams/readers.hpp"
#include "esrf/streams/stream_factory.hpp"

namespace esrf {

const char* const kResultsHeader =
    "dataset,learner,config,accuracy_pct,delta_pp,time_s,per_sample_us,speedup,size_mean,"
    "size_stdev,size_max,size_min,seed";
const char* const kTimelineHeader = "instance,cum_accuracy,fs_size,elapsed_s";

namespace {

// Placeholder for an undefined accuracy (no instances evaluated).
const char* const kUndefined = "\xE2\x80\x94";

std::string format_real(double value) {
  if (std::isnan(value)) return kUndefined;
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string format_optional(const std::optional<double>& value) {
  return value ? format_real(*value) : std::string();
}

double parse_real(const std::string& text) {
  if (text == kUndefined) return std::numeric_limits<double>::quiet_NaN();
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(0, "bad number '" + text + "' in results row");
  }
  return value;
}

std::optional<double> parse_optional(const std::string& text) {
  if (text.empty()) return std::nullopt;
  return parse_real(text);
}

std::uint64_t parse_unsigned(const std::string& text) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(0, "bad integer '" + text + "' in results row");
  }
  return value;
}

std::uint64_t replica_seed(const RunConfig& config, int replica) {
  return derive_seed(config.seed, 1000 + static_cast<std::uint64_t>(replica));
}

}  // namespace

std::string format_result_row(const ResultRow& row) {
  std::ostringstream out;
  out << row.dataset << ',' << row.learner << ',' << row.config << ','
      << format_real(row.accuracy_pct) << ',' << format_optional(row.delta_pp) << ','
      << format_real(row.time_s) << ',' << format_real(row.per_sample_us) << ','
      << format_optional(row.speedup) << ',' << format_real(row.size_mean) << ','
      << format_real(row.size_stdev) << ',' << row.size_max << ',' << row.size_min << ','
      << row.seed;
  return out.str();
}

ResultRow parse_result_row(const std::string& line) {
  const auto fields = split_csv_record(line, 0);
  if (fields.size() != 13) throw ParseError(0, "results row needs 13 fields");
  ResultRow row;
  row.dataset = fields[0];
  row.learner = fields[1];
  row.config = fields[2];
  row.accuracy_pct = parse_real(fields[3]);
  row.delta_pp = parse_optional(fields[4]);
  row.time_s = parse_real(fields[5]);
  row.per_sample_us = parse_real(fields[6]);
  row.speedup = parse_optional(fields[7]);
  row.size_mean = parse_real(fields[8]);
  row.size_stdev = parse_real(fields[9]);
  row.size_max = parse_unsigned(fields[10]);
  row.size_min = parse_unsigned(fields[11]);
  row.seed = parse_unsigned(fields[12]);
  return row;
}

std::vector<ResultRow> read_results(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("baseline", "cannot read '" + path + "'");
  std::vector<ResultRow> rows;
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line == kResultsHeader) continue;
    try {
      rows.push_back(parse_result_row(line));
    } catch (const ParseError& e) {
      throw ParseError(number, e.what());
    }
  }
  return rows;
}

void append_results(const std::string& path, const std::vector<ResultRow>& rows) {
  const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  std::ofstream out(path, std::ios::app);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for appending");
  if (fresh) out << kResultsHeader << '\n';
  for (const auto& row : rows) out << format_result_row(row) << '\n';
  out.flush();
  if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::optional<ResultRow> find_baseline(const std::vector<ResultRow>& rows,
                                       const std::string& dataset,
                                       const std::string& learner_tag) {
  std::optional<ResultRow> found;
  for (const auto& row : rows) {
    if (row.dataset != dataset) continue;
    const bool match = learner_tag.empty() ? row.learner.rfind("ARF", 0) == 0
                                           : row.learner == learner_tag;
    if (match) found = row;
  }
  return found;
}

void apply_baseline(ResultRow& row, const ResultRow& baseline) {
  row.delta_pp = accuracy_delta(row.accuracy_pct, baseline.accuracy_pct);
  if (baseline.time_s > 0.0 && row.time_s > 0.0) row.speedup = speedup(baseline.time_s, row.time_s);
}

std::string hardware_comment() {
  std::string model = "unknown cpu";
  std::ifstream cpuinfo("/proc/cpuinfo");
  std::string line;
  while (std::getline(cpuinfo, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) model = line.substr(colon + 2);
      break;
    }
  }
  return "# hardware: " + model + "; hardware_threads=" +
         std::to_string(std::thread::hardware_concurrency());
}

std::unique_ptr<InstanceStream> make_stream(const RunConfig& config) {
  validate_runnable(config);
  if (!config.stream.empty()) {
    return make_synthetic_stream(config.stream, config.instances, config.seed);
  }
  std::unique_ptr<InstanceStream> reader;
  if (config.format == DataFormat::Arff) {
    reader = std::make_unique<ArffReader>(config.data);
  } else {
    reader = std::make_unique<CsvReader>(config.data, infer_csv_schema(config.data, true), true);
  }
  return std::make_unique<BoundedStream>(std::move(reader), config.instances);
}

ResultRow evaluate(const RunConfig& config, const std::string& timeline_path) {
  auto stream = make_stream(config);
  auto schema = std::make_shared<const Schema>(stream->schema());

  LearnerFactory factory = [&](int replica) -> std::unique_ptr<Classifier> {
    const auto seed = replica_seed(config, replica);
    if (config.learner == LearnerKind::Arf) {
      return std::make_unique<ArfEnsemble>(schema, make_arf_config(config, seed));
    }
    return std::make_unique<EsrfEnsemble>(schema, make_esrf_config(config, seed));
  };

  std::ofstream timeline;
  SnapshotSink sink;
  if (!timeline_path.empty()) {
    timeline.open(timeline_path, std::ios::trunc);
    if (!timeline) throw std::runtime_error("cannot open '" + timeline_path + "'");
    timeline << hardware_comment() << '\n' << kTimelineHeader << '\n';
    timeline.flush();
    const bool sized = config.learner != LearnerKind::Arf;
    sink = [&timeline, sized](const Snapshot& s) {
      timeline << s.instance << ',' << format_real(s.cum_accuracy) << ','
               << (sized ? format_real(s.fs_size) : std::string("n/a")) << ','
               << format_real(s.elapsed_s) << '\n';
      timeline.flush();
    };
  }

  const MetricsTimeline result = run_evaluation(factory, *stream, make_eval_config(config), sink);

  ResultRow row;
  row.dataset = dataset_name(config);
  row.learner = learner_tag(config);
  row.config = config_summary(config);
  row.accuracy_pct = result.final.accuracy_pct;
  row.time_s = result.final.time_seconds;
  row.per_sample_us = result.final.per_sample_us();
  if (result.final.size) {
    row.size_mean = result.final.size->mean;
    row.size_stdev = result.final.size->stdev;
    row.size_max = result.final.size->max;
    row.size_min = result.final.size->min;
  }
  row.seed = config.seed;

  if (!config.baseline.empty()) {
    const auto baseline =
        find_baseline(read_results(config.baseline), row.dataset, config.baseline_learner);
    if (baseline) apply_baseline(row, *baseline);
  }
  return row;
}

ResultRow run_experiment(const RunConfig& config) {
  validate_runnable(config);
  std::filesystem::create_directories(config.out);
  const auto dir = std::filesystem::path(config.out);
  ResultRow row = evaluate(config, (dir / "timeline.csv").string());
  append_results((dir / "results.csv").string(), {row});
  return row;
}

void write_pivot(std::ostream& out, const std::vector<RunConfig>& grid,
                 const std::vector<ResultRow>& rows) {
  std::vector<double> tgs;
  std::vector<double> tss;
  std::map<std::pair<double, double>, std::optional<double>> cells;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double tg = grid[i].tg;
    const double ts = grid[i].ts;
    if (std::find(tgs.begin(), tgs.end(), tg) == tgs.end()) tgs.push_back(tg);
    if (std::find(tss.begin(), tss.end(), ts) == tss.end()) tss.push_back(ts);
    if (i < rows.size()) cells[{tg, ts}] = rows[i].delta_pp;
  }
  out << "tg";
  for (double ts : tss) out << ',' << format_real(ts);
  out << '\n';
  for (double tg : tgs) {
    out << format_real(tg);
    for (double ts : tss) {
      out << ',';
      auto it = cells.find({tg, ts});
      if (it != cells.end()) out << format_optional(it->second);
    }
    out << '\n';
  }
}

std::vector<ResultRow> emit_sweep(const std::vector<RunConfig>& grid) {
  if (grid.empty()) throw EmptyInput("sweep grid is empty");
  for (const auto& c : grid) {
    validate_runnable(c);
    if (c.stream != grid[0].stream || c.data != grid[0].data) {
      throw ConfigError("stream", "every sweep point must share one stream");
    }
  }
  const auto dir = std::filesystem::path(grid[0].out);
  std::filesystem::create_directories(dir);

  std::vector<std::optional<ResultRow>> results(grid.size());
  std::vector<std::string> errors(grid.size());
  ParallelExecutor executor(grid.size() > 1 ? grid[0].jobs : 1);
  executor.for_each(grid.size(), [&](std::size_t i) {
    RunConfig point = grid[i];
    if (grid.size() > 1) point.jobs = 1;
    try {
      const auto timeline = dir / ("timeline_" + std::to_string(i) + ".csv");
      results[i] = evaluate(point, timeline.string());
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  std::vector<ResultRow> rows;
  std::optional<std::size_t> failed;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!results[i]) {
      failed = i;
      break;
    }
    rows.push_back(*results[i]);
  }
  append_results((dir / "results.csv").string(), rows);
  std::ofstream pivot(dir / "pivot.csv", std::ios::trunc);
  write_pivot(pivot, grid, rows);
  if (failed) {
    pivot << "# incomplete: aborted at config " << *failed << '\n';
    pivot.flush();
    throw SweepAborted(*failed, errors[*failed]);
  }
  return rows;
}

std::vector<RunConfig> threshold_grid(const RunConfig& base, const std::vector<double>& tg,
                                      const std::vector<double>& ts) {
  std::vector<RunConfig> grid;
  for (double g : tg) {
    for (double s : ts) {
      RunConfig c = base;
      c.tg = g;
      c.ts = s;
      grid.push_back(c);
    }
  }
  return grid;
}

}  // namespace esrf
