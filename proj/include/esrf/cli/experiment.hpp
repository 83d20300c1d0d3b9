#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <stdexcept>
#include <optional>
#include <string>
#include <vector>

#include "esrf/cli/run_config.hpp"
#include "esrf/streams/stream.hpp"

namespace esrf {

struct ResultRow {
  std::string dataset;
  std::string learner;
  std::string config;
  double accuracy_pct = 0.0;
  std::optional<double> delta_pp;
  double time_s = 0.0;
  double per_sample_us = 0.0;
  std::optional<double> speedup;
  double size_mean = 0.0;
  double size_stdev = 0.0;
  std::size_t size_max = 0;
  std::size_t size_min = 0;
  std::uint64_t seed = 0;
};

extern const char* const kResultsHeader;
extern const char* const kTimelineHeader;

std::string format_result_row(const ResultRow& row);
ResultRow parse_result_row(const std::string& line);
std::vector<ResultRow> read_results(const std::string& path);
// Appends, writing the header first when the file is new or empty.
void append_results(const std::string& path, const std::vector<ResultRow>& rows);

// Last row of `rows` for `dataset` whose learner equals `learner_tag`, or starts with "ARF"
// when the tag is empty.
std::optional<ResultRow> find_baseline(const std::vector<ResultRow>& rows,
                                       const std::string& dataset,
                                       const std::string& learner_tag);
void apply_baseline(ResultRow& row, const ResultRow& baseline);

std::string hardware_comment();

std::unique_ptr<InstanceStream> make_stream(const RunConfig& config);

// Evaluates the configured learner and returns its row. Writes the timeline to
// `timeline_path` when non-empty. Does not touch the results file.
ResultRow evaluate(const RunConfig& config, const std::string& timeline_path = {});

// evaluate() plus the results.csv append and timeline.csv under config.out.
ResultRow run_experiment(const RunConfig& config);

class SweepAborted : public std::runtime_error {
 public:
  SweepAborted(std::size_t index, const std::string& what)
      : std::runtime_error("sweep aborted at config " + std::to_string(index) + ": " + what),
        index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

// Pivot of delta_pp: first column tg, one column per ts (in first-appearance order).
void write_pivot(std::ostream& out, const std::vector<RunConfig>& grid,
                 const std::vector<ResultRow>& rows);

// Runs every grid point (up to grid[0].jobs at a time), appends all rows to results.csv and
// writes pivot.csv under grid[0].out. On failure, finished rows are still written and the
// pivot is marked incomplete before SweepAborted is thrown.
std::vector<ResultRow> emit_sweep(const std::vector<RunConfig>& grid);

// Cartesian product of threshold lists over `base`.
std::vector<RunConfig> threshold_grid(const RunConfig& base, const std::vector<double>& tg,
                                      const std::vector<double>& ts);

}  // namespace esrf
