#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <vector>

#include "esrf/ensemble/classifier.hpp"
#include "esrf/eval/metrics.hpp"
#include "esrf/streams/stream.hpp"

namespace esrf {

struct EvalConfig {
  enum class Mode { Prequential, KFoldCV };
  Mode mode = Mode::Prequential;
  int folds = 10;
  std::uint64_t report_interval = 1000;
  std::optional<std::uint64_t> max_instances;
  std::uint64_t seed = 1;
  int jobs = 1;  // parallel replicas in CV mode

  void validate() const;
};

struct Snapshot {
  std::uint64_t instance = 0;  // instances processed so far
  double cum_accuracy = 0.0;
  double fs_size = 0.0;  // mean over replicas in CV mode
  double elapsed_s = 0.0;
};

struct FinalMetrics {
  std::uint64_t instances = 0;
  double accuracy_pct = std::numeric_limits<double>::quiet_NaN();  // NaN when nothing was seen
  double time_seconds = 0.0;
  std::optional<SizeStats> size;

  double per_sample_us() const noexcept;
};

struct MetricsTimeline {
  std::vector<Snapshot> snapshots;
  FinalMetrics final;
};

using SnapshotSink = std::function<void(const Snapshot&)>;
using LearnerFactory = std::function<std::unique_ptr<Classifier>(int replica)>;

// Test-then-train over the stream. Timing covers predict + train only. Snapshots are also
// handed to `sink` as they are taken, so a failing run leaves its prefix behind.
MetricsTimeline prequential_run(Classifier& learner, InstanceStream& stream,
                                const EvalConfig& config, const SnapshotSink& sink = {});

// k replicas; instance i belongs to fold i mod k. Every replica is tested on every instance;
// replica j trains on instance i unless its fold is j. Accuracy is the replica mean.
MetricsTimeline kfold_cv_run(const LearnerFactory& factory, InstanceStream& stream,
                             const EvalConfig& config, const SnapshotSink& sink = {});

MetricsTimeline run_evaluation(const LearnerFactory& factory, InstanceStream& stream,
                               const EvalConfig& config, const SnapshotSink& sink = {});

}  // namespace esrf
