#include "esrf/eval/prequential.hpp"

#include <chrono>
#include <cmath>

#include "esrf/common/errors.hpp"
#include "esrf/common/parallel.hpp"

namespace esrf {

namespace {

using Clock = std::chrono::steady_clock;

double seconds(Clock::duration d) {
  return std::chrono::duration<double>(d).count();
}

bool limit_reached(const EvalConfig& config, std::uint64_t seen) {
  return config.max_instances && seen >= *config.max_instances;
}

void finish(MetricsTimeline& timeline, const Snapshot& last, bool need_final, double accuracy,
            std::uint64_t seen, double elapsed, const SizeAccumulator& sizes,
            const SnapshotSink& sink) {
  if (need_final) {
    timeline.snapshots.push_back(last);
    if (sink) sink(last);
  }
  timeline.final.instances = seen;
  timeline.final.time_seconds = elapsed;
  if (seen > 0) {
    timeline.final.accuracy_pct = 100.0 * accuracy;
    timeline.final.size = sizes.stats();
  }
}

}  // namespace

void EvalConfig::validate() const {
  if (mode == Mode::KFoldCV && folds < 2) throw ConfigError("folds", "must be >= 2");
  if (report_interval < 1) throw ConfigError("report_interval", "must be >= 1");
  if (jobs < 1) throw ConfigError("jobs", "must be >= 1");
}

double FinalMetrics::per_sample_us() const noexcept {
  if (instances == 0) return std::numeric_limits<double>::quiet_NaN();
  return time_seconds * 1e6 / static_cast<double>(instances);
}

MetricsTimeline prequential_run(Classifier& learner, InstanceStream& stream,
                                const EvalConfig& config, const SnapshotSink& sink) {
  config.validate();
  MetricsTimeline timeline;
  SizeAccumulator sizes;
  std::uint64_t seen = 0;
  std::uint64_t correct = 0;
  Clock::duration elapsed{};
  Snapshot last;

  while (!limit_reached(config, seen)) {
    auto inst = stream.next();
    if (!inst) break;
    const auto start = Clock::now();
    const int predicted = learner.predict(*inst);
    learner.train(*inst);
    elapsed += Clock::now() - start;

    ++seen;
    if (predicted == inst->class_index) ++correct;
    const auto size = learner.voting_size();
    sizes.add(size);
    last = Snapshot{seen, static_cast<double>(correct) / static_cast<double>(seen),
                    static_cast<double>(size), seconds(elapsed)};
    if (seen % config.report_interval == 0) {
      timeline.snapshots.push_back(last);
      if (sink) sink(last);
    }
  }
  const double accuracy = seen ? static_cast<double>(correct) / static_cast<double>(seen) : 0.0;
  finish(timeline, last, seen % config.report_interval != 0, accuracy, seen, seconds(elapsed),
         sizes, sink);
  return timeline;
}

MetricsTimeline kfold_cv_run(const LearnerFactory& factory, InstanceStream& stream,
                             const EvalConfig& config, const SnapshotSink& sink) {
  config.validate();
  if (config.folds < 2) throw ConfigError("folds", "must be >= 2");
  const auto k = static_cast<std::size_t>(config.folds);

  std::vector<std::unique_ptr<Classifier>> replicas;
  replicas.reserve(k);
  for (std::size_t j = 0; j < k; ++j) replicas.push_back(factory(static_cast<int>(j)));

  ParallelExecutor executor(config.jobs);
  MetricsTimeline timeline;
  SizeAccumulator sizes;
  std::vector<std::uint64_t> correct(k, 0);
  std::vector<std::size_t> replica_size(k, 0);
  std::uint64_t seen = 0;
  Clock::duration elapsed{};
  Snapshot last;

  auto mean_accuracy = [&] {
    double total = 0.0;
    for (auto c : correct) total += static_cast<double>(c) / static_cast<double>(seen);
    return total / static_cast<double>(k);
  };

  while (!limit_reached(config, seen)) {
    auto inst = stream.next();
    if (!inst) break;
    const std::size_t fold = seen % k;
    const auto start = Clock::now();
    executor.for_each(k, [&](std::size_t j) {
      Classifier& learner = *replicas[j];
      if (learner.predict(*inst) == inst->class_index) ++correct[j];
      if (fold != j) learner.train(*inst);
      replica_size[j] = learner.voting_size();
    });
    elapsed += Clock::now() - start;

    ++seen;
    double size_sum = 0.0;
    for (auto s : replica_size) {
      sizes.add(s);
      size_sum += static_cast<double>(s);
    }
    last = Snapshot{seen, mean_accuracy(), size_sum / static_cast<double>(k), seconds(elapsed)};
    if (seen % config.report_interval == 0) {
      timeline.snapshots.push_back(last);
      if (sink) sink(last);
    }
  }
  const double accuracy = seen ? mean_accuracy() : 0.0;
  finish(timeline, last, seen % config.report_interval != 0, accuracy, seen, seconds(elapsed),
         sizes, sink);
  return timeline;
}

MetricsTimeline run_evaluation(const LearnerFactory& factory, InstanceStream& stream,
                               const EvalConfig& config, const SnapshotSink& sink) {
  if (config.mode == EvalConfig::Mode::KFoldCV) {
    return kfold_cv_run(factory, stream, config, sink);
  }
  auto learner = factory(0);
  return prequential_run(*learner, stream, config, sink);
}

}  // namespace esrf
