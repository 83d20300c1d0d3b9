#pragma once

#include <optional>

#include "esrf/drift/adwin.hpp"

namespace esrf {

enum class MonitorMode { TwoLevel, SingleLevel };
enum class DriftSignal { None, Warning, Drift };

struct MonitorConfig {
  MonitorMode mode = MonitorMode::TwoLevel;
  double warning_delta = 0.0001;
  double drift_delta = 0.00001;
  // Only changes that raise the error estimate are signalled.
  bool increases_only = true;
  AdwinConfig window;

  void validate() const;
};

// Per-learner drift monitor fed with 0/1 errors. TwoLevel: a permissive detector raises
// Warning, a restrictive one raises Drift. SingleLevel: Drift only.
class DriftMonitor {
 public:
  explicit DriftMonitor(MonitorConfig config = {});

  DriftSignal update(bool correct);
  void reset();

  const MonitorConfig& config() const noexcept { return config_; }
  const AdaptiveWindowDetector& drift_detector() const noexcept { return drift_; }
  const std::optional<AdaptiveWindowDetector>& warning_detector() const noexcept { return warn_; }

 private:
  bool fired(AdaptiveWindowDetector& detector, double error);

  MonitorConfig config_;
  std::optional<AdaptiveWindowDetector> warn_;
  AdaptiveWindowDetector drift_;
};

}  // namespace esrf
