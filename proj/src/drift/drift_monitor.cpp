#include "esrf/drift/drift_monitor.hpp"

#include <stdexcept>

namespace esrf {

namespace {

AdwinConfig with_delta(AdwinConfig base, double delta) {
  base.delta = delta;
  return base;
}

}  // namespace

void MonitorConfig::validate() const {
  if (!(drift_delta > 0.0 && drift_delta < 1.0)) {
    throw std::invalid_argument("drift_delta must be in (0,1)");
  }
  if (mode == MonitorMode::TwoLevel &&
      !(warning_delta > drift_delta && warning_delta < 1.0)) {
    throw std::invalid_argument("warning_delta must exceed drift_delta and be < 1");
  }
}

DriftMonitor::DriftMonitor(MonitorConfig config)
    : config_(config), drift_(with_delta(config.window, config.drift_delta)) {
  config_.validate();
  if (config_.mode == MonitorMode::TwoLevel) {
    warn_.emplace(with_delta(config_.window, config_.warning_delta));
  }
}

void DriftMonitor::reset() {
  drift_.reset();
  if (warn_) warn_->reset();
}

bool DriftMonitor::fired(AdaptiveWindowDetector& detector, double error) {
  const double before = detector.mean();
  const bool change = detector.update(error) == ChangeFlag::Change;
  return change && (!config_.increases_only || detector.mean() > before);
}

DriftSignal DriftMonitor::update(bool correct) {
  const double error = correct ? 0.0 : 1.0;
  const bool warning = warn_ && fired(*warn_, error);
  if (fired(drift_, error)) {
    reset();
    return DriftSignal::Drift;
  }
  if (warning) {
    warn_->reset();
    return DriftSignal::Warning;
  }
  return DriftSignal::None;
}

}  // namespace esrf
