#include "esrf/eval/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "esrf/common/errors.hpp"

namespace esrf {

void SizeAccumulator::add(std::size_t size) {
  ++count_;
  const double x = static_cast<double>(size);
  const double delta = x - mean_;
  mean_ += delta / static_cast<double>(count_);
  m2_ += delta * (x - mean_);
  max_ = std::max(max_, size);
  min_ = std::min(min_, size);
}

SizeStats SizeAccumulator::stats() const {
  if (count_ == 0) throw EmptyInput("size statistics need at least one sample");
  return SizeStats{mean_, std::sqrt(std::max(0.0, m2_ / static_cast<double>(count_))), max_, min_};
}

SizeStats size_stats(std::span<const std::size_t> sizes) {
  SizeAccumulator acc;
  for (auto s : sizes) acc.add(s);
  return acc.stats();
}

double speedup(double baseline_seconds, double other_seconds) {
  if (!(baseline_seconds > 0.0) || !(other_seconds > 0.0)) {
    throw DomainError("speedup needs positive times");
  }
  return baseline_seconds / other_seconds;
}

double accuracy_delta(double variant_pct, double baseline_pct) noexcept {
  return variant_pct - baseline_pct;
}

double mean_speedup(std::span<const double> speedups) {
  if (speedups.empty()) throw EmptyInput("no speedups to average");
  return std::accumulate(speedups.begin(), speedups.end(), 0.0) /
         static_cast<double>(speedups.size());
}

}  // namespace esrf
