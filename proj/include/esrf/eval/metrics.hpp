#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

namespace esrf {

struct SizeStats {
  double mean = 0.0;
  double stdev = 0.0;  // population
  std::size_t max = 0;
  std::size_t min = 0;
};

// One-pass (Welford) accumulation of ensemble sizes.
class SizeAccumulator {
 public:
  void add(std::size_t size);
  std::uint64_t count() const noexcept { return count_; }
  // Throws EmptyInput when nothing was added.
  SizeStats stats() const;

 private:
  std::uint64_t count_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
  std::size_t max_ = 0;
  std::size_t min_ = std::numeric_limits<std::size_t>::max();
};

SizeStats size_stats(std::span<const std::size_t> sizes);

// baseline / other; throws DomainError unless both are positive.
double speedup(double baseline_seconds, double other_seconds);
// variant - baseline, in percentage points.
double accuracy_delta(double variant_pct, double baseline_pct) noexcept;
// Arithmetic mean of per-dataset speedups (how cross-dataset averages are reported).
double mean_speedup(std::span<const double> speedups);

}  // namespace esrf
