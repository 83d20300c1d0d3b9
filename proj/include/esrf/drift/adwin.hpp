#pragma once

#include <cstdint>
#include <deque>
#include <vector>

namespace esrf {

enum class ChangeFlag { Stable, Change };

struct AdwinConfig {
  double delta = 0.002;
  int max_buckets = 5;     // buckets kept per size level before merging
  int clock = 32;          // cut checks run every `clock` insertions
  int min_window = 10;     // no checks until the window is longer than this
  int min_subwindow = 5;   // both halves of a tested split need at least this many items

  void validate() const;
};

// Adaptive windowing over a 0/1 stream, with an exponential histogram of buckets.
// The window is cut at a bucket boundary W = W0 W1 whenever
//   |mean(W0) - mean(W1)| >= sqrt(ln(4n/delta) / (2m)),  m = 1 / (1/n0 + 1/n1),
// dropping the oldest bucket and re-checking until no boundary qualifies.
class AdaptiveWindowDetector {
 public:
  explicit AdaptiveWindowDetector(AdwinConfig config = {});

  // Throws DomainError unless x is 0 or 1.
  ChangeFlag update(double x);
  void reset();

  double mean() const noexcept { return width_ > 0 ? total_ / static_cast<double>(width_) : 0.0; }
  std::uint64_t width() const noexcept { return width_; }
  double total() const noexcept { return total_; }
  double variance() const noexcept;
  std::uint64_t insertions() const noexcept { return time_; }
  std::size_t num_buckets() const noexcept;
  // Bucket sizes from oldest to newest.
  std::vector<std::uint64_t> bucket_sizes() const;
  const AdwinConfig& config() const noexcept { return config_; }

  static double cut_threshold(double delta, double n0, double n1, double n);

 private:
  struct Bucket {
    double total = 0.0;
    double variance = 0.0;
  };

  void insert(double x);
  void compress();
  bool check_cut();
  void drop_oldest();

  AdwinConfig config_;
  std::vector<std::deque<Bucket>> rows_;  // rows_[i] holds buckets of 2^i items, front = oldest
  std::uint64_t width_ = 0;
  double total_ = 0.0;
  double variance_sum_ = 0.0;
  std::uint64_t time_ = 0;
};

}  // namespace esrf
