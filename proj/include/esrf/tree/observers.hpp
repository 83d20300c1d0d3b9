#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <vector>

namespace esrf {

// Weighted running mean/variance (West's update).
class GaussianEstimator {
 public:
  void add(double value, double weight);
  double weight() const noexcept { return weight_; }
  double mean() const noexcept { return mean_; }
  double variance() const noexcept;
  double stdev() const noexcept;
  double density(double value) const noexcept;
  // Estimated weight strictly below, equal to and above `value`.
  std::array<double, 3> split_weights(double value) const noexcept;

 private:
  double weight_ = 0.0;
  double mean_ = 0.0;
  double variance_sum_ = 0.0;
};

double normal_cdf(double z) noexcept;

// Per-class sufficient statistics for one attribute.
class AttributeObserver {
 public:
  static AttributeObserver numeric(std::size_t num_classes);
  static AttributeObserver nominal(std::size_t num_classes, std::size_t num_values);

  bool is_nominal() const noexcept { return num_values_ > 0; }
  void observe(double value, int class_index, double weight);
  double likelihood(double value, int class_index) const noexcept;

  // Candidate binary thresholds: `points` evenly spaced strictly inside [min, max].
  std::vector<double> candidate_thresholds(int points) const;
  // Class distributions left (<= threshold) and right of a numeric split.
  std::array<std::vector<double>, 2> binary_split(double threshold) const;
  // Class distributions per nominal category.
  std::vector<std::vector<double>> multiway_split() const;

 private:
  std::size_t num_classes_ = 0;
  std::size_t num_values_ = 0;
  // numeric
  std::vector<GaussianEstimator> estimators_;
  std::vector<double> min_;
  std::vector<double> max_;
  // nominal: counts_[value * num_classes + class]
  std::vector<double> counts_;
  std::vector<double> class_totals_;
};

double entropy(std::span<const double> distribution) noexcept;
// Information gain of a split; -infinity when fewer than two branches hold at least
// `min_branch_fraction` of the weight.
double info_gain(std::span<const double> pre_split,
                 const std::vector<std::vector<double>>& post_split,
                 double min_branch_fraction = 0.01);

}  // namespace esrf
