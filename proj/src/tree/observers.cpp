#include "esrf/tree/observers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace esrf {

void GaussianEstimator::add(double value, double weight) {
  if (weight <= 0.0) return;
  if (weight_ == 0.0) {
    weight_ = weight;
    mean_ = value;
    variance_sum_ = 0.0;
    return;
  }
  const double last_mean = mean_;
  weight_ += weight;
  mean_ += weight * (value - last_mean) / weight_;
  variance_sum_ += weight * (value - last_mean) * (value - mean_);
}

double GaussianEstimator::variance() const noexcept {
  return weight_ > 1.0 ? variance_sum_ / (weight_ - 1.0) : 0.0;
}

double GaussianEstimator::stdev() const noexcept { return std::sqrt(variance()); }

double GaussianEstimator::density(double value) const noexcept {
  if (weight_ <= 0.0) return 0.0;
  const double sd = stdev();
  if (sd > 0.0) {
    const double diff = value - mean_;
    return std::exp(-diff * diff / (2.0 * sd * sd)) / (std::sqrt(2.0 * std::numbers::pi) * sd);
  }
  return value == mean_ ? 1.0 : 0.0;
}

std::array<double, 3> GaussianEstimator::split_weights(double value) const noexcept {
  const double sd = stdev();
  double at_most = 0.0;  // weight <= value
  if (sd > 0.0) {
    at_most = normal_cdf((value - mean_) / sd) * weight_;
  } else if (value >= mean_) {
    at_most = weight_;
  }
  const double equal = std::min(at_most, density(value) * weight_);
  return {at_most - equal, equal, weight_ - at_most};
}

double normal_cdf(double z) noexcept { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

AttributeObserver AttributeObserver::numeric(std::size_t num_classes) {
  AttributeObserver o;
  o.num_classes_ = num_classes;
  o.estimators_.resize(num_classes);
  o.min_.assign(num_classes, std::numeric_limits<double>::infinity());
  o.max_.assign(num_classes, -std::numeric_limits<double>::infinity());
  return o;
}

AttributeObserver AttributeObserver::nominal(std::size_t num_classes, std::size_t num_values) {
  AttributeObserver o;
  o.num_classes_ = num_classes;
  o.num_values_ = num_values;
  o.counts_.assign(num_classes * num_values, 0.0);
  o.class_totals_.assign(num_classes, 0.0);
  return o;
}

void AttributeObserver::observe(double value, int class_index, double weight) {
  const auto c = static_cast<std::size_t>(class_index);
  if (is_nominal()) {
    counts_[static_cast<std::size_t>(value) * num_classes_ + c] += weight;
    class_totals_[c] += weight;
    return;
  }
  estimators_[c].add(value, weight);
  min_[c] = std::min(min_[c], value);
  max_[c] = std::max(max_[c], value);
}

double AttributeObserver::likelihood(double value, int class_index) const noexcept {
  const auto c = static_cast<std::size_t>(class_index);
  if (is_nominal()) {
    const double count = counts_[static_cast<std::size_t>(value) * num_classes_ + c];
    return (count + 1.0) / (class_totals_[c] + static_cast<double>(num_values_));
  }
  return estimators_[c].density(value);
}

std::vector<double> AttributeObserver::candidate_thresholds(int points) const {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (std::size_t c = 0; c < num_classes_; ++c) {
    lo = std::min(lo, min_[c]);
    hi = std::max(hi, max_[c]);
  }
  std::vector<double> out;
  if (!(lo < hi)) return out;
  const double step = (hi - lo) / (points + 1);
  for (int i = 1; i <= points; ++i) {
    const double t = lo + step * i;
    if (t > lo && t < hi) out.push_back(t);
  }
  return out;
}

std::array<std::vector<double>, 2> AttributeObserver::binary_split(double threshold) const {
  std::array<std::vector<double>, 2> out{std::vector<double>(num_classes_, 0.0),
                                         std::vector<double>(num_classes_, 0.0)};
  for (std::size_t c = 0; c < num_classes_; ++c) {
    const auto& est = estimators_[c];
    if (est.weight() <= 0.0) continue;
    if (threshold < min_[c]) {
      out[1][c] += est.weight();
    } else if (threshold >= max_[c]) {
      out[0][c] += est.weight();
    } else {
      const auto w = est.split_weights(threshold);
      out[0][c] += w[0] + w[1];
      out[1][c] += w[2];
    }
  }
  return out;
}

std::vector<std::vector<double>> AttributeObserver::multiway_split() const {
  std::vector<std::vector<double>> out(num_values_, std::vector<double>(num_classes_, 0.0));
  for (std::size_t v = 0; v < num_values_; ++v) {
    for (std::size_t c = 0; c < num_classes_; ++c) out[v][c] = counts_[v * num_classes_ + c];
  }
  return out;
}

double entropy(std::span<const double> distribution) noexcept {
  double total = 0.0;
  for (double w : distribution) total += w;
  if (total <= 0.0) return 0.0;
  double h = 0.0;
  for (double w : distribution) {
    if (w > 0.0) {
      const double p = w / total;
      h -= p * std::log2(p);
    }
  }
  return h;
}

double info_gain(std::span<const double> pre_split,
                 const std::vector<std::vector<double>>& post_split,
                 double min_branch_fraction) {
  double total = 0.0;
  std::vector<double> branch_weights;
  for (const auto& branch : post_split) {
    double w = 0.0;
    for (double x : branch) w += x;
    branch_weights.push_back(w);
    total += w;
  }
  if (total <= 0.0) return -std::numeric_limits<double>::infinity();
  int substantial = 0;
  for (double w : branch_weights) {
    if (w / total > min_branch_fraction) ++substantial;
  }
  if (substantial < 2) return -std::numeric_limits<double>::infinity();
  double post = 0.0;
  for (std::size_t b = 0; b < post_split.size(); ++b) {
    post += branch_weights[b] / total * entropy(post_split[b]);
  }
  return entropy(pre_split) - post;
}

}  // namespace esrf
