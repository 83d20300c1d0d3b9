#pragma once

#include <cmath>
#include <cstddef>
#include <deque>

namespace esrf::test {

// Quadratic reference for the adaptive window: keeps every item and tests every split.
class BruteForceWindow {
 public:
  BruteForceWindow(double delta, int clock, int min_window, int min_subwindow)
      : delta_(delta), clock_(clock), min_window_(min_window), min_sub_(min_subwindow) {}

  bool update(int x) {
    items_.push_back(x);
    ++time_;
    if (time_ % clock_ != 0 || items_.size() <= static_cast<std::size_t>(min_window_)) {
      return false;
    }
    bool changed = false;
    while (cut_once()) changed = true;
    return changed;
  }

  std::size_t width() const { return items_.size(); }

  double mean() const {
    if (items_.empty()) return 0.0;
    long s = 0;
    for (int x : items_) s += x;
    return static_cast<double>(s) / static_cast<double>(items_.size());
  }

 private:
  bool cut_once() {
    const std::size_t n = items_.size();
    for (std::size_t split = 1; split < n; ++split) {
      long s0 = 0;
      long s1 = 0;
      for (std::size_t i = 0; i < split; ++i) s0 += items_[i];
      for (std::size_t i = split; i < n; ++i) s1 += items_[i];
      const double n0 = static_cast<double>(split);
      const double n1 = static_cast<double>(n - split);
      if (n0 < min_sub_ || n1 < min_sub_) continue;
      const double m = 1.0 / (1.0 / n0 + 1.0 / n1);
      const double eps = std::sqrt(std::log(4.0 * static_cast<double>(n) / delta_) / (2.0 * m));
      if (std::abs(static_cast<double>(s0) / n0 - static_cast<double>(s1) / n1) >= eps) {
        items_.pop_front();
        return true;
      }
    }
    return false;
  }

  double delta_;
  long clock_;
  int min_window_;
  int min_sub_;
  long time_ = 0;
  std::deque<int> items_;
};

}  // namespace esrf::test
