#pragma once

namespace esrf {

// Exponentially weighted moving average of 0/1 outcomes: value += alpha * (s - value).
class EwmaAccuracy {
 public:
  // alpha = 1 - exp(-1/W): the decay over W steps is 1/e.
  static double alpha_for_window(int window);

  explicit EwmaAccuracy(double alpha, double initial = 0.0);

  // Throws DomainError unless s is 0 or 1.
  void update(double s);

  double value() const noexcept { return value_; }
  double alpha() const noexcept { return alpha_; }

 private:
  double alpha_;
  double value_;
};

}  // namespace esrf
