#include "esrf/ensemble/ewma.hpp"

#include <cmath>
#include <stdexcept>

#include "esrf/common/errors.hpp"

namespace esrf {

double EwmaAccuracy::alpha_for_window(int window) {
  if (window < 1) throw DomainError("EWMA window must be >= 1");
  return -std::expm1(-1.0 / static_cast<double>(window));
}

EwmaAccuracy::EwmaAccuracy(double alpha, double initial) : alpha_(alpha), value_(initial) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("EWMA alpha must be in (0,1)");
  if (!(initial >= 0.0 && initial <= 1.0)) throw DomainError("EWMA start must be in [0,1]");
}

void EwmaAccuracy::update(double s) {
  if (s != 0.0 && s != 1.0) throw DomainError("EWMA input must be 0 or 1");
  value_ += alpha_ * (s - value_);
}

}  // namespace esrf
