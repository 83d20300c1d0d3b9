#include "esrf/streams/drift_stream.hpp"

#include <cmath>
#include <stdexcept>

#include "esrf/common/errors.hpp"

namespace esrf {

DriftStream::DriftStream(std::unique_ptr<InstanceStream> base,
                         std::unique_ptr<InstanceStream> target, double position, double width,
                         std::uint64_t seed)
    : base_(std::move(base)),
      target_(std::move(target)),
      position_(position),
      width_(width),
      rng_(seed) {
  if (!base_ || !target_) throw std::invalid_argument("drift stream needs two concepts");
  if (!(width_ > 0.0)) throw std::invalid_argument("drift width must be positive");
  if (!(base_->schema() == target_->schema())) {
    throw SchemaMismatch("drift concepts have different schemas");
  }
}

double DriftStream::target_probability(double index, double position, double width) {
  return 1.0 / (1.0 + std::exp(-4.0 * (index - position) / width));
}

std::optional<Instance> DriftStream::drift_next() {
  const double p = target_probability(static_cast<double>(index_), position_, width_);
  last_from_target_ = uniform01(rng_) < p;
  auto inst = last_from_target_ ? target_->next() : base_->next();
  if (inst) ++index_;
  return inst;
}

}  // namespace esrf
