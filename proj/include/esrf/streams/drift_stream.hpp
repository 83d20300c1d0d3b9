#pragma once

#include <cstdint>
#include <memory>

#include "esrf/common/rng.hpp"
#include "esrf/streams/stream.hpp"

namespace esrf {

// Sigmoid join of two concepts: instance i comes from the target concept with probability
// 1 / (1 + exp(-4 (i - position) / width)). Only the chosen concept advances.
class DriftStream final : public InstanceStream {
 public:
  // Throws SchemaMismatch if the two concepts disagree on their schema.
  DriftStream(std::unique_ptr<InstanceStream> base, std::unique_ptr<InstanceStream> target,
              double position, double width, std::uint64_t seed);

  static double target_probability(double index, double position, double width);

  const Schema& schema() const override { return base_->schema(); }
  std::optional<Instance> next() override { return drift_next(); }
  std::optional<Instance> drift_next();

  std::uint64_t instances_emitted() const noexcept { return index_; }
  // Whether the last emitted instance came from the target concept.
  bool last_from_target() const noexcept { return last_from_target_; }

 private:
  std::unique_ptr<InstanceStream> base_;
  std::unique_ptr<InstanceStream> target_;
  double position_;
  double width_;
  Rng rng_;
  std::uint64_t index_ = 0;
  bool last_from_target_ = false;
};

}  // namespace esrf
