#pragma once

#include <cstddef>
#include <string>

#include "esrf/streams/schema.hpp"

namespace esrf {

// Online classifier driven by the evaluation harness: predict first, then train.
class Classifier {
 public:
  virtual ~Classifier() = default;
  virtual int predict(const Instance& instance) const = 0;
  virtual void train(const Instance& instance) = 0;
  // Number of learners whose votes form the prediction.
  virtual std::size_t voting_size() const = 0;
};

}  // namespace esrf
