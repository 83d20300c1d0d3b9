#pragma once

#include <cstdint>
#include <memory>
#include <optional>

#include "esrf/streams/schema.hpp"

namespace esrf {

class InstanceStream {
 public:
  virtual ~InstanceStream() = default;
  virtual const Schema& schema() const = 0;
  // nullopt once a finite stream is exhausted; generators never end.
  virtual std::optional<Instance> next() = 0;
};

// Stops the wrapped stream after `limit` instances.
class BoundedStream final : public InstanceStream {
 public:
  BoundedStream(std::unique_ptr<InstanceStream> inner, std::uint64_t limit)
      : inner_(std::move(inner)), limit_(limit) {}

  const Schema& schema() const override { return inner_->schema(); }
  std::optional<Instance> next() override {
    if (emitted_ >= limit_) return std::nullopt;
    auto inst = inner_->next();
    if (inst) ++emitted_;
    return inst;
  }

 private:
  std::unique_ptr<InstanceStream> inner_;
  std::uint64_t limit_;
  std::uint64_t emitted_ = 0;
};

}  // namespace esrf
