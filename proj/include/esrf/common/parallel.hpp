#pragma once

#include <cstddef>
#include <functional>
#include <memory>

namespace esrf {

// Runs independent index-addressed jobs on a fixed number of worker threads.
// With one thread the jobs run inline, in index order.
class ParallelExecutor {
 public:
  explicit ParallelExecutor(int threads = 1);
  ~ParallelExecutor();
  ParallelExecutor(ParallelExecutor&&) noexcept;
  ParallelExecutor& operator=(ParallelExecutor&&) noexcept;

  int threads() const noexcept { return threads_; }
  void for_each(std::size_t count, const std::function<void(std::size_t)>& job) const;

 private:
  int threads_;
  struct Arena;
  std::unique_ptr<Arena> arena_;
};

}  // namespace esrf
