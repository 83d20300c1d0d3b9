#include "esrf/common/parallel.hpp"

#include <stdexcept>

#include <tbb/global_control.h>
#include <tbb/parallel_for.h>
#include <tbb/task_arena.h>

namespace esrf {

struct ParallelExecutor::Arena {
  explicit Arena(int threads)
      : control(tbb::global_control::max_allowed_parallelism, static_cast<std::size_t>(threads)),
        arena(threads) {}
  // Lifts the default worker cap (hardware threads) so explicit requests oversubscribe.
  tbb::global_control control;
  tbb::task_arena arena;
};

ParallelExecutor::ParallelExecutor(int threads) : threads_(threads) {
  if (threads_ < 1) throw std::invalid_argument("thread count must be >= 1");
  if (threads_ > 1) arena_ = std::make_unique<Arena>(threads_);
}

ParallelExecutor::~ParallelExecutor() = default;
ParallelExecutor::ParallelExecutor(ParallelExecutor&&) noexcept = default;
ParallelExecutor& ParallelExecutor::operator=(ParallelExecutor&&) noexcept = default;

void ParallelExecutor::for_each(std::size_t count,
                                const std::function<void(std::size_t)>& job) const {
  if (!arena_ || count < 2) {
    for (std::size_t i = 0; i < count; ++i) job(i);
    return;
  }
  arena_->arena.execute([&] {
    tbb::parallel_for(std::size_t{0}, count, [&](std::size_t i) { job(i); });
  });
}

}  // namespace esrf
