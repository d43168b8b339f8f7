#pragma once

#include <atomic>
#include <exception>
#include <thread>
#include <vector>

namespace netabs::detail {

// Runs fn(i) for i in [0, count) on up to `threads` workers.  Each index is
// processed exactly once and writes only its own slot, so results are
// independent of scheduling; the lowest-index exception (if any) is
// rethrown after all workers join.
template <class F>
void parallel_for_indexed(int count, int threads, F&& fn) {
  if (count <= 0) return;
  if (threads <= 1 || count == 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  const int workers = std::min(threads, count);
  std::atomic<int> next{0};
  std::vector<std::exception_ptr> errors(count);
  auto body = [&]() {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) pool.emplace_back(body);
  for (std::thread& t : pool) t.join();
  for (int i = 0; i < count; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
}

}  // namespace netabs::detail
