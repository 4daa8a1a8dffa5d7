#include "oufreq/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace oufreq {

int worker_count() {
  if (const char *env = std::getenv("OUFREQ_THREADS")) {
    const int v = std::atoi(env);
    if (v >= 1) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return static_cast<int>(std::clamp(hw, 1u, 8u));
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)> &fn) {
  const int workers = std::min<std::size_t>(worker_count(), count);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
        fn(i);
    });
  }
  for (auto &t : pool) t.join();
}

} // namespace oufreq
