#ifndef FRGAME_PARALLEL_HPP
#define FRGAME_PARALLEL_HPP

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace frgame {

// Worker count from FRGAME_WORKERS (0 or unset -> hardware concurrency).
inline int worker_count() {
  if (const char* env = std::getenv("FRGAME_WORKERS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(i) for i in [0, n_tasks). Tasks must write only to their own slot;
// callers keep output ordering fixed by index, so results do not depend on
// the worker count.
template <typename F>
void parallel_for(int n_tasks, F&& fn, int workers = worker_count()) {
  if (n_tasks <= 0) return;
  if (workers <= 1 || n_tasks == 1) {
    for (int i = 0; i < n_tasks; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  const int n_threads = std::min(workers, n_tasks);
  pool.reserve(static_cast<std::size_t>(n_threads));
  for (int t = 0; t < n_threads; ++t) {
    pool.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1)) fn(i);
    });
  }
  for (std::thread& th : pool) th.join();
}

}  // namespace frgame

#endif  // FRGAME_PARALLEL_HPP
