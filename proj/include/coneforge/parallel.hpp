#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace coneforge {

/// Worker bound from CONEFORGE_THREADS, defaulting to the processor count.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("CONEFORGE_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (...) {
    }
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

/// Runs body(item, worker) for item in [0, items), handing items out dynamically.
/// Workers stop taking new items once `stop` becomes true.
template <class Body>
void parallel_items(std::size_t items, Body&& body, const std::atomic<bool>* stop = nullptr) {
  const std::size_t workers = std::min(worker_count(), std::max<std::size_t>(items, 1));
  std::atomic<std::size_t> next{0};
  auto run = [&](std::size_t worker) {
    for (;;) {
      if (stop && stop->load(std::memory_order_relaxed)) return;
      const std::size_t item = next.fetch_add(1);
      if (item >= items) return;
      body(item, worker);
    }
  };
  if (workers <= 1) {
    run(0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run, w);
  run(0);
  for (auto& t : pool) t.join();
}

}  // namespace coneforge
