#ifndef SYMBIOSIM_PARALLEL_HPP
#define SYMBIOSIM_PARALLEL_HPP

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace symbiosim {

// Runs fn(r) for r in [0, replicas). Each replica derives its own RNG stream
// from its index, and results land in per-replica slots, so the output is
// independent of the thread count and of scheduling.
template <typename Fn>
void parallel_for_replicas(std::int64_t replicas, int threads, Fn&& fn) {
  if (threads <= 1 || replicas <= 1) {
    for (std::int64_t r = 0; r < replicas; ++r) fn(r);
    return;
  }
  std::atomic<std::int64_t> counter{0};
  auto worker = [&] {
    for (;;) {
      const std::int64_t r = counter.fetch_add(1);
      if (r >= replicas) return;
      fn(r);
    }
  };
  std::vector<std::thread> pool;
  const int n = std::min<std::int64_t>(threads, replicas);
  pool.reserve(n);
  for (int i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
}

}  // namespace symbiosim

#endif
