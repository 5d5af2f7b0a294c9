#include "hdrm/reduction.hpp"

#include <atomic>
#include <cstdlib>
#include <string>
#include <thread>

namespace hdrm {

namespace {

// Nested parallel regions degrade to serial execution.
thread_local bool t_inside_worker = false;

int env_thread_cap() {
  const char* v = std::getenv("HDRM_THREADS");
  if (v == nullptr || *v == '\0') return 0;
  char* end = nullptr;
  long n = std::strtol(v, &end, 10);
  if (end == v || n < 1) return 0;
  return static_cast<int>(n);
}

}  // namespace

int worker_count() {
  int hw = static_cast<int>(std::thread::hardware_concurrency());
  if (hw < 1) hw = 1;
  int cap = env_thread_cap();
  if (cap > 0 && cap < hw) hw = cap;
  return hw;
}

double pairwise_sum(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn) {
  if (n <= 0) return;
  const int workers = worker_count();
  if (workers <= 1 || n == 1 || t_inside_worker) {
    for (std::int64_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::int64_t> cursor{0};
  auto run = [&] {
    t_inside_worker = true;
    for (;;) {
      std::int64_t i = cursor.fetch_add(1);
      if (i >= n) break;
      fn(i);
    }
    t_inside_worker = false;
  };
  std::vector<std::thread> pool;
  const int spawn = static_cast<int>(std::min<std::int64_t>(workers, n)) - 1;
  pool.reserve(static_cast<std::size_t>(spawn));
  for (int t = 0; t < spawn; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
}

double blocked_sum(std::int64_t n, std::int64_t block_size,
                   const std::function<double(std::int64_t, std::int64_t)>& block_fn) {
  if (n <= 0) return 0.0;
  if (block_size < 1) block_size = 1;
  const std::int64_t nblocks = (n + block_size - 1) / block_size;
  std::vector<double> partial(static_cast<std::size_t>(nblocks), 0.0);
  parallel_for(nblocks, [&](std::int64_t b) {
    const std::int64_t lo = b * block_size;
    const std::int64_t hi = std::min(n, lo + block_size);
    partial[static_cast<std::size_t>(b)] = block_fn(lo, hi);
  });
  return pairwise_sum(partial);
}

}  // namespace hdrm
