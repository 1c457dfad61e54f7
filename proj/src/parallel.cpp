#include "pseudoroll/parallel.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

namespace pseudoroll {

int thread_count() {
  int n = int(std::thread::hardware_concurrency());
  if (n < 1) n = 1;
  if (const char* env = std::getenv("PSEUDOROLL_THREADS")) {
    try {
      const int cap = std::stoi(env);
      n = std::min(n, std::max(1, cap));
    } catch (...) {
      // Unparsable values are ignored rather than fatal.
    }
  }
  return n;
}

void parallel_for_chunks(
    std::size_t n, const std::function<void(std::size_t, std::size_t)>& fn) {
  const std::size_t workers =
      std::min<std::size_t>(std::size_t(thread_count()), std::max<std::size_t>(n, 1));
  if (workers <= 1 || n < 2) {
    fn(0, n);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(workers);
  const std::size_t chunk = (n + workers - 1) / workers;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t lo = w * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (auto& th : pool) th.join();
}

}  // namespace pseudoroll
