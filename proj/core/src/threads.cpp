#include "rsgame/threads.hpp"

#include <algorithm>
#include <atomic>
#include <thread>
#include <vector>

namespace rsgame {

namespace {
std::atomic<int> g_max_threads{1};
}

void set_max_threads(int n) { g_max_threads = std::max(1, n); }

int max_threads() { return g_max_threads; }

void parallel_for(int n, const std::function<void(int)>& fn) {
  const int workers = std::min(g_max_threads.load(), n);
  if (workers <= 1) {
    for (int k = 0; k < n; ++k) fn(k);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int k = next.fetch_add(1); k < n; k = next.fetch_add(1)) fn(k);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace rsgame
