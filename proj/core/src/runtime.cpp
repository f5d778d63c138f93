#include "inflap/runtime.hpp"

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace inflap::runtime {

int thread_cap() {
  static const int cap = [] {
    if (const char* env = std::getenv("INFLAP_THREADS")) {
      int parsed = std::atoi(env);
      if (parsed > 0) return parsed;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }();
  return cap;
}

void parallel_for(int n, const std::function<void(int)>& fn) {
  int workers = std::min(thread_cap(), n);
  if (workers <= 1 || n < 4) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace inflap::runtime
