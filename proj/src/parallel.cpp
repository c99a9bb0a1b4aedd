#include "axivort/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace axivort {

namespace {
std::atomic<int> g_threads{0};
}

void set_num_threads(int n) { g_threads.store(std::max(0, n)); }

int num_threads() {
  const int n = g_threads.load();
  if (n > 0) return n;
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(int n, const std::function<void(int, int)>& body) {
  if (n <= 0) return;
  const int workers = std::min(num_threads(), n);
  if (workers == 1) {
    body(0, n);
    return;
  }
  // Several blocks per worker so uneven rows (near-axis bands, truncated
  // kernels) still balance.
  const int blocks = std::min(n, workers * 4);
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (;;) {
      const int b = next.fetch_add(1);
      if (b >= blocks) return;
      const int begin = static_cast<int>(static_cast<long long>(n) * b / blocks);
      const int end = static_cast<int>(static_cast<long long>(n) * (b + 1) / blocks);
      try {
        body(begin, end);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (int w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace axivort
