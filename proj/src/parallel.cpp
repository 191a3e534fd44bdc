#include "charzeta/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>

namespace charzeta {

unsigned worker_count() {
  if (const char* env = std::getenv("CHARZETA_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const std::size_t workers = std::min<std::size_t>(worker_count(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto run = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next.store(n);
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (std::size_t t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t parallel_sum(std::size_t n, const std::function<std::uint64_t(std::size_t)>& term) {
  constexpr std::size_t kBlocks = 64;
  const std::size_t blocks = std::min(n, kBlocks);
  std::vector<std::uint64_t> partial(blocks, 0);
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t lo = n * b / blocks, hi = n * (b + 1) / blocks;
    std::uint64_t s = 0;
    for (std::size_t i = lo; i < hi; ++i) s += term(i);
    partial[b] = s;
  });
  std::uint64_t total = 0;
  for (auto s : partial) total += s;
  return total;
}

}  // namespace charzeta
