#include "addlab/parallel.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace addlab {

unsigned worker_count() {
  if (const char* env = std::getenv("ADDLAB_THREADS")) {
    try {
      long v = std::stol(env);
      if (v >= 1) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
      // fall through to the hardware default
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {
thread_local bool inside_worker = false;
}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
  parallel_for(n, fn, worker_count());
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn, unsigned max_workers) {
  const std::size_t workers = inside_worker ? 1 : std::min<std::size_t>(std::max(1u, max_workers), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  auto body = [&] {
    const bool was_inside = inside_worker;
    inside_worker = true;
    struct Restore {
      bool value;
      ~Restore() { inside_worker = value; }
    } restore{was_inside};
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(error_mu);
        if (!error) error = std::current_exception();
        next.store(n);
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  for (std::size_t w = 0; w + 1 < workers; ++w) threads.emplace_back(body);
  body();
  for (auto& th : threads) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace addlab
