#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace chevstab {

// CHEVSTAB_JOBS, else 1
inline unsigned default_jobs() {
  if (const char* env = std::getenv("CHEVSTAB_JOBS")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return static_cast<unsigned>(v);
    } catch (const std::exception&) {
    }
  }
  return 1;
}

// f applied to every item; results kept in input order whatever the schedule
template <class Item, class F>
auto parallel_map(const std::vector<Item>& items, unsigned jobs, F f)
    -> std::vector<decltype(f(items.front()))> {
  using R = decltype(f(items.front()));
  std::vector<R> out(items.size());
  if (jobs <= 1 || items.size() <= 1) {
    for (std::size_t i = 0; i < items.size(); ++i) out[i] = f(items[i]);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failMutex;
  auto worker = [&] {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= items.size()) return;
      try {
        out[i] = f(items[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failMutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  unsigned n = std::min<unsigned>(jobs, static_cast<unsigned>(items.size()));
  for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace chevstab
