#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

namespace qdt {

inline unsigned default_thread_count() {
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs scan(i) for outer indices 0..count-1 and returns the result for the
// least i that produced one. Workers take strided indices and stop once they
// pass the best index seen so far, so the answer does not depend on
// scheduling.
template <class T, class Scan>
std::optional<T> find_first(std::uint64_t count, unsigned threads, Scan&& scan) {
  if (threads == 0) threads = default_thread_count();
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  if (threads <= 1) {
    for (std::uint64_t i = 0; i < count; ++i)
      if (auto hit = scan(i)) return hit;
    return std::nullopt;
  }

  std::atomic<std::uint64_t> best{count};
  std::vector<std::optional<T>> found(threads);
  std::vector<std::uint64_t> found_at(threads, count);
  std::vector<std::thread> workers;
  workers.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    workers.emplace_back([&, w] {
      for (std::uint64_t i = w; i < count; i += threads) {
        if (i > best.load(std::memory_order_relaxed)) return;
        if (auto hit = scan(i)) {
          found[w] = std::move(hit);
          found_at[w] = i;
          std::uint64_t cur = best.load();
          while (i < cur && !best.compare_exchange_weak(cur, i)) {
          }
          return;
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  const auto least = std::min_element(found_at.begin(), found_at.end()) - found_at.begin();
  return std::move(found[static_cast<std::size_t>(least)]);
}

}  // namespace qdt
