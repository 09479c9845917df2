#pragma once

#include <algorithm>
#include <atomic>
#include <thread>

#include "skewhowe/philox.hpp"

namespace skewhowe {

template <class T>
std::vector<T> parallel_map(int count, std::uint64_t base_seed, int threads,
                            const std::function<T(int, std::uint64_t)>& f) {
  std::vector<T> out(count);
  threads = std::max(1, std::min(threads, count));
  std::atomic<int> next{0};
  auto work = [&] {
    for (int i = next++; i < count; i = next++) out[i] = f(i, derive_seed(base_seed, static_cast<std::uint64_t>(i)));
  };
  if (threads == 1) {
    work();
    return out;
  }
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) pool.emplace_back(work);
  for (auto& th : pool) th.join();
  return out;
}

}  // namespace skewhowe
