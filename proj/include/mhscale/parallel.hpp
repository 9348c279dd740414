#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

namespace mhscale {

inline unsigned resolve_threads(unsigned requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

// Work-stealing over fixed blocks of replica indices. Each block owns one
// accumulator; blocks are merged in index order afterwards, so the reduction
// is byte-identical for every thread count.
template <class Acc, class PerItem>
Acc parallel_reduce(std::uint64_t count, unsigned threads, std::uint64_t block_size,
                    PerItem&& per_item) {
  threads = resolve_threads(threads);
  if (block_size == 0) block_size = 1024;
  const std::uint64_t num_blocks = (count + block_size - 1) / block_size;
  std::vector<Acc> block_acc(num_blocks);
  auto run_block = [&](std::uint64_t b) {
    const std::uint64_t lo = b * block_size;
    const std::uint64_t hi = std::min(count, lo + block_size);
    for (std::uint64_t i = lo; i < hi; ++i) per_item(i, block_acc[b]);
  };
  if (threads == 1 || num_blocks <= 1) {
    for (std::uint64_t b = 0; b < num_blocks; ++b) run_block(b);
  } else {
    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
      for (std::uint64_t b = next.fetch_add(1); b < num_blocks;
           b = next.fetch_add(1)) {
        run_block(b);
      }
    };
    std::vector<std::thread> pool;
    const unsigned width = std::min<std::uint64_t>(threads, num_blocks);
    pool.reserve(width);
    for (unsigned t = 0; t < width; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  Acc total{};
  for (auto& a : block_acc) total.merge(a);
  return total;
}

// Plain parallel loop; per_item must only touch index-owned state.
template <class PerItem>
void parallel_for(std::uint64_t count, unsigned threads, PerItem&& per_item) {
  struct Nothing {
    void merge(const Nothing&) {}
  };
  parallel_reduce<Nothing>(count, threads, 64,
                           [&](std::uint64_t i, Nothing&) { per_item(i); });
}

}  // namespace mhscale
