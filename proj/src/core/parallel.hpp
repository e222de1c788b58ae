#pragma once

#include <atomic>
#include <cstddef>
#include <thread>
#include <vector>

namespace qpl {

inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Runs fn(begin, end) over fixed-size chunks of [0, n).  Chunk boundaries do
// not depend on the thread count, so per-chunk accumulators reduced in chunk
// order give bit-identical results for any parallelism degree.
template <typename Fn>
void parallel_chunks(std::size_t n, std::size_t chunk_size, int n_threads, Fn&& fn) {
    if (n == 0) return;
    const std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
    const int threads = std::min<int>(resolve_threads(n_threads), static_cast<int>(n_chunks));
    if (threads <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c)
            fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                const std::size_t c = next.fetch_add(1);
                if (c >= n_chunks) return;
                fn(c, c * chunk_size, std::min(n, (c + 1) * chunk_size));
            }
        });
    }
    for (auto& th : pool) th.join();
}

constexpr std::size_t kTrajectoryChunk = 8192;

}  // namespace qpl
