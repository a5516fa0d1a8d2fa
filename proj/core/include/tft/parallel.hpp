#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace tft::detail {

inline std::uint32_t resolve_workers(std::uint32_t requested) {
    if (requested != 0) return requested;
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

// Splits [0, total) into fixed-size chunks and hands each chunk index plus
// its range to fn. Chunk boundaries depend only on (total, chunk_size), so
// any per-chunk results can be combined deterministically regardless of the
// worker count. fn must be safe to call concurrently on distinct chunks.
inline void parallel_chunks(std::uint64_t total, std::uint64_t chunk_size,
                            std::uint32_t workers,
                            const std::function<void(std::uint64_t chunk_index,
                                                     std::uint64_t begin,
                                                     std::uint64_t end)>& fn) {
    if (total == 0) return;
    if (chunk_size == 0) chunk_size = 1;
    const std::uint64_t chunks = (total + chunk_size - 1) / chunk_size;
    const std::uint32_t n_workers =
        static_cast<std::uint32_t>(std::min<std::uint64_t>(resolve_workers(workers), chunks));

    if (n_workers <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) {
            fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
        }
        return;
    }

    std::atomic<std::uint64_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::uint64_t c = next.fetch_add(1);
            if (c >= chunks) return;
            fn(c, c * chunk_size, std::min(total, (c + 1) * chunk_size));
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(n_workers);
    for (std::uint32_t i = 0; i < n_workers; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

} // namespace tft::detail
