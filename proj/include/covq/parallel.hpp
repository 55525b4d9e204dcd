#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdlib>
#include <functional>
#include <string>
#include <thread>
#include <vector>

namespace covq {

// Worker count resolution: explicit request > COVER_THREADS > hardware.
inline int resolve_threads(int requested = 0) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("COVER_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

// Global default used by MC drivers; the CLI sets this from --threads.
inline int& worker_count() {
    static int n = resolve_threads();
    return n;
}

// Runs fn(chunk_index, begin, end) over fixed-size chunks of [0,count).
// Chunk boundaries depend only on (count, chunk_size), never on the worker
// count, so per-chunk outputs can be reduced in index order to give
// bit-identical results for any number of threads.
inline void parallel_chunks(std::size_t count, std::size_t chunk_size,
                            const std::function<void(std::size_t, std::size_t, std::size_t)>& fn,
                            int threads = 0) {
    if (count == 0) return;
    const std::size_t n_chunks = (count + chunk_size - 1) / chunk_size;
    const int n_threads = std::min<std::size_t>(resolve_threads(threads == 0 ? worker_count() : threads), n_chunks);
    if (n_threads <= 1) {
        for (std::size_t c = 0; c < n_chunks; ++c)
            fn(c, c * chunk_size, std::min(count, (c + 1) * chunk_size));
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t c = next.fetch_add(1);
                if (c >= n_chunks) return;
                fn(c, c * chunk_size, std::min(count, (c + 1) * chunk_size));
            }
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace covq
