#pragma once

#include <cstddef>
#include <functional>
#include <thread>
#include <vector>

namespace skewfold {

// Chunked parallel loop. fn(begin, end) must only touch its own chunk;
// callers merge per-chunk results in index order so output stays
// deterministic regardless of scheduling.
inline void parallel_chunks(std::size_t n, int threads,
                            const std::function<void(std::size_t, std::size_t, int)>& fn) {
    if (threads < 1) threads = 1;
    if (threads == 1 || n < 2) {
        fn(0, n, 0);
        return;
    }
    std::size_t nt = std::min<std::size_t>(static_cast<std::size_t>(threads), n);
    std::vector<std::thread> pool;
    std::size_t chunk = (n + nt - 1) / nt;
    for (std::size_t t = 0; t < nt; ++t) {
        std::size_t b = t * chunk;
        std::size_t e = std::min(n, b + chunk);
        if (b >= e) break;
        pool.emplace_back(fn, b, e, static_cast<int>(t));
    }
    for (auto& th : pool) th.join();
}

}  // namespace skewfold
