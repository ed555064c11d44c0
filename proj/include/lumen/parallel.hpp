// parallel.hpp - chunked parallel map over an index range. Each index writes
// its own output slot, so results are deterministic and independent of the
// worker count. LUMEN_THREADS caps the pool.

#pragma once

#include <algorithm>
#include <cstdlib>
#include <thread>
#include <vector>

namespace lumen {

inline unsigned worker_count(std::size_t n) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("LUMEN_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0) hw = std::min<unsigned>(hw, static_cast<unsigned>(cap));
    }
    return static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(n, 1)));
}

template <class Fn>
void parallel_for(std::size_t n, Fn&& fn) {
    const unsigned workers = worker_count(n);
    if (workers <= 1 || n < 64) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace lumen
