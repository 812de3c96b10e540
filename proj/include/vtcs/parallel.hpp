#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace vtcs {

// Deterministic data-parallel loop: each worker owns a contiguous index
// range and writes only to its own slots, so results are identical for any
// job count. f(i) must be independent across i.
template <typename F>
void parallel_for(std::size_t n, int jobs, F&& f) {
    if (n == 0) return;
    const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(jobs, n));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
        const std::size_t lo = w * chunk;
        const std::size_t hi = std::min(lo + chunk, n);
        if (lo >= hi) break;
        pool.emplace_back([&f, lo, hi] {
            for (std::size_t i = lo; i < hi; ++i) f(i);
        });
    }
    for (auto& t : pool) t.join();
}

}  // namespace vtcs
