#pragma once

#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace labelcut {

// Worker cap from LABELCUT_THREADS (0 or unset = hardware concurrency).
inline int thread_budget() {
    long requested = 0;
    if (const char* env = std::getenv("LABELCUT_THREADS")) {
        requested = std::strtol(env, nullptr, 10);
    }
    if (requested > 0) return static_cast<int>(requested > 256 ? 256 : requested);
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Run fn(begin, end, worker) over a partition of [0, count). Workers must not
// touch shared state except their own slot; callers combine results in worker
// order so the outcome is independent of scheduling.
inline void parallel_chunks(long long count,
                            const std::function<void(long long, long long, int)>& fn) {
    int workers = thread_budget();
    if (count < 1024 || workers <= 1) {
        fn(0, count, 0);
        return;
    }
    if (workers > count) workers = static_cast<int>(count);
    long long chunk = (count + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        long long begin = w * chunk;
        long long end = begin + chunk < count ? begin + chunk : count;
        if (begin >= end) break;
        pool.emplace_back(fn, begin, end, w);
    }
    for (auto& th : pool) th.join();
}

} // namespace labelcut
