// Tiny static-scheduling parallel loop. Worker count comes from the
// RANK1_NUM_THREADS environment variable and defaults to 1, so runs are
// sequential (and bit-reproducible) unless the caller opts in.
#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace rank1 {

inline int max_threads() {
    if (const char* env = std::getenv("RANK1_NUM_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1)
            return v;
    }
    return 1;
}

/// Run fn(i) for i in [0, count). fn must confine its writes to per-index
/// slots of preallocated storage; reductions belong to the caller so that
/// results do not depend on the thread count.
template <class F>
void parallel_for(std::size_t count, F&& fn) {
    std::size_t nt = static_cast<std::size_t>(max_threads());
    if (nt > count)
        nt = count;
    if (nt <= 1) {
        for (std::size_t i = 0; i < count; i++)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (std::size_t t = 0; t < nt; t++)
        pool.emplace_back([&] {
            for (std::size_t i; (i = next.fetch_add(1)) < count;)
                fn(i);
        });
    for (auto& th : pool)
        th.join();
}

}  // namespace rank1
