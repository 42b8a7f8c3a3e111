#ifndef CORRTOMO_PARALLEL_HPP
#define CORRTOMO_PARALLEL_HPP

#include <cstddef>
#include <thread>
#include <vector>

namespace corrtomo {

/// Static block partition of [0, n) over `threads` workers. Work items
/// must be independent; determinism comes from per-index derived seeds,
/// not from scheduling.
template <typename Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    threads = std::min<std::size_t>(threads, n);
    std::vector<std::thread> pool;
    pool.reserve(threads);
    std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
        std::size_t lo = std::size_t(t) * chunk;
        std::size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace corrtomo

#endif
