#ifndef GABOR_PARALLEL_HPP
#define GABOR_PARALLEL_HPP

#include <cstdint>
#include <thread>
#include <vector>

namespace gabor {

// Static block-partitioned parallel loop. Each task writes only to its own
// output slots, so results do not depend on scheduling order.
template <typename Fn>
void parallel_for(std::int64_t begin, std::int64_t end, Fn&& fn) {
    const std::int64_t n = end - begin;
    if (n <= 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    const std::int64_t n_threads = std::min<std::int64_t>(hw, n);
    if (n_threads <= 1) {
        for (std::int64_t i = begin; i < end; ++i) fn(i);
        return;
    }
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(n_threads));
    const std::int64_t chunk = (n + n_threads - 1) / n_threads;
    for (std::int64_t t = 0; t < n_threads; ++t) {
        const std::int64_t lo = begin + t * chunk;
        const std::int64_t hi = std::min(end, lo + chunk);
        if (lo >= hi) break;
        workers.emplace_back([lo, hi, &fn]() {
            for (std::int64_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (auto& w : workers) w.join();
}

}  // namespace gabor

#endif
