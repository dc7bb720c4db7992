#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace wam {

inline int& max_jobs() {
    static int jobs = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return jobs;
}

// Runs fn(i) for i in [0, n). Work items must not depend on each other.
// Results must be written to per-index slots so output order is
// deterministic regardless of the job count.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    int jobs = std::min<int>(max_jobs(), static_cast<int>(n));
    if (jobs <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int t = 0; t < jobs; ++t) {
        pool.emplace_back([&]() {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= n || failed.load()) return;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

} // namespace wam
