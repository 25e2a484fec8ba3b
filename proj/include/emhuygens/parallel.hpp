// parallel.hpp -- deterministic fan-out over index ranges
#pragma once

#include <algorithm>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace emh {

/// Run f(i) for i in [0,n) on up to `threads` workers. Results must be written
/// to preassigned slots by index, so the outcome is identical for any worker
/// count. The first exception thrown by any worker is rethrown to the caller.
template <typename F>
void parallel_for(size_t n, int threads, F&& f) {
    if (n == 0) return;
    const int hw = static_cast<int>(std::thread::hardware_concurrency());
    int workers = std::clamp(threads, 1, std::max(1, hw));
    workers = static_cast<int>(std::min<size_t>(workers, n));
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::vector<std::thread> pool;
    std::exception_ptr error;
    std::mutex error_mutex;
    const size_t chunk = (n + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
        const size_t lo = w * chunk;
        const size_t hi = std::min(n, lo + chunk);
        if (lo >= hi) break;
        pool.emplace_back([&, lo, hi] {
            try {
                for (size_t i = lo; i < hi; ++i) f(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
}

} // namespace emh
