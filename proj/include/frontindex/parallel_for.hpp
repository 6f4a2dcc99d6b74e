// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace frontindex {

/// Runs fn(i) for i in [0, n) across hardware threads. Results must be
/// written by index; the schedule is work-stealing by chunks, so the output
/// is deterministic as long as fn(i) only touches slot i.
inline void parallel_for(long n, const std::function<void(long)>& fn) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (n < 64 || hw == 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    const long chunk = std::max<long>(1, n / (8 * hw));

    auto worker = [&] {
        while (!failed.load(std::memory_order_relaxed)) {
            const long start = next.fetch_add(chunk);
            if (start >= n) break;
            const long stop = std::min(n, start + chunk);
            try {
                for (long i = start; i < stop; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) error = std::current_exception();
                break;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(hw - 1);
    for (unsigned t = 1; t < hw; ++t) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    if (failed && error) std::rethrow_exception(error);
}

} // namespace frontindex
