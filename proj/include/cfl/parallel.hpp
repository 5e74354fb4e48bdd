#pragma once

#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace cfl {

/// Worker count: CFL_WORKERS when set (>= 1), otherwise hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("CFL_WORKERS")) {
        long n = std::strtol(env, nullptr, 10);
        if (n >= 1) return static_cast<unsigned>(n);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Index-parallel loop with deterministic results: workers claim chunks from
/// an atomic counter and write only to their own indices, so output does not
/// depend on the worker count. Exceptions are rethrown on the caller thread.
inline void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
    unsigned workers = worker_count();
    if (workers <= 1 || n < 64) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr first_error = nullptr;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    const size_t chunk = std::max<size_t>(1, n / (workers * 8));
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            while (!failed.load(std::memory_order_relaxed)) {
                size_t begin = next.fetch_add(chunk);
                if (begin >= n) break;
                size_t end = std::min(n, begin + chunk);
                try {
                    for (size_t i = begin; i < end; ++i) fn(i);
                } catch (...) {
                    bool expected = false;
                    if (failed.compare_exchange_strong(expected, true))
                        first_error = std::current_exception();
                    break;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace cfl
