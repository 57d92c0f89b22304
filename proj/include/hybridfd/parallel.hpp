#pragma once

#include <algorithm>
#include <cstdlib>
#include <exception>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace hybridfd {

// Worker cap: HYBRIDFD_THREADS if set (minimum 1), else the hardware count.
inline int max_threads() {
    if (const char* env = std::getenv("HYBRIDFD_THREADS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
    const unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : static_cast<int>(hc);
}

// Index-chunked parallel loop. Each index is processed exactly once; the
// caller must make fn(i) write only to slot i of preallocated storage so the
// result is independent of thread interleaving.
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
    const int threads = std::min<int>(max_threads(), static_cast<int>(count));
    if (threads <= 1 || count < 32) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(threads));
    const std::size_t chunk = (count + static_cast<std::size_t>(threads) - 1) /
                              static_cast<std::size_t>(threads);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    for (int t = 0; t < threads; ++t) {
        const std::size_t begin = static_cast<std::size_t>(t) * chunk;
        const std::size_t end = std::min(count, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([begin, end, &fn, &first_error, &error_mutex] {
            try {
                for (std::size_t i = begin; i < end; ++i) fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace hybridfd
