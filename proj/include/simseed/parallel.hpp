#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace simseed {

// Runs fn(begin, end) over contiguous chunks of [0, n). Callers must only
// write to slots they own, indexed by position, so the result does not
// depend on the thread count.
inline void parallel_chunks(int n, int threads, const std::function<void(int, int)>& fn) {
    if (n <= 0) {
        return;
    }
    if (threads < 1) {
        threads = 1;
    }
    if (threads > n) {
        threads = n;
    }
    if (threads == 1) {
        fn(0, n);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    const int chunk = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        const int begin = t * chunk;
        const int end = std::min(n, begin + chunk);
        if (begin >= end) {
            break;
        }
        pool.emplace_back([&, t, begin, end] {
            try {
                fn(begin, end);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) {
        th.join();
    }
    for (const auto& err : errors) {
        if (err) {
            std::rethrow_exception(err);
        }
    }
}

} // namespace simseed
