#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace wigdet {

// Calls fn(i) for i in [0, n) on up to `threads` workers. Rows are independent, so the
// result does not depend on the thread count. The first exception is rethrown.
template <typename F>
void parallel_rows(long n, int threads, F&& fn) {
    threads = int(std::clamp<long>(threads, 1, std::max<long>(n, 1)));
    if (threads == 1) {
        for (long i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr err;
    std::mutex mu;
    auto work = [&] {
        for (long i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(mu);
                if (!err) err = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
}

}  // namespace wigdet
