#ifndef VIBRON_SRC_PARALLEL_HPP
#define VIBRON_SRC_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace vibron::detail {

// Runs fn(i) for i in [0, count) across up to `threads` workers. Each
// index is processed exactly once; output ordering is the caller's
// concern (workers write disjoint slots). The first exception thrown
// by any worker is rethrown on the calling thread.
template <typename Fn>
void parallel_for(int count, int threads, Fn&& fn) {
    threads = std::min(std::max(threads, 1), count);
    if (threads <= 1) {
        for (int i = 0; i < count; ++i)
            fn(i);
        return;
    }

    std::atomic<int> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= count)
                return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int t = 0; t < threads; ++t)
        pool.emplace_back(worker);
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace vibron::detail

#endif
