#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace panelize {

// Runs fn(i) for i in [0, count) on up to `workers` threads. Work is handed
// out through a shared counter, so assignment of index to thread is not
// deterministic; callers must make fn(i) independent of that assignment.
// The first exception thrown by any fn is rethrown after all threads join.
template <typename Fn>
void parallel_for_each_index(std::size_t count, unsigned workers, Fn&& fn)
{
    if (count == 0)
        return;
    if (workers <= 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i)
            fn(i);
        return;
    }
    const unsigned n_threads = static_cast<unsigned>(
        std::min<std::size_t>(workers, count));
    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned w = 0; w < n_threads; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count || failed.load())
                    return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!failed.exchange(true))
                        error = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

} // namespace panelize
