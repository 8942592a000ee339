#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace netnorm {

/** Worker count: explicit request, else NETNORM_THREADS, else hardware */
inline int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char *env = std::getenv("NETNORM_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

/**
 * Run fn(i) for i in [0, count) on up to n_threads workers.
 *
 * fn must write only to its own per-index slot; items are claimed from a
 * shared counter, so the schedule varies but the set of computed values does
 * not. Results are bit-identical for any thread count as long as fn(i) is a
 * pure function of i.
 */
template <typename Fn>
void parallel_for(long count, int n_threads, Fn &&fn) {
    n_threads = resolve_threads(n_threads);
    if (count <= 0) return;
    if (n_threads <= 1 || count == 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next(0);
    std::atomic<bool> failed(false);
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(std::min<long>(n_threads, count));
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                const long i = next.fetch_add(1);
                if (i >= count || failed.load(std::memory_order_relaxed)) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    failed.store(true, std::memory_order_relaxed);
                    return;
                }
            }
        });
    }
    for (auto &t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace netnorm
