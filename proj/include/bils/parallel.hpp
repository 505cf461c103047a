#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace bils {

/// Worker cap: BILS_THREADS env var, 0 or unset means hardware concurrency.
inline unsigned worker_count() {
    if (const char* env = std::getenv("BILS_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

namespace detail {
inline thread_local bool in_parallel_region = false;
}

/// Run fn(i) for i in [0, count).  Items are claimed from a shared atomic
/// counter; nested calls degrade to sequential execution.  Results must be
/// written to per-index slots by the caller so the outcome is independent
/// of scheduling.
template <typename Fn>
void parallel_for(std::size_t count, Fn&& fn) {
    const unsigned workers = detail::in_parallel_region
                                 ? 1u
                                 : std::min<std::size_t>(worker_count(), count);
    if (workers <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::exception_ptr failure;
    std::atomic<bool> failed{false};
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            detail::in_parallel_region = true;
            while (!failed.load(std::memory_order_relaxed)) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) break;
                try {
                    fn(i);
                } catch (...) {
                    if (!failed.exchange(true)) failure = std::current_exception();
                    break;
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

} // namespace bils
