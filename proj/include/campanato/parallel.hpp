#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <thread>
#include <vector>

namespace campanato {

namespace detail {
inline int& thread_cap_override() {
    static int cap = 0;  // 0 = use environment / hardware
    return cap;
}
}  // namespace detail

/// Number of worker threads: CAMPANATO_THREADS caps hardware concurrency;
/// an in-process override (used by determinism checks) wins over both.
inline int thread_cap() {
    if (detail::thread_cap_override() > 0) return detail::thread_cap_override();
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    if (const char* env = std::getenv("CAMPANATO_THREADS")) {
        int cap = std::atoi(env);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return hw;
}

inline void set_thread_cap_override(int cap) { detail::thread_cap_override() = cap; }

/// Chunked parallel loop; body(i) for i in [0,n). Results must be written
/// to index-addressed slots so the outcome is independent of scheduling.
template <class Body>
inline void parallel_for(std::int64_t n, Body&& body) {
    if (n <= 0) return;
    int workers = std::min<std::int64_t>(thread_cap(), n);
    if (workers <= 1) {
        for (std::int64_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::int64_t> next{0};
    std::exception_ptr err;
    std::atomic<bool> failed{false};
    const std::int64_t chunk = std::max<std::int64_t>(1, n / (4 * workers));
    auto run = [&] {
        for (;;) {
            std::int64_t begin = next.fetch_add(chunk);
            if (begin >= n || failed.load()) return;
            std::int64_t end = std::min(n, begin + chunk);
            try {
                for (std::int64_t i = begin; i < end; ++i) body(i);
            } catch (...) {
                if (!failed.exchange(true)) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers - 1);
    for (int t = 1; t < workers; ++t) pool.emplace_back(run);
    run();
    for (auto& th : pool) th.join();
    if (failed.load()) std::rethrow_exception(err);
}

/// max over i of value_of(i); exact under any scheduling (max is
/// order-independent).
template <class Fn>
inline double parallel_max(std::int64_t n, Fn&& value_of) {
    std::vector<double> vals(static_cast<std::size_t>(n));
    parallel_for(n, [&](std::int64_t i) { vals[static_cast<std::size_t>(i)] = value_of(i); });
    double m = -1e300;
    for (double v : vals) m = std::max(m, v);
    return m;
}

}  // namespace campanato
