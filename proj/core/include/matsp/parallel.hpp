#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace matsp {

// Runs fn(i) for i in [0, n) across `jobs` threads. Each index is handed to
// exactly one thread; results must land in pre-sized slots so the outcome is
// independent of scheduling. Exceptions propagate from the first failing
// index.
template <typename Fn>
void parallel_for(std::size_t n, unsigned jobs, Fn&& fn) {
    if (n == 0) {
        return;
    }
    if (jobs <= 1 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            fn(i);
        }
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};

    auto worker = [&] {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) {
                return;
            }
            try {
                fn(i);
            } catch (...) {
                if (!failed.exchange(true)) {
                    error = std::current_exception();
                }
                return;
            }
        }
    };

    std::vector<std::thread> threads;
    const unsigned count = static_cast<unsigned>(std::min<std::size_t>(jobs, n));
    threads.reserve(count);
    for (unsigned t = 0; t < count; ++t) {
        threads.emplace_back(worker);
    }
    for (std::thread& t : threads) {
        t.join();
    }
    if (failed.load()) {
        std::rethrow_exception(error);
    }
}

inline unsigned default_jobs() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

}  // namespace matsp
