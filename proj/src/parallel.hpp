#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace ssbh::detail {

// Run f(i) for i in [0, n) on all hardware threads. Callers write results
// into slot i, so output order never depends on scheduling.
template <class F>
void parallel_for(std::size_t n, F&& f) {
    const std::size_t hw = std::thread::hardware_concurrency();
    const std::size_t nthreads = std::min(n, hw == 0 ? std::size_t{1} : hw);
    if (nthreads <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n || failed.load()) return;
            try {
                f(i);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < nthreads; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failed.load()) std::rethrow_exception(error);
}

} // namespace ssbh::detail
