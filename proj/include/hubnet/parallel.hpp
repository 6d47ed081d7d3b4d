#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace hubnet {

// Runs fn(0) .. fn(count-1) across up to `threads` workers (0 = hardware
// concurrency). Callers get determinism by writing fn(i)'s result into
// slot i of a preallocated buffer; if several calls throw, the exception
// from the lowest index is rethrown so failures are reproducible too.
inline void parallel_for(std::size_t count, unsigned threads,
                         const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    unsigned hw = std::thread::hardware_concurrency();
    if (threads == 0) threads = hw > 0 ? hw : 1;
    if (threads > count) threads = static_cast<unsigned>(count);

    std::vector<std::exception_ptr> errors(count);
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            for (;;) {
                std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        };
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned w = 0; w < threads; ++w) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace hubnet
