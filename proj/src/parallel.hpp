#pragma once

#include <algorithm>
#include <cstdint>
#include <exception>
#include <thread>
#include <vector>

namespace qmr::detail {

/// Splits [0, total) into contiguous chunks, one per worker, and runs
/// fn(begin, end, slot) for each. Rethrows the first worker exception.
template <class Fn>
void run_partitioned(unsigned workers, std::uint64_t total, Fn&& fn)
{
    workers = std::max(1u, workers);
    if (workers == 1 || total < 2 * std::uint64_t{workers}) {
        fn(std::uint64_t{0}, total, 0u);
        return;
    }
    std::vector<std::thread> threads;
    std::vector<std::exception_ptr> errors(workers);
    const std::uint64_t chunk = total / workers;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t begin = w * chunk;
        const std::uint64_t end = w + 1 == workers ? total : begin + chunk;
        threads.emplace_back([&, begin, end, w] {
            try {
                fn(begin, end, w);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : threads)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

}  // namespace qmr::detail
