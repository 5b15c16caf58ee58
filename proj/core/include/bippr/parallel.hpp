#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace bippr {

/// Items per reduction chunk. Chunk boundaries are fixed, so results do not
/// depend on the worker count.
inline constexpr std::size_t kReduceChunk = 1024;

/// Reduces fn(i, acc) over i in [0, count). Items inside a chunk are folded
/// in index order, and chunk partials are combined with `+=` in chunk order.
/// Acc must be default-constructible with operator+=.
template <class Acc, class Fn>
Acc chunked_reduce(std::size_t count, unsigned threads, Fn&& fn) {
    const std::size_t chunks = (count + kReduceChunk - 1) / kReduceChunk;
    std::vector<Acc> partial(chunks);
    auto run_chunk = [&](std::size_t c) {
        const std::size_t lo = c * kReduceChunk;
        const std::size_t hi = std::min(count, lo + kReduceChunk);
        for (std::size_t i = lo; i < hi; ++i) {
            fn(i, partial[c]);
        }
    };

    const std::size_t workers = std::min<std::size_t>(std::max(1U, threads), chunks);
    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) {
            run_chunk(c);
        }
    } else {
        std::vector<std::exception_ptr> errors(workers);
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::size_t k = 0; k < workers; ++k) {
            pool.emplace_back([&, k] {
                try {
                    for (std::size_t c = k; c < chunks; c += workers) {
                        run_chunk(c);
                    }
                } catch (...) {
                    errors[k] = std::current_exception();
                }
            });
        }
        for (auto& t : pool) {
            t.join();
        }
        for (const auto& e : errors) {
            if (e) {
                std::rethrow_exception(e);
            }
        }
    }

    Acc total{};
    for (const auto& p : partial) {
        total += p;
    }
    return total;
}

}  // namespace bippr
