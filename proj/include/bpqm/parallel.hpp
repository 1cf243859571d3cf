#pragma once

#include <algorithm>
#include <cstddef>
#include <thread>
#include <vector>

namespace bpqm {

// Worker count for data-parallel loops. Defaults to $BPQM_THREADS when set,
// else 1. Results never depend on this value.
int thread_count();
void set_thread_count(int n);

// Calls body(begin, end) over disjoint chunks of [0, n).
template <class Body>
void parallel_for(std::size_t n, Body&& body, std::size_t min_chunk = 2048) {
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(std::max(1, thread_count())), (n + min_chunk - 1) / min_chunk);
    if (workers <= 1) {
        body(std::size_t{0}, n);
        return;
    }
    const std::size_t chunk = (n + workers - 1) / workers;
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (std::size_t w = 1; w < workers; ++w) {
        const std::size_t b = w * chunk;
        const std::size_t e = std::min(n, b + chunk);
        if (b < e) pool.emplace_back([&body, b, e] { body(b, e); });
    }
    body(std::size_t{0}, std::min(n, chunk));
}

}  // namespace bpqm
