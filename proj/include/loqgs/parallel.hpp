#pragma once

#include <algorithm>
#include <thread>
#include <vector>

namespace loqgs {

/// Strided fan-out of fn(0..count-1) over up to n_workers threads. Each
/// index writes only its own slot, so results do not depend on the worker
/// count.
template <typename Fn>
void parallel_for(int count, int n_workers, Fn&& fn) {
    const int workers = std::min(std::max(n_workers, 1), count);
    if (workers <= 1) {
        for (int i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&fn, w, count, workers] {
            for (int i = w; i < count; i += workers) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace loqgs
