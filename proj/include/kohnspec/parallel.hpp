#pragma once

#include <cstddef>
#include <thread>
#include <vector>

namespace kohnspec {

// Resolved worker count: explicit request, else the KOHNSPEC_JOBS environment
// variable, else 1 (sequential).  Results are index-addressed, so the worker
// count never affects output.
int resolve_jobs(int requested);

// Runs fn(i) for i in [0, count) on `jobs` threads with strided assignment.
// fn must only write to index-owned state.  Sequential when jobs <= 1.
template <class Fn>
void parallel_for(size_t count, int jobs, Fn&& fn) {
    jobs = resolve_jobs(jobs);
    if (jobs <= 1 || count <= 1) {
        for (size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    size_t width = std::min<size_t>(static_cast<size_t>(jobs), count);
    std::vector<std::thread> pool;
    pool.reserve(width);
    for (size_t w = 0; w < width; ++w)
        pool.emplace_back([&fn, w, width, count] {
            for (size_t i = w; i < count; i += width) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace kohnspec
