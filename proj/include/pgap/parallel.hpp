#pragma once

#include <atomic>
#include <cstdlib>
#include <thread>
#include <vector>

namespace pgap {

// Worker count for parallel reductions. PG_THREADS overrides the hardware
// default; values < 1 fall back to 1.
inline int worker_count() {
    if (const char* env = std::getenv("PG_THREADS")) {
        int n = std::atoi(env);
        if (n >= 1) return n;
        return 1;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

// Splits [0, n) into fixed-size chunks, evaluates chunk_fn(begin, end) for
// each, and returns the per-chunk results in chunk order. Chunk boundaries do
// not depend on the worker count, so combining the results serially gives the
// same floating-point answer on any machine.
template <class T, class ChunkFn>
std::vector<T> map_chunks(long long n, long long chunk_size, ChunkFn chunk_fn) {
    if (n <= 0) return {};
    if (chunk_size <= 0) chunk_size = 1;
    long long chunks = (n + chunk_size - 1) / chunk_size;
    std::vector<T> results(static_cast<std::size_t>(chunks));

    int workers = worker_count();
    if (workers == 1 || chunks == 1) {
        for (long long c = 0; c < chunks; ++c) {
            long long begin = c * chunk_size;
            long long end = std::min(n, begin + chunk_size);
            results[static_cast<std::size_t>(c)] = chunk_fn(begin, end);
        }
        return results;
    }

    std::atomic<long long> next{0};
    auto run = [&] {
        for (;;) {
            long long c = next.fetch_add(1);
            if (c >= chunks) return;
            long long begin = c * chunk_size;
            long long end = std::min(n, begin + chunk_size);
            results[static_cast<std::size_t>(c)] = chunk_fn(begin, end);
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    return results;
}

}  // namespace pgap
