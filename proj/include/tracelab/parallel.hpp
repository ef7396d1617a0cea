#pragma once
// Deterministic chunked parallelism.
//
// Work is split into fixed-size chunks whose boundaries do not depend on the
// thread count; per-chunk results are merged by the caller in chunk order, so
// any --threads value produces bit-identical output.

#include <cstdlib>
#include <string>
#include <thread>
#include <vector>

#include <atomic>

namespace tracelab {

inline int default_threads() {
    if (const char* env = std::getenv("TRACELAB_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

inline int resolve_threads(int requested) {
    return requested >= 1 ? requested : default_threads();
}

// Runs fn(chunk_begin, chunk_end) over [0, n) in chunks of `chunk_size`,
// returning per-chunk results ordered by chunk index.
template <class Result, class Fn>
std::vector<Result> run_chunked(std::size_t n, std::size_t chunk_size, int threads, Fn fn) {
    threads = resolve_threads(threads);
    if (chunk_size == 0) chunk_size = 1;
    std::size_t n_chunks = (n + chunk_size - 1) / chunk_size;
    std::vector<Result> results(n_chunks);
    if (n_chunks == 0) return results;

    if (threads == 1 || n_chunks == 1) {
        for (std::size_t c = 0; c < n_chunks; ++c) {
            std::size_t b = c * chunk_size;
            std::size_t e = std::min(n, b + chunk_size);
            results[c] = fn(b, e);
        }
        return results;
    }

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (;;) {
            std::size_t c = next.fetch_add(1);
            if (c >= n_chunks) return;
            std::size_t b = c * chunk_size;
            std::size_t e = std::min(n, b + chunk_size);
            results[c] = fn(b, e);
        }
    };
    std::vector<std::thread> pool;
    int n_workers = std::min<std::size_t>(threads, n_chunks);
    pool.reserve(n_workers);
    for (int t = 0; t < n_workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return results;
}

}  // namespace tracelab
