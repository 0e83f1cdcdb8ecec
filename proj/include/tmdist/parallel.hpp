#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <thread>
#include <vector>

namespace tmdist {

inline unsigned resolve_threads(unsigned requested) {
    if (requested) return requested;
    if (const char* env = std::getenv("TMDIST_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return static_cast<unsigned>(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

// chunked dynamic scheduling; fn(i) must be independent across i
template <typename Fn>
void parallel_for(std::uint64_t n, unsigned threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || n < 2) {
        for (std::uint64_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<std::uint64_t> next{0};
    const std::uint64_t chunk = std::max<std::uint64_t>(1, n / (threads * 64));
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            while (true) {
                std::uint64_t lo = next.fetch_add(chunk);
                if (lo >= n) break;
                std::uint64_t hi = std::min(n, lo + chunk);
                for (std::uint64_t i = lo; i < hi; ++i) fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

template <typename Fn>
std::uint64_t parallel_sum(std::uint64_t n, unsigned threads, Fn&& fn) {
    threads = resolve_threads(threads);
    if (threads <= 1 || n < 2) {
        std::uint64_t s = 0;
        for (std::uint64_t i = 0; i < n; ++i) s += fn(i);
        return s;
    }
    std::atomic<std::uint64_t> next{0};
    std::atomic<std::uint64_t> total{0};
    const std::uint64_t chunk = std::max<std::uint64_t>(1, n / (threads * 64));
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&] {
            std::uint64_t local = 0;
            while (true) {
                std::uint64_t lo = next.fetch_add(chunk);
                if (lo >= n) break;
                std::uint64_t hi = std::min(n, lo + chunk);
                for (std::uint64_t i = lo; i < hi; ++i) local += fn(i);
            }
            total.fetch_add(local);
        });
    }
    for (auto& th : pool) th.join();
    return total.load();
}

}  // namespace tmdist
