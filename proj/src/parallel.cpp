#include "ornstein/parallel.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <thread>
#include <vector>

namespace ornstein {

namespace {

std::atomic<int> g_threads{0};

int detect_threads() {
    if (const char* env = std::getenv("ORNSTEIN_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : static_cast<int>(hw);
}

}  // namespace

int thread_count() {
    int v = g_threads.load(std::memory_order_relaxed);
    if (v == 0) {
        v = detect_threads();
        g_threads.store(v, std::memory_order_relaxed);
    }
    return v;
}

void set_thread_count(int n) {
    if (n < 1) throw std::invalid_argument("thread count must be >= 1");
    g_threads.store(n, std::memory_order_relaxed);
}

void parallel_blocks(size_t nblocks, const std::function<void(size_t)>& fn) {
    if (nblocks == 0) return;
    size_t workers = static_cast<size_t>(thread_count());
    if (workers > nblocks) workers = nblocks;
    if (workers <= 1) {
        for (size_t b = 0; b < nblocks; ++b) fn(b);
        return;
    }
    std::atomic<size_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    auto run = [&]() {
        while (true) {
            size_t b = next.fetch_add(1, std::memory_order_relaxed);
            if (b >= nblocks || failed.load(std::memory_order_relaxed)) return;
            try {
                fn(b);
            } catch (...) {
                if (!failed.exchange(true)) error = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (size_t w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (failed.load()) std::rethrow_exception(error);
}

}  // namespace ornstein
