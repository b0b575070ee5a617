// parallel.hpp
// Minimal fork/join helper. Work is split into a fixed list of chunks whose
// boundaries never depend on the worker count; each chunk writes its own
// result slot, so reductions done afterwards in index order are bit-identical
// for 1 or N workers.

#pragma once
#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace goldbach {

// Calls fn(i) for every i in [0, count) using up to `workers` threads.
// The first exception thrown by any chunk is rethrown in the caller.
template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn)
{
    if (count == 0) return;
    workers = std::max(1u, workers);
    if (workers == 1 || count == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;

    auto body = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1, std::memory_order_relaxed);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
                next.store(count, std::memory_order_relaxed);
                return;
            }
        }
    };

    const std::size_t n_threads = std::min<std::size_t>(workers, count);
    {
        std::vector<std::jthread> pool;
        pool.reserve(n_threads - 1);
        for (std::size_t t = 1; t < n_threads; ++t) pool.emplace_back(body);
        body();
    }
    if (failure) std::rethrow_exception(failure);
}

// Pairwise (tree) summation in index order. The association is fixed by the
// input length alone.
inline double pairwise_sum(const double* data, std::size_t n)
{
    if (n == 0) return 0.0;
    if (n <= 8) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += data[i];
        return s;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(data, half) + pairwise_sum(data + half, n - half);
}

inline double pairwise_sum(const std::vector<double>& v) { return pairwise_sum(v.data(), v.size()); }

} // namespace goldbach
