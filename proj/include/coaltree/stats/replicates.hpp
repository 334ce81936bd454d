#pragma once

#include <atomic>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

#include "coaltree/rng.hpp"

namespace coaltree::stats {

// 0 means "all hardware threads"; never more threads than work items.
unsigned resolve_threads(unsigned requested, std::size_t work);

// Runs fn(index, rng) for index = 0..reps-1, each with its own substream of
// base_seed, on up to `threads` workers. Results are stored by index, so any
// reduction over them is independent of scheduling. The first exception is
// rethrown after all workers stop.
template <class Result, class Fn>
std::vector<Result> run_replicates(std::size_t reps, std::uint64_t base_seed, unsigned threads, Fn&& fn) {
    std::vector<Result> results(reps);
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= reps) return;
            try {
                Rng rng = Rng::substream(base_seed, i);
                results[i] = fn(i, rng);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(reps);
                return;
            }
        }
    };
    const unsigned count = resolve_threads(threads, reps);
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < count; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (error) std::rethrow_exception(error);
    return results;
}

}  // namespace coaltree::stats
