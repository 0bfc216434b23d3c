#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>

namespace dunklhit {

// Worker cap from DUNKL_HIT_THREADS, else the hardware concurrency.
unsigned worker_count();

// Runs fn(i) for i in [0, n) on worker threads; exceptions are rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

// Independent generator for stream `index` of a run seeded with `seed`.
std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t index);

}  // namespace dunklhit
