#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

namespace mms {

/// Worker cap: MMSLAB_THREADS if set and positive, else hardware concurrency.
std::size_t worker_count();

/// Counter-based seed for chunk `chunk` of a run seeded with `seed`
/// (splitmix64 finalizer). Results never depend on which worker ran a chunk.
std::uint64_t chunk_seed(std::uint64_t seed, std::uint64_t chunk);

/// Calls body(i) for every i in [0, n). Bodies must only write to
/// per-index storage; order of execution is unspecified.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace mms
