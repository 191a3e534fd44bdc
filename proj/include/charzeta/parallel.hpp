#pragma once

// Minimal fork-join helpers. Work is split into contiguous index blocks;
// results are merged in block order, so output never depends on the
// number of workers.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace charzeta {

/// Worker cap: CHARZETA_THREADS when set to a positive integer, otherwise
/// the hardware concurrency (at least 1).
unsigned worker_count();

/// Runs body(i) for every i in [0, n), spread over worker_count() threads.
/// The first exception thrown by a body is rethrown after all workers join.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Sum of term(i) over [0, n).
std::uint64_t parallel_sum(std::size_t n, const std::function<std::uint64_t(std::size_t)>& term);

}  // namespace charzeta
