// Minimal deterministic data parallelism: chunked parallel_for and a
// fixed-order pairwise reduction.
#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace bergman {

/// Worker count; defaults to BERGMAN_LAB_THREADS or the hardware concurrency.
int thread_count();
void set_thread_count(int threads);

/// Calls body(i) for every i in [0, count). Each index is processed exactly once;
/// the first exception thrown by any worker is rethrown.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

/// Pairwise sum in a fixed tree order, independent of the thread count.
double pairwise_sum(std::span<const double> values);

}  // namespace bergman
