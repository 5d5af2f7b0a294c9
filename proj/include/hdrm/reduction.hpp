#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace hdrm {

/// Number of worker threads: min(hardware, HDRM_THREADS). At least 1.
int worker_count();

/// Pairwise (cascade) summation. Fixed evaluation order, so the result is a
/// pure function of the input sequence.
double pairwise_sum(std::span<const double> values);

/// Sum of f(i) for i in [0, n), evaluated in fixed-size blocks that are
/// independent of the thread count: each block accumulates sequentially,
/// block partials are combined with pairwise_sum in block order. Blocks are
/// distributed over workers dynamically; results are bit-identical for any
/// HDRM_THREADS. Nested calls run serially.
double blocked_sum(std::int64_t n, std::int64_t block_size,
                   const std::function<double(std::int64_t, std::int64_t)>& block_fn);

/// Run fn(i) for i in [0, n) across workers. fn must only write to
/// disjoint, pre-allocated slots (e.g. slot i of a results vector).
void parallel_for(std::int64_t n, const std::function<void(std::int64_t)>& fn);

}  // namespace hdrm
