#pragma once

#include <cstddef>
#include <functional>
#include <span>

namespace cosserat {

/// Caps the number of worker threads used by parallel_for (>= 1). Results do
/// not depend on this value: workers only write to disjoint per-index slots.
void set_max_threads(unsigned n);
unsigned max_threads();

/// Calls fn(i) for i in [0, n), split into contiguous chunks across workers.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Compensated (Neumaier) sum in index order; bit-stable for a given input.
double ordered_sum(std::span<const double> values);

}  // namespace cosserat
