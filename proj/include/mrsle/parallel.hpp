#pragma once

// OpenMP-parallel kernels with a serial reference path. Worker results land in
// preallocated per-index slots and reductions are fixed-order pairwise sums,
// so serial and parallel runs produce bit-identical output.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mrsle {

enum class RunMode { serial, openmp };

// Worker cap: min(omp_max_threads, MRSLE_THREADS if set).
int max_threads();

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body,
                  RunMode mode = RunMode::openmp);

// Fixed-order pairwise summation; independent of thread count by construction.
double pairwise_sum(std::span<const double> v);

template <class F>
std::vector<double> map_indexed(std::size_t n, F&& f, RunMode mode = RunMode::openmp) {
    std::vector<double> out(n);
    parallel_for(n, [&](std::size_t i) { out[i] = f(i); }, mode);
    return out;
}

}  // namespace mrsle
