#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "sewkit/ext_distance.hpp"
#include "sewkit/metric.hpp"

// Data-parallel probe kernels. Each parallel kernel has a serial twin in
// `serial::` that performs the same floating-point operations per element, so
// the two agree bit for bit; tests and the bench compare them.

namespace sewkit::kernels {

/// Applies `f` to every point, splitting the batch across OpenMP threads.
void apply(const ProbedMap& f, std::span<Point> xs);

/// max_i d(a_i, b_i); the max reduction is order independent.
ExtDistance max_pairwise_distance(const MetricSpace& space, std::span<const Point> a,
                                  std::span<const Point> b);

/// Calls `body(i)` for i in [0, n), in parallel. `body` must be reentrant.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

/// Number of threads the parallel kernels will use.
int thread_count();

namespace serial {

void apply(const ProbedMap& f, std::span<Point> xs);

ExtDistance max_pairwise_distance(const MetricSpace& space, std::span<const Point> a,
                                  std::span<const Point> b);

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

ExtDistance map_distance(const ProbedMap& f, const ProbedMap& g);

}  // namespace serial

}  // namespace sewkit::kernels
