#include "sewkit/kernels.hpp"

#include <algorithm>
#include <vector>

#include "sewkit/errors.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace sewkit::kernels {

int thread_count() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

void apply(const ProbedMap& f, std::span<Point> xs) {
  const auto n = static_cast<std::ptrdiff_t>(xs.size());
  const std::ptrdiff_t chunks = std::min<std::ptrdiff_t>(thread_count(), n);
  if (chunks <= 1) {
    f.apply(xs);
    return;
  }
  const std::ptrdiff_t width = (n + chunks - 1) / chunks;
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    const std::ptrdiff_t lo = c * width;
    const std::ptrdiff_t hi = std::min(n, lo + width);
    if (lo < hi) f.apply(xs.subspan(static_cast<std::size_t>(lo), static_cast<std::size_t>(hi - lo)));
  }
}

ExtDistance max_pairwise_distance(const MetricSpace& space, std::span<const Point> a,
                                  std::span<const Point> b) {
  const auto n = static_cast<std::ptrdiff_t>(a.size());
  std::vector<ExtDistance> d(a.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) d[i] = space.distance(a[i], b[i]);
  ExtDistance best = ExtDistance::finite(0.0);
  for (const auto& x : d) best = max(best, x);
  return best;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  const auto m = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t i = 0; i < m; ++i) body(static_cast<std::size_t>(i));
}

namespace serial {

void apply(const ProbedMap& f, std::span<Point> xs) { f.apply(xs); }

ExtDistance max_pairwise_distance(const MetricSpace& space, std::span<const Point> a,
                                  std::span<const Point> b) {
  ExtDistance best = ExtDistance::finite(0.0);
  for (std::size_t i = 0; i < a.size(); ++i) best = max(best, space.distance(a[i], b[i]));
  return best;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
  for (std::size_t i = 0; i < n; ++i) body(i);
}

ExtDistance map_distance(const ProbedMap& f, const ProbedMap& g) {
  if (!same_space(f.source(), g.source()) || !same_space(f.target(), g.target()))
    throw DomainMismatch("map_distance: maps do not share source and target");
  std::vector<Point> a = f.source()->probes();
  std::vector<Point> b = a;
  f.apply(a);
  g.apply(b);
  return max_pairwise_distance(*f.target(), a, b);
}

}  // namespace serial

}  // namespace sewkit::kernels
