#include "sewkit/metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "sewkit/errors.hpp"
#include "sewkit/kernels.hpp"

namespace sewkit {

MetricSpace::MetricSpace(std::string kind, std::size_t dim, DistanceFn distance,
                         std::vector<Point> probes)
    : kind_(std::move(kind)), dim_(dim), distance_(std::move(distance)), probes_(std::move(probes)) {
  if (probes_.empty()) throw DomainError("MetricSpace: probe set must be non-empty");
  for (const auto& p : probes_)
    if (p.dim() != dim_) throw DomainError("MetricSpace: probe dimension mismatch");
}

SpacePtr MetricSpace::euclidean(std::size_t dim, std::vector<Point> probes) {
  return std::make_shared<const MetricSpace>(
      "R^" + std::to_string(dim), dim,
      [](const Point& a, const Point& b) { return ExtDistance::finite(euclidean_distance(a, b)); },
      std::move(probes));
}

bool same_space(const SpacePtr& a, const SpacePtr& b) {
  return a == b || (a && b && a->kind() == b->kind() && a->dim() == b->dim());
}

std::vector<Point> grid_probes(std::size_t dim, double radius, std::size_t per_axis) {
  if (dim == 0 || per_axis == 0) throw DomainError("grid_probes: empty grid");
  std::size_t total = 1;
  for (std::size_t i = 0; i < dim; ++i) total *= per_axis;
  std::vector<Point> out;
  out.reserve(total);
  for (std::size_t n = 0; n < total; ++n) {
    Point p(dim);
    std::size_t rest = n;
    for (std::size_t i = 0; i < dim; ++i) {
      const std::size_t k = rest % per_axis;
      rest /= per_axis;
      p[i] = per_axis == 1 ? 0.0
                           : -radius + 2.0 * radius * static_cast<double>(k) /
                                           static_cast<double>(per_axis - 1);
    }
    out.push_back(p);
  }
  return out;
}

std::vector<Point> circle_probes(std::size_t count, double radius) {
  if (count == 0) throw DomainError("circle_probes: empty probe set");
  std::vector<Point> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double a = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(count);
    out.push_back(Point{radius * std::cos(a), radius * std::sin(a)});
  }
  return out;
}

ProbedMap::ProbedMap(SpacePtr source, SpacePtr target, BatchEval eval)
    : source_(std::move(source)), target_(std::move(target)), eval_(std::move(eval)) {
  if (!source_ || !target_) throw DomainError("ProbedMap: null space handle");
}

ProbedMap ProbedMap::pointwise(SpacePtr source, SpacePtr target,
                               std::function<Point(const Point&)> f) {
  return ProbedMap(std::move(source), std::move(target), [f = std::move(f)](std::span<Point> xs) {
    for (auto& x : xs) x = f(x);
  });
}

ProbedMap ProbedMap::identity(SpacePtr space) {
  auto target = space;
  return ProbedMap(std::move(space), std::move(target), [](std::span<Point>) {});
}

ProbedMap compose(const ProbedMap& g, const ProbedMap& f) {
  if (!same_space(f.target(), g.source()))
    throw DomainMismatch("compose: target of inner map is not the source of the outer map");
  return ProbedMap(f.source(), g.target(), [g, f](std::span<Point> xs) {
    f.apply(xs);
    g.apply(xs);
  });
}

ExtDistance map_distance(const ProbedMap& f, const ProbedMap& g) {
  if (!same_space(f.source(), g.source()) || !same_space(f.target(), g.target()))
    throw DomainMismatch("map_distance: maps do not share source and target");
  std::vector<Point> a = f.source()->probes();
  std::vector<Point> b = a;
  kernels::apply(f, a);
  kernels::apply(g, b);
  return kernels::max_pairwise_distance(*f.target(), a, b);
}

double lipschitz_estimate(const ProbedMap& f) {
  const auto& probes = f.source()->probes();
  std::vector<Point> images = probes;
  kernels::apply(f, images);
  bool found = false;
  double best = 0.0;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    for (std::size_t j = i + 1; j < probes.size(); ++j) {
      const ExtDistance dx = f.source()->distance(probes[i], probes[j]);
      if (dx.is_infinite() || dx.value() == 0.0) continue;
      found = true;
      const ExtDistance dy = f.target()->distance(images[i], images[j]);
      if (dy.is_infinite()) return std::numeric_limits<double>::infinity();
      best = std::max(best, dy.value() / dx.value());
    }
  }
  if (!found) throw InsufficientProbes("lipschitz_estimate: need two probes at positive finite distance");
  return best;
}

double composition_distance_bound(double d_gg, double lip_gprime, double d_ff) {
  if (d_gg < 0.0 || lip_gprime < 0.0 || d_ff < 0.0)
    throw DomainError("composition_distance_bound: inputs must be non-negative");
  return d_gg + lip_gprime * d_ff;
}

double composition_chain_bound(std::span<const double> gaps, std::span<const double> lips) {
  if (gaps.size() != lips.size()) throw DomainError("composition_chain_bound: size mismatch");
  double prefix = 1.0;
  double total = 0.0;
  for (std::size_t j = 0; j < gaps.size(); ++j) {
    if (gaps[j] < 0.0 || lips[j] < 0.0)
      throw DomainError("composition_chain_bound: inputs must be non-negative");
    total += prefix * gaps[j];
    prefix *= lips[j];
  }
  return total;
}

ExtDistance path_length(std::span<const Point> samples, const MetricSpace& space) {
  if (samples.empty()) throw DomainError("path_length: no samples");
  ExtDistance total = ExtDistance::finite(0.0);
  for (std::size_t i = 1; i < samples.size(); ++i) total = total + space.distance(samples[i - 1], samples[i]);
  return total;
}

}  // namespace sewkit
