#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sewkit/ext_distance.hpp"
#include "sewkit/point.hpp"

namespace sewkit {

/// A (possibly extended) metric space known through its distance function and
/// a finite probe set standing in for the whole space in sup computations.
class MetricSpace {
 public:
  using DistanceFn = std::function<ExtDistance(const Point&, const Point&)>;

  MetricSpace(std::string kind, std::size_t dim, DistanceFn distance, std::vector<Point> probes);

  /// R^dim with the Euclidean distance.
  static std::shared_ptr<const MetricSpace> euclidean(std::size_t dim, std::vector<Point> probes);

  const std::string& kind() const { return kind_; }
  std::size_t dim() const { return dim_; }
  const std::vector<Point>& probes() const { return probes_; }

  ExtDistance distance(const Point& a, const Point& b) const { return distance_(a, b); }

 private:
  std::string kind_;
  std::size_t dim_;
  DistanceFn distance_;
  std::vector<Point> probes_;
};

using SpacePtr = std::shared_ptr<const MetricSpace>;

/// Two handles denote the same space when they are the same object or share a kind.
bool same_space(const SpacePtr& a, const SpacePtr& b);

/// Uniform grid with `per_axis` points per axis on [-radius, radius]^dim.
std::vector<Point> grid_probes(std::size_t dim, double radius, std::size_t per_axis);

/// `count` equally spaced points on the circle of given radius, starting on the x-axis.
std::vector<Point> circle_probes(std::size_t count, double radius);

/// A map between probed spaces, evaluated in place on batches of points.
class ProbedMap {
 public:
  using BatchEval = std::function<void(std::span<Point>)>;

  ProbedMap(SpacePtr source, SpacePtr target, BatchEval eval);

  static ProbedMap pointwise(SpacePtr source, SpacePtr target,
                             std::function<Point(const Point&)> f);
  static ProbedMap identity(SpacePtr space);

  const SpacePtr& source() const { return source_; }
  const SpacePtr& target() const { return target_; }

  /// Maps every point of `xs` (source points) to its image, in place.
  void apply(std::span<Point> xs) const { eval_(xs); }

  Point operator()(Point x) const {
    eval_(std::span<Point>(&x, 1));
    return x;
  }

 private:
  SpacePtr source_;
  SpacePtr target_;
  BatchEval eval_;
};

/// g o f. Throws DomainMismatch unless f's target is g's source.
ProbedMap compose(const ProbedMap& g, const ProbedMap& f);

/// Probe-set sup distance between two maps with the same source and target.
ExtDistance map_distance(const ProbedMap& f, const ProbedMap& g);

/// Largest distance quotient over distinct probe pairs; a lower bound on Lip(f).
double lipschitz_estimate(const ProbedMap& f);

/// d(g o f, g' o f') <= d(g, g') + Lip(g') d(f, f').
double composition_distance_bound(double d_gg, double lip_gprime, double d_ff);

/// Chain version: sum_j (prod_{i<j} Lip(f'_i)) d(f_j, f'_j), maps listed outermost first.
double composition_chain_bound(std::span<const double> gaps, std::span<const double> lips);

/// Length of the polygon through the ordered samples.
ExtDistance path_length(std::span<const Point> samples, const MetricSpace& space);

}  // namespace sewkit
