#pragma once

#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <string>

#include "sewkit/flow_model.hpp"

namespace sewkit {

/// Approximate action of the pair groupoid P x P: maps mu_xy : M_y -> M_x
/// indexed by points of a parameter space P inside R^param_dim.
class PairActionModel {
 public:
  virtual ~PairActionModel() = default;

  virtual std::string name() const = 0;
  virtual std::size_t param_dim() const = 0;
  virtual double param_distance(const Point& x, const Point& y) const {
    return euclidean_distance(x, y);
  }

  virtual bool in_domain(const Point& x) const = 0;
  /// Whether mu_xy may be evaluated for this pair.
  virtual bool segment_in_domain(const Point& x, const Point& y) const = 0;
  /// Longest chord d(x, y) the declared constants cover.
  virtual double max_chord() const { return std::numeric_limits<double>::infinity(); }

  virtual SpacePtr fiber(const Point& x) const = 0;

  /// Replaces every z in `zs` (points of M_y) by mu_xy(z).
  virtual void apply(const Point& x, const Point& y, std::span<Point> zs) const = 0;

  /// Defect data in terms of d_P; knitting mode for strongly approximate actions.
  virtual const HoelderData& hoelder() const = 0;

  /// Rotation angle of mu_xy for rotation fibers.
  virtual std::optional<double> angle_increment(const Point&, const Point&) const {
    return std::nullopt;
  }
};

using PairModelPtr = std::shared_ptr<const PairActionModel>;

/// mu_xy as a probed map from fiber(y) to fiber(x).
ProbedMap mu(const PairModelPtr& m, const Point& x, const Point& y);

enum class ConnectionRule { exact_segment, midpoint };

/// Rotations of R^2 over the plane minus the open disk of radius r0, transported
/// by the closed form (x dy - y dx) / (x^2 + y^2). `fiber_probes` points on the
/// unit circle stand in for the fiber.
PairModelPtr make_flat_connection(ConnectionRule rule, double r0 = 0.5,
                                  std::size_t fiber_probes = 8);

/// P = R with mu_xy = the flow model's mu_{x y}.
PairModelPtr lift_to_parameter_space(FlowModelPtr m);

}  // namespace sewkit
