#pragma once

#include <limits>
#include <memory>
#include <span>
#include <string>

#include "sewkit/hoelder.hpp"
#include "sewkit/metric.hpp"

namespace sewkit {

/// A local approximate flow mu_st : M_t -> M_s over a real parameter.
/// Implementations are immutable and must tolerate concurrent calls.
class FlowModel {
 public:
  virtual ~FlowModel() = default;

  virtual std::string name() const = 0;
  virtual SpacePtr space_at(double t) const = 0;

  /// Replaces every x in `xs` (points of M_t) by mu_st(x).
  virtual void apply(double s, double t, std::span<Point> xs) const = 0;

  virtual const HoelderData& hoelder() const = 0;

  /// Largest |t - s| for which mu_st is defined.
  virtual double max_step() const { return std::numeric_limits<double>::infinity(); }
};

using FlowModelPtr = std::shared_ptr<const FlowModel>;

/// mu_st as a probed map from space_at(t) to space_at(s).
ProbedMap mu(const FlowModelPtr& m, double s, double t);

}  // namespace sewkit
