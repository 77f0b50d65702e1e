#include "sewkit/pair_action.hpp"

#include <cmath>
#include <utility>

#include "sewkit/errors.hpp"

namespace sewkit {

ProbedMap mu(const PairModelPtr& m, const Point& x, const Point& y) {
  return ProbedMap(m->fiber(y), m->fiber(x),
                   [m, x, y](std::span<Point> zs) { m->apply(x, y, zs); });
}

namespace {

class FlatConnection final : public PairActionModel {
 public:
  FlatConnection(ConnectionRule rule, double r0, std::size_t fiber_probes)
      : rule_(rule),
        r0_(r0),
        fiber_(std::make_shared<const MetricSpace>(
            "rotation fiber R^2", 2,
            [](const Point& a, const Point& b) { return ExtDistance::finite(euclidean_distance(a, b)); },
            circle_probes(fiber_probes, 1.0))),
        h_(declared(rule, r0)) {}

  std::string name() const override {
    return rule_ == ConnectionRule::exact_segment ? "flat_connection/exact_segment"
                                                  : "flat_connection/midpoint";
  }
  std::size_t param_dim() const override { return 2; }

  bool in_domain(const Point& x) const override { return x.dim() == 2 && norm(x) >= r0_; }

  bool segment_in_domain(const Point& x, const Point& y) const override {
    return in_domain(x) && in_domain(y) && segment_origin_distance(x, y) >= r0_ / 2;
  }

  double max_chord() const override { return r0_ / 2; }

  SpacePtr fiber(const Point&) const override { return fiber_; }

  void apply(const Point& x, const Point& y, std::span<Point> zs) const override {
    const double theta = angle(x, y);
    if (theta == 0.0) return;
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    for (auto& z : zs) {
      const double a = z[0];
      const double b = z[1];
      z[0] = c * a - s * b;
      z[1] = s * a + c * b;
    }
  }

  const HoelderData& hoelder() const override { return h_; }

  std::optional<double> angle_increment(const Point& x, const Point& y) const override {
    return angle(x, y);
  }

 private:
  double angle(const Point& x, const Point& y) const {
    if (rule_ == ConnectionRule::exact_segment) return std::atan2(cross2(x, y), dot(x, y));
    // omega at (x+y)/2 applied to y - x.
    const Point m = x + y;
    return 4.0 * cross2(x, y) / dot(m, m);
  }

  static HoelderData declared(ConnectionRule rule, double r0) {
    if (!(r0 > 0.0)) throw DomainError("make_flat_connection: r0 must be positive");
    if (rule == ConnectionRule::exact_segment)
      return HoelderData(1.0, {{2.0, 1.0, 0.0}}, 0.0, DefectMode::knitting);
    const double C = 1.0 / (r0 * r0 * r0);
    return HoelderData(1.0, {{2.0, 1.0, C}, {1.0, 2.0, C}}, 0.0, DefectMode::knitting);
  }

  ConnectionRule rule_;
  double r0_;
  SpacePtr fiber_;
  HoelderData h_;
};

class LiftedFlow final : public PairActionModel {
 public:
  explicit LiftedFlow(FlowModelPtr m) : m_(std::move(m)) {}

  std::string name() const override { return "lifted/" + m_->name(); }
  std::size_t param_dim() const override { return 1; }
  bool in_domain(const Point& x) const override { return x.dim() == 1 && std::isfinite(x[0]); }
  bool segment_in_domain(const Point& x, const Point& y) const override {
    return in_domain(x) && in_domain(y) && std::abs(y[0] - x[0]) <= m_->max_step();
  }
  double max_chord() const override { return m_->max_step(); }
  SpacePtr fiber(const Point& x) const override { return m_->space_at(x[0]); }
  void apply(const Point& x, const Point& y, std::span<Point> zs) const override {
    m_->apply(x[0], y[0], zs);
  }
  const HoelderData& hoelder() const override { return m_->hoelder(); }

 private:
  FlowModelPtr m_;
};

}  // namespace

PairModelPtr make_flat_connection(ConnectionRule rule, double r0, std::size_t fiber_probes) {
  return std::make_shared<FlatConnection>(rule, r0, fiber_probes);
}

PairModelPtr lift_to_parameter_space(FlowModelPtr m) {
  return std::make_shared<LiftedFlow>(std::move(m));
}

}  // namespace sewkit
