#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "sewkit/pair_action.hpp"
#include "sewkit/sewing.hpp"

namespace sewkit {

/// Piecewise-linear path [0, 1] -> R^d through points[j] at breakpoints[j].
class LipPath {
 public:
  /// breakpoints strictly increasing from 0 to 1, one point per breakpoint.
  LipPath(std::vector<double> breakpoints, std::vector<Point> points);

  /// Uniformly spaced breakpoints.
  static LipPath polyline(std::vector<Point> points);
  static LipPath constant(const Point& p);
  static LipPath segment(const Point& a, const Point& b);
  /// Inscribed polygon of an elliptic arc from angle theta0 to theta1.
  static LipPath ellipse_arc(const Point& center, double rx, double ry, double theta0, double theta1,
                             std::size_t segments);
  static LipPath arc(const Point& center, double radius, double theta0, double theta1,
                     std::size_t segments) {
    return ellipse_arc(center, radius, radius, theta0, theta1, segments);
  }

  Point operator()(double u) const;

  const std::vector<double>& breakpoints() const { return breakpoints_; }
  const std::vector<Point>& points() const { return points_; }
  std::size_t dim() const { return points_.front().dim(); }
  const Point& start() const { return points_.front(); }
  const Point& end() const { return points_.back(); }

  /// max over legs of |p_j - p_{j-1}| / (u_j - u_{j-1}).
  double lip_norm() const { return lip_; }
  double length() const;

 private:
  std::vector<double> breakpoints_;
  std::vector<Point> points_;
  double lip_ = 0.0;
};

/// g . g2: runs g2 on [0, 1/2], then g on [1/2, 1]. Needs g(0) = g2(1).
LipPath concat_reverse_order(const LipPath& g, const LipPath& g2, double tol = 1e-12);

/// u -> g(s u + t (1 - u)); runs from g(t) to g(s).
LipPath subpath(const LipPath& g, double s, double t);

/// subpath(g, 0, 1).
LipPath reverse_path(const LipPath& g);

/// g o phi for the monotone PL map phi with phi(v_i) = w_i, phi(0) = 0, phi(1) = 1.
LipPath reparametrize(const LipPath& g, const std::vector<double>& v, const std::vector<double>& w);

/// Cancels backtracking legs p -> q -> p' (p' on the line through p and q,
/// heading back) and zero-length legs until none remain. Endpoints are kept.
LipPath pl_thin_reduce(const LipPath& g, double tol = 1e-9);

/// (mu_gamma)_st = mu_{gamma(s) gamma(t)} as an interval flow model.
/// Throws DomainError when a vertex or leg of g leaves the model's domain.
FlowModelPtr pullback_flow(const PairModelPtr& m, const LipPath& g);

/// Sewn holonomy psi_g : M_{g(1)} -> M_{g(0)}.
SewResult sew_holonomy(const PairModelPtr& m, const LipPath& g, const SewOptions& options);

struct GroupoidReport {
  std::size_t checks = 0;
  double max_identity = 0.0;
  double max_composition = 0.0;
  double max_inverse = 0.0;
  double max_association = 0.0;
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

/// Identity, composition, inverse and associativity axioms for sewn
/// holonomies over every composable pair and triple drawn from `paths`.
GroupoidReport groupoid_axiom_check(const PairModelPtr& m, const std::vector<LipPath>& paths,
                                    const SewOptions& options);

/// CSV with header u,x0,x1,...
void write_path_csv(std::ostream& out, const LipPath& g);
LipPath read_path_csv(std::istream& in);

}  // namespace sewkit
