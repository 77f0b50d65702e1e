#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "sewkit/path.hpp"

namespace sewkit {

/// H : [0,1]^2 -> P with gamma^s(t) = H(s, t), all gamma^s from x to y, and a
/// declared Lipschitz norm ell for the l1 distance on [0,1]^2.
struct Homotopy {
  std::function<Point(double, double)> H;
  double ell;
  std::string description;
};

/// (1 - s) from(t) + s to(t); ell computed exactly from the PL data.
Homotopy linear_homotopy(const LipPath& from, const LipPath& to);

/// Half ellipses from (1, 0) to (-1, 0) with vertical semi-axis moving
/// linearly from ry0 to ry1, through the upper or the lower half plane.
/// Each row is traversed so that t = 1/2 lands at parameter `knee` of the arc;
/// knee = 0.5 is the uniform angle parametrization.
Homotopy ellipse_family(double ry0, double ry1, bool upper = true, std::size_t segments = 64,
                        double knee = 0.5);

/// Samples x_j^i = H(i/k, j/k).
class HomotopyNet {
 public:
  HomotopyNet(std::size_t k, double ell, std::vector<Point> grid);

  std::size_t k() const { return k_; }
  double ell() const { return ell_; }
  double delta() const { return 1.0 / static_cast<double>(k_); }
  /// x_j^i: row i (homotopy time), column j (path time).
  const Point& at(std::size_t i, std::size_t j) const { return grid_[i * (k_ + 1) + j]; }
  /// Largest row or column step.
  double mesh() const;

 private:
  std::size_t k_;
  double ell_;
  std::vector<Point> grid_;
};

/// Throws DeclaredLipschitzViolated when a grid step exceeds ell/k, or the
/// rows do not share their endpoints.
HomotopyNet build_net(const Homotopy& H, std::size_t k);

/// mu_{x_0^i x_1^i} o ... o mu_{x_{k-1}^i x_k^i}.
ProbedMap row_map(const HomotopyNet& net, const PairModelPtr& m, std::size_t i);

/// Composition through x_0^i ... x_{k-j-1}^i, x_{k-j}^{i+1} ... x_k^{i+1},
/// for 0 <= i, j <= k - 1.
ProbedMap ladder_map(const HomotopyNet& net, const PairModelPtr& m, std::size_t i, std::size_t j);

/// d(ladder(i, j), ladder(i, j+1)) and its strong four-point bound at the moved node.
struct LadderStep {
  std::size_t i;
  std::size_t j;
  double lhs;
  double rhs;
};

std::vector<LadderStep> ladder_step_report(const HomotopyNet& net, const PairModelPtr& m);

namespace serial {
std::vector<LadderStep> ladder_step_report(const HomotopyNet& net, const PairModelPtr& m);
}

struct KnitComparison {
  double measured;  // d(row 0, row k)
  double bound;     // e^{delta ell L} (2 + delta ell L) (sum C) ell^{2+eps} delta^eps
  bool holds() const;
};

/// Throws ModeError for sewing-mode data.
KnitComparison knit_compare(const HomotopyNet& net, const PairModelPtr& m);

struct HolonomyResult {
  SewResult sewn;
  std::optional<double> angle;  // accumulated rotation angle, not reduced mod 2 pi
};

HolonomyResult holonomy(const PairModelPtr& m, const LipPath& g, const SewOptions& options);

}  // namespace sewkit
