#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sewkit/pair_action.hpp"
#include "sewkit/sewing.hpp"

namespace sewkit {

/// Defects below this are treated as rounding noise and left out of fits.
inline constexpr double kDefectFloor = 1e-13;

struct FitSample {
  enum class Kind { used, below_floor, consistency };
  Kind kind;
  std::size_t index;
  double gap_a;
  double gap_b;
  double q;  // regression abscissa
  double defect;
  double bound;  // declared bound at this sample
  double residual;  // log defect minus fitted log defect; 0 when not used
};

struct FitReport {
  bool exact = false;  // every defect vanished
  double eps_hat = 0.0;
  double c_hat = 0.0;
  double slope = 0.0;
  double rms_residual = 0.0;
  std::size_t used = 0;
  bool sewing_only = false;  // four-point fits: degree below 2 + 1/4
  std::size_t bound_violations = 0;
  std::vector<FitSample> samples;
  std::string note;
};

/// log defect ~ log C + sigma log(|t-u| |u-s|), eps = 2 sigma - 1.
/// Needs >= 20 samples with u strictly inside, gaps spanning two decades.
FitReport fit_three_point(const FlowModelPtr& m, const std::vector<std::array<double, 3>>& samples);

/// log defect ~ log C + sigma log(d(y,v) d(u,v) + d(x,u) d(u,v)), eps = 2 sigma - 2.
/// A u = v row is appended as a consistency check.
FitReport fit_strong_four_point(const PairModelPtr& m,
                                const std::vector<std::array<Point, 4>>& samples);

/// (s, u, t) inside [s0, t0] with gaps log-spaced over 2.5 decades.
std::vector<std::array<double, 3>> default_three_point_samples(double s0, double t0, std::size_t n,
                                                               std::uint64_t seed);

/// Short walks x -> u -> v -> y in the model's domain: four random shapes
/// with equal steps, each run over step sizes log-spaced across 2.5 decades.
std::vector<std::array<Point, 4>> default_four_point_samples(const PairModelPtr& m, std::size_t n,
                                                             std::uint64_t seed);

/// Columns row,index,gap_a,gap_b,q,defect,bound,residual,eps_hat,c_hat.
void write_fit_csv(std::ostream& out, const FitReport& report);

}  // namespace sewkit
