#include "sewkit/subdivision.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>

#include "sewkit/errors.hpp"

namespace sewkit {

Subdivision::Subdivision(std::vector<double> points) : points_(std::move(points)) {
  if (points_.empty()) throw SubdivisionError("Subdivision: no points");
  for (double p : points_)
    if (!std::isfinite(p)) throw SubdivisionError("Subdivision: non-finite point");
  if (points_.size() == 1) return;
  const double s = points_.front();
  const double t = points_.back();
  if (s == t) {
    if (std::any_of(points_.begin(), points_.end(), [s](double p) { return p != s; }))
      throw SubdivisionError("Subdivision: degenerate interval must be a single point");
    points_.resize(1);
    return;
  }
  const bool increasing = s < t;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    const bool ok = increasing ? points_[i - 1] < points_[i] : points_[i - 1] > points_[i];
    if (!ok) throw SubdivisionError("Subdivision: points must be strictly monotone from s to t");
  }
}

Subdivision Subdivision::trivial(double s, double t) {
  if (s == t) return Subdivision({s});
  return Subdivision({s, t});
}

Subdivision Subdivision::regular(double s, double t, std::size_t intervals) {
  if (intervals == 0) throw SubdivisionError("Subdivision::regular: need at least one interval");
  if (s == t) return Subdivision({s});
  std::vector<double> pts(intervals + 1);
  const double k = static_cast<double>(intervals);
  for (std::size_t j = 0; j <= intervals; ++j) pts[j] = s + (t - s) * (static_cast<double>(j) / k);
  pts.front() = s;
  pts.back() = t;
  return Subdivision(std::move(pts));
}

bool Subdivision::refines(const Subdivision& coarse) const {
  if (start() != coarse.start() || end() != coarse.end()) return false;
  const bool increasing = start() <= end();
  auto less = [increasing](double a, double b) { return increasing ? a < b : a > b; };
  return std::includes(points_.begin(), points_.end(), coarse.points_.begin(), coarse.points_.end(),
                       less);
}

double mesh(const Subdivision& I) {
  double m = 0.0;
  const auto& p = I.points();
  for (std::size_t j = 1; j < p.size(); ++j) m = std::max(m, std::abs(p[j] - p[j - 1]));
  return m;
}

Subdivision dyadic_refine(const Subdivision& I) {
  const auto& p = I.points();
  if (p.size() == 1) return I;
  std::vector<double> out;
  out.reserve(2 * p.size() - 1);
  for (std::size_t j = 0; j + 1 < p.size(); ++j) {
    out.push_back(p[j]);
    out.push_back((p[j] + p[j + 1]) / 2);
  }
  out.push_back(p.back());
  return Subdivision(std::move(out));
}

Subdivision joint(const Subdivision& I, const Subdivision& J) {
  if (I.start() != J.start() || I.end() != J.end())
    throw SubdivisionError("joint: subdivisions have different endpoints");
  const bool increasing = I.start() <= I.end();
  auto less = [increasing](double a, double b) { return increasing ? a < b : a > b; };
  std::vector<double> out;
  out.reserve(I.points().size() + J.points().size());
  std::set_union(I.points().begin(), I.points().end(), J.points().begin(), J.points().end(),
                 std::back_inserter(out), less);
  return Subdivision(std::move(out));
}

Coarsening coarsen_minimal_pair(const Subdivision& I) {
  const auto& p = I.points();
  if (p.size() < 3) throw SubdivisionError("coarsen_minimal_pair: subdivision is already trivial");
  std::size_t best = 1;
  double best_sum = std::abs(p[2] - p[0]);
  for (std::size_t j = 2; j + 1 < p.size(); ++j) {
    const double sum = std::abs(p[j + 1] - p[j - 1]);
    if (sum < best_sum) {
      best_sum = sum;
      best = j;
    }
  }
  std::vector<double> out;
  out.reserve(p.size() - 1);
  for (std::size_t j = 0; j < p.size(); ++j)
    if (j != best) out.push_back(p[j]);
  return {Subdivision(std::move(out)), best, best_sum};
}

Subdivision reverse(const Subdivision& I) {
  std::vector<double> out(I.points().rbegin(), I.points().rend());
  return Subdivision(std::move(out));
}

Subdivision concatenate(const Subdivision& I, const Subdivision& J) {
  if (I.end() != J.start()) throw SubdivisionError("concatenate: I must end where J starts");
  std::vector<double> out = I.points();
  out.insert(out.end(), J.points().begin() + 1, J.points().end());
  return Subdivision(std::move(out));
}

}  // namespace sewkit
