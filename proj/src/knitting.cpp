#include "sewkit/knitting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include "sewkit/errors.hpp"
#include "sewkit/kernels.hpp"

namespace sewkit {

Homotopy linear_homotopy(const LipPath& from, const LipPath& to) {
  if (from.dim() != to.dim()) throw DomainError("linear_homotopy: dimension mismatch");
  if (euclidean_distance(from.start(), to.start()) > 1e-12 ||
      euclidean_distance(from.end(), to.end()) > 1e-12)
    throw DomainError("linear_homotopy: paths must share their endpoints");
  // The difference of two PL paths is PL on the merged breakpoints, so its
  // sup is attained at one of them.
  std::vector<double> u = from.breakpoints();
  u.insert(u.end(), to.breakpoints().begin(), to.breakpoints().end());
  double spread = 0.0;
  for (double b : u) spread = std::max(spread, euclidean_distance(from(b), to(b)));
  const double ell = std::max({from.lip_norm(), to.lip_norm(), spread});
  return {[from, to](double s, double t) {
            const Point a = from(t);
            const Point b = to(t);
            return lerp(a, b, s);
          },
          ell, "linear"};
}

Homotopy ellipse_family(double ry0, double ry1, bool upper, std::size_t segments, double knee) {
  if (!(knee > 0.0 && knee < 1.0)) throw DomainError("ellipse_family: knee must lie in (0, 1)");
  const double end = upper ? std::numbers::pi : -std::numbers::pi;
  const Point origin{0.0, 0.0};
  auto row = [&](double ry) {
    auto arc = LipPath::ellipse_arc(origin, 1.0, ry, 0.0, end, segments);
    return knee == 0.5 ? arc : reparametrize(arc, {0.0, 0.5, 1.0}, {0.0, knee, 1.0});
  };
  auto h = linear_homotopy(row(ry0), row(ry1));
  h.description = "ellipse_family";
  return h;
}

HomotopyNet::HomotopyNet(std::size_t k, double ell, std::vector<Point> grid)
    : k_(k), ell_(ell), grid_(std::move(grid)) {
  if (k_ < 2) throw DomainError("HomotopyNet: k must be at least 2");
  if (grid_.size() != (k_ + 1) * (k_ + 1)) throw DomainError("HomotopyNet: grid size mismatch");
}

double HomotopyNet::mesh() const {
  double m = 0.0;
  for (std::size_t i = 0; i <= k_; ++i)
    for (std::size_t j = 0; j <= k_; ++j) {
      if (j > 0) m = std::max(m, euclidean_distance(at(i, j - 1), at(i, j)));
      if (i > 0) m = std::max(m, euclidean_distance(at(i - 1, j), at(i, j)));
    }
  return m;
}

HomotopyNet build_net(const Homotopy& H, std::size_t k) {
  if (k < 2) throw DomainError("build_net: k must be at least 2");
  const double kk = static_cast<double>(k);
  std::vector<Point> grid((k + 1) * (k + 1));
  for (std::size_t i = 0; i <= k; ++i)
    for (std::size_t j = 0; j <= k; ++j)
      grid[i * (k + 1) + j] = H.H(static_cast<double>(i) / kk, static_cast<double>(j) / kk);
  for (std::size_t i = 1; i <= k; ++i) {
    Point& x = grid[i * (k + 1)];
    Point& y = grid[i * (k + 1) + k];
    if (euclidean_distance(x, grid[0]) > 1e-12 || euclidean_distance(y, grid[k]) > 1e-12)
      throw DeclaredLipschitzViolated("build_net: homotopy does not fix the endpoints");
    x = grid[0];
    y = grid[k];
  }
  HomotopyNet net(k, H.ell, std::move(grid));
  const double m = net.mesh();
  if (m > H.ell / kk + 1e-12)
    throw DeclaredLipschitzViolated("build_net: net mesh " + std::to_string(m) +
                                    " exceeds ell/k = " + std::to_string(H.ell / kk));
  return net;
}

namespace {

ProbedMap chain(const PairModelPtr& m, std::vector<Point> nodes) {
  for (std::size_t n = 1; n < nodes.size(); ++n)
    if (!m->segment_in_domain(nodes[n - 1], nodes[n]))
      throw DomainError("knitting: net chord leaves the model domain");
  auto shared = std::make_shared<const std::vector<Point>>(std::move(nodes));
  const auto& p = *shared;
  return ProbedMap(m->fiber(p.back()), m->fiber(p.front()), [m, shared](std::span<Point> zs) {
    const auto& q = *shared;
    for (std::size_t n = q.size() - 1; n-- > 0;) m->apply(q[n], q[n + 1], zs);
  });
}

std::vector<Point> ladder_nodes(const HomotopyNet& net, std::size_t i, std::size_t j) {
  const std::size_t k = net.k();
  std::vector<Point> nodes;
  nodes.reserve(k + 1);
  for (std::size_t c = 0; c <= k; ++c) nodes.push_back(c + j < k ? net.at(i, c) : net.at(i + 1, c));
  return nodes;
}

LadderStep step(const HomotopyNet& net, const PairModelPtr& m, std::size_t i, std::size_t j) {
  const std::size_t c = net.k() - j - 1;
  const auto before = ladder_nodes(net, i, j);
  const double lhs = map_distance(chain(m, before), chain(m, ladder_nodes(net, i, j + 1))).as_double();
  const HoelderData& h = m->hoelder();
  double prefix = 1.0;
  for (std::size_t n = 1; n < c; ++n)
    prefix *= 1.0 + h.lip_slope() * m->param_distance(before[n - 1], before[n]);
  const Point& a = net.at(i, c - 1);
  const Point& u = net.at(i, c);
  const Point& v = net.at(i + 1, c);
  const Point& b = net.at(i + 1, c + 1);
  const double rhs =
      prefix * h.four_point_bound(m->param_distance(a, u), m->param_distance(u, v),
                                  m->param_distance(v, b));
  return {i, j, lhs, rhs};
}

template <class ParallelFor>
std::vector<LadderStep> step_report(const HomotopyNet& net, const PairModelPtr& m,
                                    ParallelFor&& parallel_for) {
  const std::size_t k = net.k();
  const std::size_t per_row = k - 1;
  std::vector<LadderStep> out(k * per_row);
  parallel_for(out.size(), [&](std::size_t n) { out[n] = step(net, m, n / per_row, n % per_row); });
  return out;
}

}  // namespace

ProbedMap row_map(const HomotopyNet& net, const PairModelPtr& m, std::size_t i) {
  if (i > net.k()) throw DomainError("row_map: row out of range");
  std::vector<Point> nodes;
  for (std::size_t c = 0; c <= net.k(); ++c) nodes.push_back(net.at(i, c));
  return chain(m, std::move(nodes));
}

ProbedMap ladder_map(const HomotopyNet& net, const PairModelPtr& m, std::size_t i, std::size_t j) {
  if (i >= net.k() || j >= net.k()) throw DomainError("ladder_map: index out of range");
  return chain(m, ladder_nodes(net, i, j));
}

std::vector<LadderStep> ladder_step_report(const HomotopyNet& net, const PairModelPtr& m) {
  return step_report(net, m, [](std::size_t n, const std::function<void(std::size_t)>& body) {
    kernels::parallel_for(n, body);
  });
}

namespace serial {
std::vector<LadderStep> ladder_step_report(const HomotopyNet& net, const PairModelPtr& m) {
  return step_report(net, m, [](std::size_t n, const std::function<void(std::size_t)>& body) {
    kernels::serial::parallel_for(n, body);
  });
}
}  // namespace serial

bool KnitComparison::holds() const { return BoundCheck{measured, bound}.holds(); }

KnitComparison knit_compare(const HomotopyNet& net, const PairModelPtr& m) {
  const HoelderData& h = m->hoelder();
  if (h.mode() != DefectMode::knitting)
    throw ModeError("knit_compare: model carries sewing-mode data");
  const double measured = map_distance(row_map(net, m, 0), row_map(net, m, net.k())).as_double();
  const double dl = net.delta() * net.ell() * h.lip_slope();
  const double bound = std::exp(dl) * (2.0 + dl) * h.sum_C() *
                       std::pow(net.ell(), 2.0 + h.epsilon()) * std::pow(net.delta(), h.epsilon());
  return {measured, bound};
}

namespace {

double angle_sum(const PairActionModel& m, const LipPath& g, double a, double b, int depth) {
  if (depth == 0) return *m.angle_increment(g(a), g(b));
  const double mid = (a + b) / 2;
  return angle_sum(m, g, a, mid, depth - 1) + angle_sum(m, g, mid, b, depth - 1);
}

}  // namespace

HolonomyResult holonomy(const PairModelPtr& m, const LipPath& g, const SewOptions& options) {
  HolonomyResult out{sew_holonomy(m, g, options), std::nullopt};
  if (!m->angle_increment(g.start(), g.start())) return out;
  const auto& pts = out.sewn.base.points();
  const int depth = out.sewn.certificate.final_level - out.sewn.certificate.start_level;
  double angle = 0.0;
  for (std::size_t j = 1; j < pts.size(); ++j) angle += angle_sum(*m, g, pts[j - 1], pts[j], depth);
  out.angle = angle;
  return out;
}

}  // namespace sewkit
