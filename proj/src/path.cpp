#include "sewkit/path.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <utility>

#include "sewkit/errors.hpp"

namespace sewkit {

LipPath::LipPath(std::vector<double> breakpoints, std::vector<Point> points)
    : breakpoints_(std::move(breakpoints)), points_(std::move(points)) {
  if (points_.size() < 2 || breakpoints_.size() != points_.size())
    throw DomainError("LipPath: need matching breakpoints and at least two points");
  if (breakpoints_.front() != 0.0 || breakpoints_.back() != 1.0)
    throw DomainError("LipPath: breakpoints must run from 0 to 1");
  for (std::size_t j = 1; j < points_.size(); ++j) {
    if (!(breakpoints_[j] > breakpoints_[j - 1]))
      throw DomainError("LipPath: breakpoints must be strictly increasing");
    if (points_[j].dim() != points_[0].dim()) throw DomainError("LipPath: mixed dimensions");
    lip_ = std::max(lip_, euclidean_distance(points_[j - 1], points_[j]) /
                              (breakpoints_[j] - breakpoints_[j - 1]));
  }
}

LipPath LipPath::polyline(std::vector<Point> points) {
  if (points.size() < 2) throw DomainError("LipPath::polyline: need at least two points");
  const std::size_t n = points.size() - 1;
  std::vector<double> u(n + 1);
  for (std::size_t j = 0; j <= n; ++j) u[j] = static_cast<double>(j) / static_cast<double>(n);
  return LipPath(std::move(u), std::move(points));
}

LipPath LipPath::constant(const Point& p) { return LipPath({0.0, 1.0}, {p, p}); }

LipPath LipPath::segment(const Point& a, const Point& b) { return LipPath({0.0, 1.0}, {a, b}); }

LipPath LipPath::ellipse_arc(const Point& center, double rx, double ry, double theta0,
                             double theta1, std::size_t segments) {
  if (segments == 0) throw DomainError("LipPath::ellipse_arc: need at least one segment");
  std::vector<Point> pts;
  pts.reserve(segments + 1);
  for (std::size_t j = 0; j <= segments; ++j) {
    const double a = theta0 + (theta1 - theta0) * static_cast<double>(j) / static_cast<double>(segments);
    pts.push_back(Point{center[0] + rx * std::cos(a), center[1] + ry * std::sin(a)});
  }
  return polyline(std::move(pts));
}

Point LipPath::operator()(double u) const {
  if (u <= 0.0) return points_.front();
  if (u >= 1.0) return points_.back();
  const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), u);
  const std::size_t j = static_cast<std::size_t>(it - breakpoints_.begin());
  const double u0 = breakpoints_[j - 1];
  if (u == u0) return points_[j - 1];
  return lerp(points_[j - 1], points_[j], (u - u0) / (breakpoints_[j] - u0));
}

double LipPath::length() const {
  double total = 0.0;
  for (std::size_t j = 1; j < points_.size(); ++j) total += euclidean_distance(points_[j - 1], points_[j]);
  return total;
}

LipPath concat_reverse_order(const LipPath& g, const LipPath& g2, double tol) {
  if (g.dim() != g2.dim() || euclidean_distance(g.start(), g2.end()) > tol)
    throw ConcatError("concat_reverse_order: g(0) must equal g2(1)");
  std::vector<double> u;
  std::vector<Point> p;
  for (std::size_t j = 0; j < g2.points().size(); ++j) {
    u.push_back(g2.breakpoints()[j] / 2);
    p.push_back(g2.points()[j]);
  }
  for (std::size_t j = 1; j < g.points().size(); ++j) {
    u.push_back(0.5 + g.breakpoints()[j] / 2);
    p.push_back(g.points()[j]);
  }
  return LipPath(std::move(u), std::move(p));
}

LipPath subpath(const LipPath& g, double s, double t) {
  if (!(s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0))
    throw DomainError("subpath: parameters must lie in [0, 1]");
  if (s == t) return LipPath::constant(g(t));
  std::vector<std::pair<double, Point>> nodes;
  nodes.emplace_back(0.0, g(t));
  const double lo = std::min(s, t);
  const double hi = std::max(s, t);
  for (std::size_t j = 0; j < g.breakpoints().size(); ++j) {
    const double b = g.breakpoints()[j];
    if (b > lo && b < hi) nodes.emplace_back((b - t) / (s - t), g.points()[j]);
  }
  nodes.emplace_back(1.0, g(s));
  std::sort(nodes.begin() + 1, nodes.end() - 1,
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> u;
  std::vector<Point> p;
  for (auto& [uu, pp] : nodes) {
    if (!u.empty() && uu <= u.back()) continue;
    u.push_back(uu);
    p.push_back(pp);
  }
  if (u.back() != 1.0) {
    u.back() = 1.0;
    p.back() = g(s);
  }
  return LipPath(std::move(u), std::move(p));
}

LipPath reverse_path(const LipPath& g) { return subpath(g, 0.0, 1.0); }

LipPath reparametrize(const LipPath& g, const std::vector<double>& v, const std::vector<double>& w) {
  if (v.size() != w.size() || v.size() < 2 || v.front() != 0.0 || v.back() != 1.0 ||
      w.front() != 0.0 || w.back() != 1.0)
    throw DomainError("reparametrize: phi must map 0 to 0 and 1 to 1");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1]) || w[i] < w[i - 1])
      throw DomainError("reparametrize: phi must be monotone");
  std::vector<double> u = v;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (w[i] == w[i - 1]) continue;
    for (double b : g.breakpoints())
      if (b > w[i - 1] && b < w[i])
        u.push_back(v[i - 1] + (b - w[i - 1]) / (w[i] - w[i - 1]) * (v[i] - v[i - 1]));
  }
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  std::vector<Point> p;
  p.reserve(u.size());
  for (double uu : u) {
    const auto it = std::upper_bound(v.begin(), v.end(), uu);
    double phi = 1.0;
    if (it != v.end()) {
      const std::size_t i = static_cast<std::size_t>(it - v.begin());
      phi = w[i - 1] + (uu - v[i - 1]) / (v[i] - v[i - 1]) * (w[i] - w[i - 1]);
    }
    p.push_back(g(phi));
  }
  return LipPath(std::move(u), std::move(p));
}

namespace {

// p -> q -> r turns back along the line through p and q.
bool backtracks(const Point& p, const Point& q, const Point& r, double tol) {
  const Point d = q - p;
  const double len = norm(d);
  if (len <= tol) return false;
  const Point e = r - q;
  if (dot(d, e) >= 0.0) return false;
  const Point w = r - p;
  return norm(w - (dot(w, d) / (len * len)) * d) <= tol;
}

}  // namespace

LipPath pl_thin_reduce(const LipPath& g, double tol) {
  std::vector<double> u = g.breakpoints();
  std::vector<Point> p = g.points();
  for (bool changed = true; changed;) {
    changed = false;
    std::vector<double> su;
    std::vector<Point> sp;
    for (std::size_t j = 0; j < p.size(); ++j) {
      su.push_back(u[j]);
      sp.push_back(p[j]);
      while (sp.size() >= 3 && backtracks(sp[sp.size() - 3], sp[sp.size() - 2], sp.back(), tol)) {
        sp.erase(sp.end() - 2);
        su.erase(su.end() - 2);
        changed = true;
      }
    }
    std::vector<double> ku{su.front()};
    std::vector<Point> kp{sp.front()};
    for (std::size_t j = 1; j < sp.size(); ++j) {
      if (euclidean_distance(kp.back(), sp[j]) <= tol) {
        if (j + 1 < sp.size()) {
          changed = true;
          continue;
        }
        if (kp.size() > 1) {
          kp.pop_back();
          ku.pop_back();
          changed = true;
        }
      }
      ku.push_back(su[j]);
      kp.push_back(sp[j]);
    }
    u = std::move(ku);
    p = std::move(kp);
  }
  return LipPath(std::move(u), std::move(p));
}

namespace {

class PullbackFlow final : public FlowModel {
 public:
  PullbackFlow(PairModelPtr m, LipPath g)
      : m_(std::move(m)), g_(std::move(g)), lip_(g_.lip_norm()), h_(rescale(m_->hoelder(), lip_)) {}

  std::string name() const override { return "pullback/" + m_->name(); }
  SpacePtr space_at(double t) const override { return m_->fiber(g_(t)); }
  void apply(double s, double t, std::span<Point> xs) const override {
    m_->apply(g_(s), g_(t), xs);
  }
  const HoelderData& hoelder() const override { return h_; }
  double max_step() const override {
    if (lip_ == 0.0) return std::numeric_limits<double>::infinity();
    return m_->max_chord() / lip_;
  }

 private:
  // d(g(s), g(t)) <= Lip |t - s| turns each P-term into an interval term of
  // the same total degree; a knitting-mode term of degree 2 + eps becomes a
  // sewing-mode term with eps' = 1 + eps.
  static HoelderData rescale(const HoelderData& h, double lip) {
    std::vector<DefectTerm> terms;
    for (const auto& term : h.terms())
      terms.push_back({term.a, term.b, term.C * std::pow(lip, term.a + term.b)});
    const double eps = terms.front().a + terms.front().b - 1.0;
    HoelderData::Growth growth;
    if (h.has_declared_growth()) growth = [h, lip](double d) { return h.growth(lip * d); };
    return HoelderData(eps, std::move(terms), h.lip_slope() * lip, DefectMode::sewing, growth);
  }

  PairModelPtr m_;
  LipPath g_;
  double lip_;
  HoelderData h_;
};

}  // namespace

FlowModelPtr pullback_flow(const PairModelPtr& m, const LipPath& g) {
  if (g.dim() != m->param_dim()) throw DomainError("pullback_flow: path dimension mismatch");
  const auto& p = g.points();
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (!m->in_domain(p[j])) throw DomainError("pullback_flow: path leaves the model domain");
    if (j > 0 && !m->segment_in_domain(p[j - 1], p[j]))
      throw DomainError("pullback_flow: path leg leaves the model domain");
  }
  return std::make_shared<PullbackFlow>(m, g);
}

SewResult sew_holonomy(const PairModelPtr& m, const LipPath& g, const SewOptions& options) {
  return sew(pullback_flow(m, g), 0.0, 1.0, options);
}

namespace {

std::string describe(const char* what, std::size_t a, double d, double budget) {
  char buf[200];
  std::snprintf(buf, sizeof buf, "%s (path %zu): %.17g > %.17g", what, a, d, budget);
  return buf;
}

bool composable(const LipPath& a, const LipPath& b) {
  return a.dim() == b.dim() && euclidean_distance(a.start(), b.end()) <= 1e-12;
}

}  // namespace

GroupoidReport groupoid_axiom_check(const PairModelPtr& m, const std::vector<LipPath>& paths,
                                    const SewOptions& options) {
  GroupoidReport report;
  const double tol = options.tol;
  std::vector<ProbedMap> psi;
  psi.reserve(paths.size());
  for (const auto& g : paths) psi.push_back(sew_holonomy(m, g, options).flow);

  for (std::size_t a = 0; a < paths.size(); ++a) {
    for (const Point& x : {paths[a].start(), paths[a].end()}) {
      const auto id = sew_holonomy(m, LipPath::constant(x), options).flow;
      const double d = map_distance(id, ProbedMap::identity(m->fiber(x))).as_double();
      report.max_identity = std::max(report.max_identity, d);
      ++report.checks;
      if (d != 0.0) report.violations.push_back(describe("constant path is not the identity", a, d, 0.0));
    }
    const auto inv = sew_holonomy(m, reverse_path(paths[a]), options).flow;
    const double d =
        map_distance(compose(inv, psi[a]), ProbedMap::identity(m->fiber(paths[a].end()))).as_double();
    report.max_inverse = std::max(report.max_inverse, d);
    ++report.checks;
    if (d > 2 * tol) report.violations.push_back(describe("inverse", a, d, 2 * tol));
  }

  for (std::size_t a = 0; a < paths.size(); ++a) {
    for (std::size_t b = 0; b < paths.size(); ++b) {
      if (!composable(paths[a], paths[b])) continue;
      const LipPath ab = concat_reverse_order(paths[a], paths[b]);
      const auto joined = sew_holonomy(m, ab, options).flow;
      const double d = map_distance(joined, compose(psi[b], psi[a])).as_double();
      report.max_composition = std::max(report.max_composition, d);
      ++report.checks;
      if (d > 3 * tol) report.violations.push_back(describe("composition", a, d, 3 * tol));
      for (std::size_t c = 0; c < paths.size(); ++c) {
        if (!composable(paths[b], paths[c])) continue;
        const LipPath left = concat_reverse_order(ab, paths[c]);
        const LipPath right = concat_reverse_order(paths[a], concat_reverse_order(paths[b], paths[c]));
        const double e = map_distance(sew_holonomy(m, left, options).flow,
                                      sew_holonomy(m, right, options).flow)
                             .as_double();
        report.max_association = std::max(report.max_association, e);
        ++report.checks;
        if (e > 2 * tol) report.violations.push_back(describe("associativity", a, e, 2 * tol));
      }
    }
  }
  return report;
}

void write_path_csv(std::ostream& out, const LipPath& g) {
  out << "u";
  for (std::size_t i = 0; i < g.dim(); ++i) out << ",x" << i;
  out << "\n";
  char buf[40];
  for (std::size_t j = 0; j < g.points().size(); ++j) {
    std::snprintf(buf, sizeof buf, "%.17g", g.breakpoints()[j]);
    out << buf;
    for (double c : g.points()[j].coords()) {
      std::snprintf(buf, sizeof buf, "%.17g", c);
      out << ',' << buf;
    }
    out << "\n";
  }
}

LipPath read_path_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("u", 0) != 0)
    throw DomainError("read_path_csv: missing header u,x0,...");
  std::vector<double> u;
  std::vector<Point> p;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::vector<double> values;
    std::stringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      char* end = nullptr;
      const double v = std::strtod(cell.c_str(), &end);
      if (end == cell.c_str()) throw DomainError("read_path_csv: bad number on line " + std::to_string(row));
      values.push_back(v);
    }
    if (values.size() < 2) throw DomainError("read_path_csv: short row on line " + std::to_string(row));
    u.push_back(values[0]);
    p.emplace_back(std::span<const double>(values).subspan(1));
  }
  return LipPath(std::move(u), std::move(p));
}

}  // namespace sewkit
