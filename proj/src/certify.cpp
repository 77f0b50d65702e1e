#include "sewkit/certify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>

#include "sewkit/errors.hpp"
#include "sewkit/kernels.hpp"

namespace sewkit {

namespace {

double unit(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

void check_gap_range(const std::vector<FitSample>& rows) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (const auto& r : rows) {
    for (double g : {r.gap_a, r.gap_b}) {
      if (g <= 0.0) continue;
      lo = std::min(lo, g);
      hi = std::max(hi, g);
    }
  }
  if (!(hi >= 100.0 * lo)) throw DomainError("certify: sample gaps must span at least two decades");
}

// Least squares on the rows above the noise floor; eps = 2 sigma - offset.
void fit(FitReport& report, double offset) {
  double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& r : report.samples) {
    if (r.kind == FitSample::Kind::consistency) continue;
    if (r.defect < kDefectFloor) {
      r.kind = FitSample::Kind::below_floor;
      continue;
    }
    const double x = std::log(r.q);
    const double y = std::log(r.defect);
    n += 1;
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  report.used = static_cast<std::size_t>(n);
  if (report.used == 0) {
    report.exact = true;
    report.eps_hat = std::numeric_limits<double>::infinity();
    report.note = "exact model, eps = inf (defect 0)";
    return;
  }
  const double det = n * sxx - sx * sx;
  if (report.used < 3 || !(det > 0.0))
    throw DomainError("certify: too few samples above the noise floor to fit");
  const double sigma = (n * sxy - sx * sy) / det;
  const double intercept = (sy - sigma * sx) / n;
  double ss = 0.0;
  for (auto& r : report.samples) {
    if (r.kind != FitSample::Kind::used) continue;
    r.residual = std::log(r.defect) - (intercept + sigma * std::log(r.q));
    ss += r.residual * r.residual;
  }
  report.slope = sigma;
  report.eps_hat = 2.0 * sigma - offset;
  report.c_hat = std::exp(intercept);
  report.rms_residual = std::sqrt(ss / n);
}

void count_violations(FitReport& report) {
  for (const auto& r : report.samples)
    if (!BoundCheck{r.defect, r.bound}.holds()) ++report.bound_violations;
}

}  // namespace

FitReport fit_three_point(const FlowModelPtr& m, const std::vector<std::array<double, 3>>& samples) {
  if (samples.size() < 20) throw DomainError("fit_three_point: need at least 20 samples");
  FitReport report;
  report.samples.resize(samples.size());
  for (const auto& [s, u, t] : samples)
    if (!((s < u && u < t) || (t < u && u < s)))
      throw DomainError("fit_three_point: u must lie strictly between s and t");
  kernels::parallel_for(samples.size(), [&](std::size_t n) {
    const auto& [s, u, t] = samples[n];
    const auto check = three_point_defect(m, s, u, t);
    const double a = std::abs(t - u);
    const double b = std::abs(u - s);
    report.samples[n] = {FitSample::Kind::used, n, a, b, a * b, check.lhs, check.rhs, 0.0};
  });
  check_gap_range(report.samples);
  fit(report, 1.0);
  count_violations(report);
  return report;
}

FitReport fit_strong_four_point(const PairModelPtr& m,
                                const std::vector<std::array<Point, 4>>& samples) {
  if (samples.size() < 20) throw DomainError("fit_strong_four_point: need at least 20 samples");
  FitReport report;
  report.samples.resize(samples.size());
  const HoelderData& h = m->hoelder();
  auto defect = [&](const Point& x, const Point& u, const Point& v, const Point& y) {
    return map_distance(compose(mu(m, x, u), mu(m, u, y)), compose(mu(m, x, v), mu(m, v, y)))
        .as_double();
  };
  kernels::parallel_for(samples.size(), [&](std::size_t n) {
    const auto& [x, u, v, y] = samples[n];
    const double xu = m->param_distance(x, u);
    const double uv = m->param_distance(u, v);
    const double vy = m->param_distance(v, y);
    report.samples[n] = {FitSample::Kind::used, n,   uv, std::max(xu, vy), vy * uv + xu * uv,
                         defect(x, u, v, y),        h.four_point_bound(xu, uv, vy), 0.0};
  });
  check_gap_range(report.samples);
  {
    const auto& [x, u, v, y] = samples.front();
    const double xu = m->param_distance(x, u);
    const double uy = m->param_distance(u, y);
    report.samples.push_back({FitSample::Kind::consistency, samples.size(), 0.0, std::max(xu, uy),
                              0.0, defect(x, u, u, y), h.four_point_bound(xu, 0.0, uy), 0.0});
  }
  fit(report, 2.0);
  report.sewing_only = !report.exact && report.eps_hat < 0.25;
  if (report.sewing_only) report.note = "sewing-only: defect degree below the strong four-point estimate";
  count_violations(report);
  return report;
}

std::vector<std::array<double, 3>> default_three_point_samples(double s0, double t0, std::size_t n,
                                                               std::uint64_t seed) {
  if (n < 2 || !(t0 > s0)) throw DomainError("default_three_point_samples: bad arguments");
  std::mt19937_64 rng(seed);
  const double span = t0 - s0;
  std::vector<std::array<double, 3>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double h = span * std::pow(10.0, -3.0 + 2.5 * static_cast<double>(i) / static_cast<double>(n - 1)) / 2;
    const double a = h * (0.5 + 0.5 * unit(rng));
    const double b = h * (0.5 + 0.5 * unit(rng));
    const double s = s0 + (span - a - b) * unit(rng);
    out.push_back({s, s + b, s + b + a});
  }
  return out;
}

std::vector<std::array<Point, 4>> default_four_point_samples(const PairModelPtr& m, std::size_t n,
                                                             std::uint64_t seed) {
  constexpr std::size_t kShapes = 4;
  if (n < 2 * kShapes) throw DomainError("default_four_point_samples: need at least eight samples");
  std::mt19937_64 rng(seed);
  const std::size_t d = m->param_dim();
  const std::size_t levels = (n + kShapes - 1) / kShapes;
  auto scale = [levels](std::size_t i) {
    const std::size_t j = i / kShapes;
    return std::pow(10.0, -3.0 + 2.5 * static_cast<double>(j) / static_cast<double>(levels - 1)) / 2;
  };
  auto random_direction = [&] {
    Point e(d);
    double len = 0.0;
    while (len < 1e-3) {
      for (std::size_t k = 0; k < d; ++k) e[k] = 2.0 * unit(rng) - 1.0;
      len = norm(e);
    }
    return (1.0 / len) * e;
  };
  struct Shape {
    Point x, e1, e2, e3;
  };
  auto walk = [](const Shape& sh, double h) {
    const Point u = sh.x + h * sh.e1;
    const Point v = u + h * sh.e2;
    return std::array<Point, 4>{sh.x, u, v, v + h * sh.e3};
  };
  // Unit steps and one shared scale ladder per shape keep the shapes from
  // biasing the pooled slope.
  std::vector<Shape> shapes;
  for (int attempt = 0; shapes.size() < kShapes; ++attempt) {
    if (attempt > 10000) throw DomainError("default_four_point_samples: domain too small to sample");
    Shape sh{Point(d), {}, {}, {}};
    for (std::size_t k = 0; k < d; ++k) sh.x[k] = 4.0 * unit(rng) - 2.0;
    sh.e1 = random_direction();
    sh.e2 = random_direction();
    sh.e3 = random_direction();
    bool ok = true;
    for (std::size_t i = shapes.size(); ok && i < n; i += kShapes) {
      const auto& [x, u, v, y] = walk(sh, scale(i));
      ok = m->segment_in_domain(x, u) && m->segment_in_domain(u, y) && m->segment_in_domain(x, v) &&
           m->segment_in_domain(v, y) && m->segment_in_domain(u, v);
    }
    if (ok) shapes.push_back(sh);
  }
  std::vector<std::array<Point, 4>> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back(walk(shapes[i % kShapes], scale(i)));
  return out;
}

void write_fit_csv(std::ostream& out, const FitReport& report) {
  out << "row,index,gap_a,gap_b,q,defect,bound,residual,eps_hat,c_hat\n";
  char buf[512];
  for (const auto& r : report.samples) {
    const char* kind = r.kind == FitSample::Kind::used          ? "sample"
                       : r.kind == FitSample::Kind::below_floor ? "below_floor"
                                                                : "consistency";
    std::snprintf(buf, sizeof buf, "%s,%zu,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,,\n", kind, r.index,
                  r.gap_a, r.gap_b, r.q, r.defect, r.bound, r.residual);
    out << buf;
  }
  std::snprintf(buf, sizeof buf, "fit,%zu,,,,,,%.17g,%.17g,%.17g\n", report.used, report.rms_residual,
                report.eps_hat, report.c_hat);
  out << buf;
}

}  // namespace sewkit
