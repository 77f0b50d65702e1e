#include "sewkit/sewing.hpp"

#include <cmath>
#include <cstdio>
#include <utility>

#include "sewkit/kernels.hpp"

namespace sewkit {

ProbedMap mu(const FlowModelPtr& m, double s, double t) {
  return ProbedMap(m->space_at(t), m->space_at(s),
                   [m, s, t](std::span<Point> xs) { m->apply(s, t, xs); });
}

namespace {

// Innermost block first: the right half is applied before the left half.
void apply_dyadic(const FlowModel& m, double a, double b, int depth, std::span<Point> xs) {
  if (depth == 0) {
    m.apply(a, b, xs);
    return;
  }
  const double mid = (a + b) / 2;
  apply_dyadic(m, mid, b, depth - 1, xs);
  apply_dyadic(m, a, mid, depth - 1, xs);
}

std::string fmt(const char* pattern, double a, double b) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, a, b);
  return buf;
}

bool within(double lhs, double rhs) { return lhs <= rhs * (1.0 + 1e-9) + kProbeSlack; }

}  // namespace

bool BoundCheck::holds() const { return within(lhs, rhs); }

ProbedMap compose_along(const FlowModelPtr& m, const Subdivision& I) {
  return compose_dyadic(m, I, 0);
}

ProbedMap compose_dyadic(const FlowModelPtr& m, const Subdivision& I, int depth) {
  if (depth < 0) throw DomainError("compose_dyadic: negative depth");
  auto pts = std::make_shared<const std::vector<double>>(I.points());
  return ProbedMap(m->space_at(I.end()), m->space_at(I.start()), [m, pts, depth](std::span<Point> xs) {
    const auto& p = *pts;
    if (p.size() == 1) {
      m->apply(p[0], p[0], xs);
      return;
    }
    for (std::size_t j = p.size() - 1; j-- > 0;) apply_dyadic(*m, p[j], p[j + 1], depth, xs);
  });
}

SewResult sew(const FlowModelPtr& m, double s, double t, const SewOptions& options) {
  if (!(options.tol > 0.0)) throw DomainError("sew: tol must be positive");
  if (options.min_level < 0 || options.max_level < options.min_level)
    throw DomainError("sew: invalid level range");

  const HoelderData& h = m->hoelder();
  const double span = std::abs(t - s);
  const double eps = h.epsilon();
  const double g_span = h.growth(span);

  SewCertificate cert;
  cert.K = constant_K(h);
  cert.C_prime = cert.K * g_span;
  cert.claimed_bound = cert.C_prime * std::pow(span, 1.0 + eps);
  cert.conditional_on_declared_g = cert.K > 0.0;

  int level0 = options.min_level;
  while (span / std::ldexp(1.0, level0) > m->max_step()) ++level0;
  cert.start_level = level0;
  if (level0 > options.max_level)
    throw NonConvergence("sew: step limit of the model needs more than max_level refinements", cert);

  const Subdivision base = Subdivision::regular(s, t, std::size_t{1} << level0);
  const auto target = m->space_at(s);
  const auto& probes = m->space_at(t)->probes();
  const std::size_t np = probes.size();

  std::vector<Point> batch = probes;
  batch.push_back(options.reference.value_or(probes.front()));

  auto apriori = [&](double mesh_I) {
    return cert.K * g_span * h.growth(mesh_I) * std::pow(mesh_I, eps) * span;
  };

  std::vector<Point> previous;
  double previous_mesh = 0.0;
  int depth = 0;
  for (int level = level0;; ++level, ++depth) {
    const ProbedMap f = compose_dyadic(m, base, depth);
    std::vector<Point> images = batch;
    kernels::apply(f, images);

    const double mesh_now = span / std::ldexp(1.0, level);
    LevelRecord row{level, mesh_now, std::nullopt, std::nullopt, images.back()[0]};
    bool done = apriori(mesh_now) < options.tol;
    if (!previous.empty()) {
      const double d = kernels::max_pairwise_distance(
                           *target, std::span<const Point>(previous.data(), np),
                           std::span<const Point>(images.data(), np))
                           .as_double();
      const double bound = apriori(previous_mesh);
      row.successive_distance = d;
      row.bound = bound;
      if (!within(d, bound))
        cert.violations.push_back("level " + std::to_string(level) +
                                  fmt(": successive distance %.17g exceeds mesh-lemma bound %.17g", d, bound));
      done = done || d < options.tol;
    }
    cert.level_log.push_back(row);
    cert.final_level = level;

    if (done) {
      const double r = std::pow(2.0, -eps);
      cert.tail_estimate = row.successive_distance ? *row.successive_distance * r / (1.0 - r)
                                                   : apriori(mesh_now);
      if (span <= m->max_step()) {
        std::vector<Point> direct(probes);
        m->apply(s, t, direct);
        const double d = kernels::max_pairwise_distance(*target, direct,
                                                        std::span<const Point>(images.data(), np))
                             .as_double();
        cert.mu_flow_distance = d;
        if (!within(d, cert.claimed_bound))
          cert.violations.push_back(
              fmt("d(mu_st, composite) = %.17g exceeds K g |t-s|^{1+eps} = %.17g", d, cert.claimed_bound));
      }
      cert.converged = true;
      return SewResult{f, std::move(cert), base};
    }
    if (level == options.max_level) break;
    previous = std::move(images);
    previous_mesh = mesh_now;
  }
  throw NonConvergence("sew: max_level " + std::to_string(options.max_level) +
                           " reached before tolerance",
                       std::move(cert));
}

double flow_law_defect(const FlowModelPtr& m, double s, double u, double t,
                       const SewOptions& options) {
  const auto st = sew(m, s, t, options);
  const auto su = sew(m, s, u, options);
  const auto ut = sew(m, u, t, options);
  return map_distance(st.flow, compose(su.flow, ut.flow)).as_double();
}

BoundCheck inverse_defect(const FlowModelPtr& m, double s, double t, std::size_t k) {
  if (k == 0) throw DomainError("inverse_defect: k must be positive");
  const HoelderData& h = m->hoelder();
  const Subdivision I = Subdivision::regular(s, t, k);
  const ProbedMap round_trip = compose(compose_along(m, I), compose_along(m, reverse(I)));
  const double lhs = map_distance(round_trip, ProbedMap::identity(m->space_at(s))).as_double();
  const double span = std::abs(t - s);
  const double kk = static_cast<double>(k);
  const double rhs = h.growth(span) * kk * h.sum_C() * std::pow(span / kk, 1.0 + h.epsilon());
  return {lhs, rhs};
}

BoundCheck mesh_lemma_check(const FlowModelPtr& m, const Subdivision& I, const Subdivision& J) {
  if (I.start() != J.start() || I.end() != J.end() || !J.refines(I))
    throw SubdivisionError("mesh_lemma_check: J does not refine I");
  const HoelderData& h = m->hoelder();
  const double lhs = map_distance(compose_along(m, I), compose_along(m, J)).as_double();
  const double span = std::abs(I.end() - I.start());
  const double mI = mesh(I);
  const double rhs =
      constant_K(h) * h.growth(span) * h.growth(mI) * std::pow(mI, h.epsilon()) * span;
  return {lhs, rhs};
}

BoundCheck three_point_defect(const FlowModelPtr& m, double s, double u, double t) {
  const double lhs = map_distance(mu(m, s, t), compose(mu(m, s, u), mu(m, u, t))).as_double();
  return {lhs, m->hoelder().three_point_bound(std::abs(t - u), std::abs(u - s))};
}

BoundCheck four_point_defect(const FlowModelPtr& m, double s, double u, double v, double t) {
  if (u == v) return {0.0, 0.0};
  const double lhs =
      map_distance(compose(mu(m, s, u), mu(m, u, t)), compose(mu(m, s, v), mu(m, v, t))).as_double();
  return {lhs, m->hoelder().four_point_bound(std::abs(u - s), std::abs(u - v), std::abs(t - v))};
}

}  // namespace sewkit
