#include "sewkit/models.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <utility>

#include "sewkit/errors.hpp"

namespace sewkit {

double ScalarFunction::hoelder_constant(double beta, double diameter) const {
  if (!(beta > 0.0) || beta > exponent + 1e-12)
    throw InadmissibleRegularity("hoelder_constant: exponent " + std::to_string(beta) +
                                 " exceeds the function's regularity");
  return constant * std::pow(diameter, exponent - beta);
}

ScalarFunction ScalarFunction::sine(double amplitude, double frequency, double phase) {
  return {[=](double t) { return amplitude * std::sin(frequency * t + phase); }, 1.0,
          std::abs(amplitude * frequency), "sin"};
}

ScalarFunction ScalarFunction::cosine(double amplitude, double frequency, double phase) {
  return {[=](double t) { return amplitude * std::cos(frequency * t + phase); }, 1.0,
          std::abs(amplitude * frequency), "cos"};
}

ScalarFunction ScalarFunction::polynomial(std::vector<double> coeffs, double radius) {
  if (coeffs.empty()) coeffs.push_back(0.0);
  double lip = 0.0;
  for (std::size_t k = 1; k < coeffs.size(); ++k)
    lip += static_cast<double>(k) * std::abs(coeffs[k]) * std::pow(radius, static_cast<double>(k - 1));
  return {[c = std::move(coeffs)](double t) {
            double v = 0.0;
            for (std::size_t k = c.size(); k-- > 0;) v = v * t + c[k];
            return v;
          },
          1.0, lip, "poly"};
}

ScalarFunction ScalarFunction::exponential(double rate, double radius) {
  return {[rate](double t) { return std::exp(rate * t); }, 1.0,
          std::abs(rate) * std::exp(std::abs(rate) * radius), "exp"};
}

ScalarFunction ScalarFunction::power(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) throw InadmissibleRegularity("power: alpha must lie in (0, 1]");
  return {[alpha](double t) { return std::copysign(std::pow(std::abs(t), alpha), t); }, alpha,
          std::pow(2.0, 1.0 - alpha), "power"};
}

namespace {

std::vector<Point> unit_probes(std::size_t dim) {
  Point e(dim);
  e[0] = 1.0;
  return {Point::zeros(dim), e};
}

class AdditiveModel final : public FlowModel {
 public:
  AdditiveModel(std::function<Point(double, double)> mu_tilde, std::size_t dim, HoelderData h,
                std::string name)
      : mu_tilde_(std::move(mu_tilde)),
        space_(MetricSpace::euclidean(dim, unit_probes(dim))),
        h_(std::move(h)),
        name_(std::move(name)) {}

  std::string name() const override { return name_; }
  SpacePtr space_at(double) const override { return space_; }
  const HoelderData& hoelder() const override { return h_; }

  void apply(double s, double t, std::span<Point> xs) const override {
    if (s == t) return;
    const Point shift = mu_tilde_(s, t);
    for (auto& x : xs) x += shift;
  }

 private:
  std::function<Point(double, double)> mu_tilde_;
  SpacePtr space_;
  HoelderData h_;
  std::string name_;
};

class EulerModel final : public FlowModel {
 public:
  using Field = std::function<void(const Point&, Point&)>;

  EulerModel(Field F, std::size_t dim, HoelderData h, std::vector<Point> probes, std::string name)
      : F_(std::move(F)),
        space_(MetricSpace::euclidean(dim, std::move(probes))),
        h_(std::move(h)),
        name_(std::move(name)) {}

  std::string name() const override { return name_; }
  SpacePtr space_at(double) const override { return space_; }
  const HoelderData& hoelder() const override { return h_; }

  void apply(double s, double t, std::span<Point> xs) const override {
    const double dt = t - s;
    Point f(space_->dim());
    for (auto& x : xs) {
      F_(x, f);
      for (std::size_t i = 0; i < x.dim(); ++i) x[i] += dt * f[i];
    }
  }

 private:
  Field F_;
  SpacePtr space_;
  HoelderData h_;
  std::string name_;
};

// Defect |mu_su mu_ut x - mu_st x| = |u-s| |F(x + (t-u)F(x)) - F(x)|
// <= Lambda |F(x)| |t-u||u-s|, and composites over an interval of length <= H
// keep |x| <= (R + |F(0)| H) e^{Lambda H}.
HoelderData euler_hoelder(double Lambda, double F0, double R, double H) {
  if (!(Lambda >= 0.0)) throw InadmissibleRegularity("make_euler: Lambda must be non-negative");
  const double reach = (R + F0 * H) * std::exp(Lambda * H);
  const double C = Lambda * (F0 + Lambda * reach);
  return HoelderData(1.0, {{1.0, 1.0, C}}, Lambda);
}

double max_norm(const std::vector<Point>& ps) {
  double r = 0.0;
  for (const auto& p : ps) r = std::max(r, norm(p));
  return r;
}

}  // namespace

FlowModelPtr make_additive(std::function<Point(double, double)> mu_tilde, std::size_t dim,
                           HoelderData hoelder, std::string name) {
  if (dim == 0) throw DomainError("make_additive: dimension must be positive");
  return std::make_shared<AdditiveModel>(std::move(mu_tilde), dim, std::move(hoelder), std::move(name));
}

FlowModelPtr make_riemann_additive(std::vector<ScalarFunction> h) {
  if (h.empty()) throw DomainError("make_riemann_additive: no components");
  double c2 = 0.0;
  for (const auto& f : h) {
    const double c = f.hoelder_constant(1.0);
    c2 += c * c;
  }
  const std::size_t dim = h.size();
  auto mu_tilde = [h = std::move(h)](double s, double t) {
    Point v(h.size());
    for (std::size_t i = 0; i < h.size(); ++i) v[i] = h[i](s) * (t - s);
    return v;
  };
  return make_additive(std::move(mu_tilde), dim,
                       HoelderData(1.0, {{1.0, 1.0, std::sqrt(c2)}}, 0.0, DefectMode::sewing,
                                   [](double) { return 1.0; }),
                       "additive");
}

FlowModelPtr make_euler(std::function<Point(const Point&)> F, double Lambda, std::size_t dim,
                        const EulerOptions& options) {
  auto probes = grid_probes(dim, options.probe_radius, options.probes_per_axis);
  const double F0 = norm(F(Point::zeros(dim)));
  auto h = euler_hoelder(Lambda, F0, max_norm(probes), options.horizon);
  return std::make_shared<EulerModel>([F = std::move(F)](const Point& x, Point& out) { out = F(x); },
                                      dim, std::move(h), std::move(probes), "euler");
}

FlowModelPtr make_linear_euler(std::vector<double> A, std::vector<double> b, std::size_t dim,
                               const EulerOptions& options) {
  if (A.size() != dim * dim) throw DomainError("make_linear_euler: A must be d x d");
  if (b.empty()) b.assign(dim, 0.0);
  if (b.size() != dim) throw DomainError("make_linear_euler: b must have d entries");
  double frob = 0.0;
  for (double a : A) frob += a * a;
  double F0 = 0.0;
  for (double v : b) F0 += v * v;
  auto probes = grid_probes(dim, options.probe_radius, options.probes_per_axis);
  auto h = euler_hoelder(std::sqrt(frob), std::sqrt(F0), max_norm(probes), options.horizon);
  auto field = [A = std::move(A), b = std::move(b), dim](const Point& x, Point& out) {
    for (std::size_t i = 0; i < dim; ++i) {
      double v = b[i];
      for (std::size_t j = 0; j < dim; ++j) v += A[i * dim + j] * x[j];
      out[i] = v;
    }
  };
  return std::make_shared<EulerModel>(std::move(field), dim, std::move(h), std::move(probes), "euler");
}

FlowModelPtr make_young(ScalarFunction x, ScalarFunction y, double alpha, double beta) {
  if (!(alpha > 0.0 && beta > 0.0) || alpha + beta <= 1.0)
    throw InadmissibleRegularity("make_young: need alpha, beta > 0 and alpha + beta > 1");
  const double C = x.hoelder_constant(alpha) * y.hoelder_constant(beta);
  HoelderData h(alpha + beta - 1.0, {{alpha, beta, C}}, 0.0, DefectMode::sewing,
                [](double) { return 1.0; });
  auto mu_tilde = [x = std::move(x), y = std::move(y)](double s, double t) {
    return Point{y(s) * (x(t) - x(s))};
  };
  return make_additive(std::move(mu_tilde), 1, std::move(h), "young");
}

}  // namespace sewkit
