#pragma once

#include <functional>
#include <string>
#include <vector>

#include "sewkit/flow_model.hpp"

namespace sewkit {

/// A real function of one variable with a declared Hoelder bound
/// |f(t) - f(s)| <= constant |t - s|^exponent on the working domain.
struct ScalarFunction {
  std::function<double(double)> f;
  double exponent = 1.0;
  double constant = 0.0;
  std::string description;

  double operator()(double t) const { return f(t); }

  /// Constant for a smaller exponent beta on a domain of the given diameter.
  double hoelder_constant(double beta, double diameter = 1.0) const;

  static ScalarFunction sine(double amplitude = 1.0, double frequency = 1.0, double phase = 0.0);
  static ScalarFunction cosine(double amplitude = 1.0, double frequency = 1.0, double phase = 0.0);
  /// sum_k c_k t^k; Lipschitz constant taken on [-radius, radius].
  static ScalarFunction polynomial(std::vector<double> coeffs, double radius = 1.0);
  static ScalarFunction exponential(double rate, double radius = 1.0);
  /// sign(t) |t|^alpha, alpha in (0, 1]; alpha-Hoelder with constant 2^{1-alpha}.
  static ScalarFunction power(double alpha);
};

/// mu_st = translation by mu_tilde(s, t) on R^d.
/// Requires mu_tilde(t, t) = 0.
FlowModelPtr make_additive(std::function<Point(double, double)> mu_tilde, std::size_t dim,
                           HoelderData hoelder, std::string name = "additive");

/// mu_tilde(s, t) = h(s) (t - s) componentwise; C = |Lip h|, eps = 1, L = 0.
FlowModelPtr make_riemann_additive(std::vector<ScalarFunction> h);

struct EulerOptions {
  double probe_radius = 1.0;
  std::size_t probes_per_axis = 3;
  double horizon = 1.0;  // longest interval the declared constants must cover
};

/// mu_st(x) = x + (t - s) F(x) for F with Lipschitz constant Lambda.
FlowModelPtr make_euler(std::function<Point(const Point&)> F, double Lambda, std::size_t dim,
                        const EulerOptions& options = {});

/// Linear field F(x) = A x + b, with A row-major d x d; Lambda is the
/// Frobenius norm of A.
FlowModelPtr make_linear_euler(std::vector<double> A, std::vector<double> b, std::size_t dim,
                               const EulerOptions& options = {});

/// Translation by y(s)(x(t) - x(s)) on R, a = alpha, b = beta.
/// Throws InadmissibleRegularity unless alpha + beta > 1.
FlowModelPtr make_young(ScalarFunction x, ScalarFunction y, double alpha, double beta);

}  // namespace sewkit
