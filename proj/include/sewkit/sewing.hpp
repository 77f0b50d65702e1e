#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sewkit/errors.hpp"
#include "sewkit/flow_model.hpp"
#include "sewkit/subdivision.hpp"

namespace sewkit {

/// Absolute allowance for floating-point rounding in measured-vs-bound checks.
inline constexpr double kProbeSlack = 1e-11;

/// mu_{t0 t1} o mu_{t1 t2} o ... o mu_{t_{k-1} t_k}; mu_st itself for the
/// trivial subdivision.
ProbedMap compose_along(const FlowModelPtr& m, const Subdivision& I);

/// compose_along(m, dyadic_refine^depth(I)) without materialising the
/// refined point list. Bit-identical to the explicit form.
ProbedMap compose_dyadic(const FlowModelPtr& m, const Subdivision& I, int depth);

struct LevelRecord {
  int level;
  double mesh;
  std::optional<double> successive_distance;  // to the previous level, on probes
  std::optional<double> bound;                // mesh-lemma bound for that pair
  double value;                               // first coordinate at the reference point
};

struct SewCertificate {
  double K = 0.0;
  double C_prime = 0.0;        // K g(|t-s|)
  double claimed_bound = 0.0;  // K g(|t-s|) |t-s|^{1+eps}
  // d(mu_st, finest composite) on probes; empty when |t-s| exceeds the model's max_step
  std::optional<double> mu_flow_distance;
  double tail_estimate = 0.0;     // geometric tail from the finest level to the limit
  std::vector<LevelRecord> level_log;
  int start_level = 0;
  int final_level = 0;
  bool converged = false;
  bool conditional_on_declared_g = true;
  std::vector<std::string> violations;

  bool bounds_hold() const { return violations.empty(); }
};

struct SewOptions {
  double tol = 1e-8;
  int max_level = 30;
  int min_level = 0;
  std::optional<Point> reference;  // defaults to the first probe of M_t
};

struct SewResult {
  ProbedMap flow;  // composite over the finest level
  SewCertificate certificate;
  Subdivision base;  // regular subdivision the refinement started from
};

/// Raised when max_level is reached before the stopping rule fires.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, SewCertificate certificate)
      : Error(what), certificate_(std::move(certificate)) {}
  const SewCertificate& certificate() const { return certificate_; }

 private:
  SewCertificate certificate_;
};

/// Dyadic refinement of the regular subdivision of [s, t] until successive
/// composites are within `tol` on probes, or the a-priori mesh-lemma bound
/// drops below `tol`.
SewResult sew(const FlowModelPtr& m, double s, double t, const SewOptions& options = {});

/// A measured distance and the bound the theory puts on it.
struct BoundCheck {
  double lhs;
  double rhs;
  bool holds() const;
};

/// d(sew(s,t), sew(s,u) o sew(u,t)).
double flow_law_defect(const FlowModelPtr& m, double s, double u, double t,
                       const SewOptions& options = {});

/// d(mu^{I_k} o mu^{reverse I_k}, id) against g(|t-s|) k (sum C) (|t-s|/k)^{1+eps}.
BoundCheck inverse_defect(const FlowModelPtr& m, double s, double t, std::size_t k);

/// d(mu^I, mu^J) for J finer than I, against K g(|t-s|) g(mesh I) mesh(I)^eps |t-s|.
BoundCheck mesh_lemma_check(const FlowModelPtr& m, const Subdivision& I, const Subdivision& J);

/// d(mu_st, mu_su o mu_ut) against the declared three-point bound.
BoundCheck three_point_defect(const FlowModelPtr& m, double s, double u, double t);

/// d(mu_su o mu_ut, mu_sv o mu_vt) against the four-point bound derived from
/// the three-point estimate; exactly (0, 0) when u == v.
BoundCheck four_point_defect(const FlowModelPtr& m, double s, double u, double v, double t);

}  // namespace sewkit
