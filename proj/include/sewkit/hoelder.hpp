#pragma once

#include <functional>
#include <vector>

namespace sewkit {

/// Sewing mode: a_i + b_i = 1 + eps (three-point estimate).
/// Knitting mode: a_i + b_i = 2 + eps (strong four-point estimate).
enum class DefectMode { sewing, knitting };

/// One defect term C |t-u|^a |u-s|^b.
struct DefectTerm {
  double a;
  double b;
  double C;
};

/// Declared regularity of an approximate flow: defect exponents and
/// constants, Lipschitz slope L (Lip mu_st <= 1 + L|t-s|) and growth g
/// (Lip of any composite over a subdivision of total length l is <= g(l)).
class HoelderData {
 public:
  using Growth = std::function<double(double)>;

  /// Validates the exponent relation for `mode`. Without `growth`,
  /// g(l) = exp(L l).
  HoelderData(double epsilon, std::vector<DefectTerm> terms, double lip_slope,
              DefectMode mode = DefectMode::sewing, Growth growth = {});

  double epsilon() const { return epsilon_; }
  const std::vector<DefectTerm>& terms() const { return terms_; }
  double lip_slope() const { return lip_slope_; }
  DefectMode mode() const { return mode_; }
  bool has_declared_growth() const { return declared_growth_; }

  double growth(double length) const { return growth_(length); }
  double sum_C() const;

  /// sum_i C_i |t-u|^{a_i} |u-s|^{b_i}.
  double three_point_bound(double dist_tu, double dist_us) const;

  /// (1 + L|u-s|) sum C_i |t-v|^{a_i} |u-v|^{b_i} + sum C_i |s-u|^{b_i} |u-v|^{a_i}.
  double four_point_bound(double dist_su, double dist_uv, double dist_vt) const;

 private:
  double epsilon_;
  std::vector<DefectTerm> terms_;
  double lip_slope_;
  DefectMode mode_;
  Growth growth_;
  bool declared_growth_;
};

/// Riemann zeta for s > 1 to absolute accuracy `tol`.
double zeta(double s, double tol = 1e-12);

/// K = 2^{1+eps} (sum C_i) zeta(1+eps); knitting-mode data uses zeta(2+eps).
double constant_K(const HoelderData& h);

/// C' = K g(|t-s|).
double constant_C_prime(const HoelderData& h, double span);

/// Holonomy constant for strongly approximate actions:
/// 2^{1+eps} exp(L Lip(gamma) |t-s|) (sum C_i) zeta(2+eps).
double knitting_c_prime(const HoelderData& h, double path_lip, double span);

}  // namespace sewkit
