#include "sewkit/hoelder.hpp"

#include <array>
#include <cmath>

#include "sewkit/errors.hpp"

namespace sewkit {

HoelderData::HoelderData(double epsilon, std::vector<DefectTerm> terms, double lip_slope,
                         DefectMode mode, Growth growth)
    : epsilon_(epsilon),
      terms_(std::move(terms)),
      lip_slope_(lip_slope),
      mode_(mode),
      growth_(std::move(growth)),
      declared_growth_(static_cast<bool>(growth_)) {
  if (!(epsilon_ > 0.0)) throw InadmissibleRegularity("HoelderData: epsilon must be positive");
  if (terms_.empty()) throw InadmissibleRegularity("HoelderData: at least one defect term");
  if (!(lip_slope_ >= 0.0)) throw InadmissibleRegularity("HoelderData: L must be non-negative");
  const double degree = (mode_ == DefectMode::sewing ? 1.0 : 2.0) + epsilon_;
  for (const auto& term : terms_) {
    if (!(term.a > 0.0) || !(term.b > 0.0))
      throw InadmissibleRegularity("HoelderData: exponents must be positive");
    if (!(term.C >= 0.0)) throw InadmissibleRegularity("HoelderData: constants must be non-negative");
    if (std::abs(term.a + term.b - degree) > 1e-9)
      throw InadmissibleRegularity("HoelderData: a_i + b_i does not match the defect mode");
  }
  if (!growth_) {
    const double L = lip_slope_;
    growth_ = [L](double l) { return std::exp(L * l); };
  }
  double previous = growth_(0.0);
  if (!(previous >= 1.0)) throw InadmissibleRegularity("HoelderData: g(0) must be >= 1");
  for (double x : {1e-6, 1e-3, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0}) {
    const double v = growth_(x);
    if (v < previous) throw InadmissibleRegularity("HoelderData: g must be non-decreasing");
    previous = v;
  }
}

double HoelderData::sum_C() const {
  double s = 0.0;
  for (const auto& term : terms_) s += term.C;
  return s;
}

double HoelderData::three_point_bound(double dist_tu, double dist_us) const {
  double s = 0.0;
  for (const auto& term : terms_) s += term.C * std::pow(dist_tu, term.a) * std::pow(dist_us, term.b);
  return s;
}

double HoelderData::four_point_bound(double dist_su, double dist_uv, double dist_vt) const {
  double first = 0.0;
  double second = 0.0;
  for (const auto& term : terms_) {
    first += term.C * std::pow(dist_vt, term.a) * std::pow(dist_uv, term.b);
    second += term.C * std::pow(dist_su, term.b) * std::pow(dist_uv, term.a);
  }
  return (1.0 + lip_slope_ * dist_su) * first + second;
}

namespace {

// B_{2k} / (2k)! for k = 1..8.
constexpr std::array<double, 8> kBernoulliOverFactorial = {
    1.0 / 6.0 / 2.0,
    -1.0 / 30.0 / 24.0,
    1.0 / 42.0 / 720.0,
    -1.0 / 30.0 / 40320.0,
    5.0 / 66.0 / 3628800.0,
    -691.0 / 2730.0 / 479001600.0,
    7.0 / 6.0 / 87178291200.0,
    -3617.0 / 510.0 / 20922789888000.0,
};

// Euler-Maclaurin tail sum_{l >= n} l^{-s} using the first `terms` Bernoulli
// corrections; also returns the magnitude of the next correction.
double em_tail(double s, double n, std::size_t terms, double& next_term) {
  double tail = std::pow(n, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(n, -s);
  double rising = s;  // s (s+1) ... (s+2k-2)
  for (std::size_t k = 1; k <= terms + 1; ++k) {
    const double term = kBernoulliOverFactorial[k - 1] * rising * std::pow(n, -s - 2.0 * k + 1.0);
    if (k == terms + 1) {
      next_term = std::abs(term);
      break;
    }
    tail += term;
    rising *= (s + 2.0 * k - 1.0) * (s + 2.0 * k);
  }
  return tail;
}

}  // namespace

double zeta(double s, double tol) {
  if (!(s > 1.0)) throw DomainError("zeta: diverges for s <= 1");
  if (!(tol > 0.0)) throw DomainError("zeta: tolerance must be positive");
  constexpr std::size_t corrections = 7;
  for (double n = 8.0;; n *= 2.0) {
    double next = 0.0;
    const double tail = em_tail(s, n, corrections, next);
    if (next < tol || n > 1e7) {
      double head = 0.0;
      // Smallest terms first.
      for (double l = n - 1.0; l >= 1.0; l -= 1.0) head += std::pow(l, -s);
      return head + tail;
    }
  }
}

double constant_K(const HoelderData& h) {
  const double sum = h.sum_C();
  if (sum == 0.0) return 0.0;
  const double eps = h.epsilon();
  const double z = h.mode() == DefectMode::sewing ? zeta(1.0 + eps) : zeta(2.0 + eps);
  return std::pow(2.0, 1.0 + eps) * sum * z;
}

double constant_C_prime(const HoelderData& h, double span) {
  return constant_K(h) * h.growth(std::abs(span));
}

double knitting_c_prime(const HoelderData& h, double path_lip, double span) {
  if (h.mode() != DefectMode::knitting)
    throw ModeError("knitting_c_prime: requires knitting-mode data");
  const double sum = h.sum_C();
  if (sum == 0.0) return 0.0;
  const double eps = h.epsilon();
  return std::pow(2.0, 1.0 + eps) * std::exp(h.lip_slope() * path_lip * std::abs(span)) * sum *
         zeta(2.0 + eps);
}

}  // namespace sewkit
