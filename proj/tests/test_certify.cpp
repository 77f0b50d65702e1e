#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "sewkit/certify.hpp"
#include "sewkit/errors.hpp"
#include "sewkit/models.hpp"
#include "sewkit/path.hpp"

using namespace sewkit;

TEST_CASE("three-point fit: additive sine") {
  const auto m = make_riemann_additive({ScalarFunction::sine()});
  const auto r = fit_three_point(m, default_three_point_samples(0, 1, 40, 1));
  CHECK(r.eps_hat >= 0.9);
  CHECK(r.eps_hat <= 1.1);
  CHECK(r.c_hat <= 1.1);
  CHECK(r.bound_violations == 0);
  CHECK_FALSE(r.exact);
}

TEST_CASE("three-point fit: Young with x = y = t has defect (u-s)(t-u)") {
  const auto id = ScalarFunction::polynomial({0, 1});
  const auto r = fit_three_point(make_young(id, id, 1, 1), default_three_point_samples(0, 1, 30, 2));
  CHECK(r.eps_hat == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.c_hat == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(r.rms_residual < 1e-6);
}

TEST_CASE("three-point fit: rough Young model") {
  const auto m = make_young(ScalarFunction::power(0.6), ScalarFunction::power(0.7), 0.6, 0.7);
  // at the singular point the defect is h^0.7 ((2h)^0.6 - h^0.6), of degree 1.3 in h
  std::vector<std::array<double, 3>> samples;
  for (int i = 0; i < 30; ++i) {
    const double h = 1e-4 * std::pow(10.0, 3.0 * i / 29);
    samples.push_back({0.0, h, 2 * h});
  }
  const auto r = fit_three_point(m, samples);
  CHECK(r.bound_violations == 0);
  CHECK(r.eps_hat == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(fit_three_point(m, default_three_point_samples(0, 1, 40, 5)).bound_violations == 0);
}

TEST_CASE("three-point fit: Euler") {
  const auto m = make_linear_euler({0.0, 1.0, -1.0, 0.0}, {0.0, 0.0}, 2);
  const auto r = fit_three_point(m, default_three_point_samples(0, 1, 40, 3));
  CHECK(std::abs(r.eps_hat - 1.0) <= 0.15);
  CHECK(r.bound_violations == 0);
}

TEST_CASE("three-point fit: exact model") {
  const auto g = LipPath::arc(Point{0.0, 0.0}, 1.0, 0.0, std::numbers::pi, 16);
  const auto m = pullback_flow(make_flat_connection(ConnectionRule::exact_segment), g);
  const auto r = fit_three_point(m, default_three_point_samples(0, 0.05, 25, 4));
  CHECK(r.exact);
  CHECK(r.note.find("exact model") != std::string::npos);
  CHECK(r.used == 0);
}

TEST_CASE("three-point fit preconditions") {
  const auto m = make_riemann_additive({ScalarFunction::sine()});
  CHECK_THROWS_AS(fit_three_point(m, default_three_point_samples(0, 1, 10, 1)), DomainError);
  std::vector<std::array<double, 3>> narrow;
  for (int i = 0; i < 25; ++i) narrow.push_back({0.1 * i / 25, 0.1 * i / 25 + 0.01, 0.1 * i / 25 + 0.02});
  CHECK_THROWS_AS(fit_three_point(m, narrow), DomainError);
  std::vector<std::array<double, 3>> outside(25, {0.0, 0.5, 0.2});
  CHECK_THROWS_AS(fit_three_point(m, outside), DomainError);
}

TEST_CASE("four-point fit: midpoint flat connection has degree 3") {
  const auto m = make_flat_connection(ConnectionRule::midpoint);
  const auto r = fit_strong_four_point(m, default_four_point_samples(m, 40, 7));
  CHECK(std::abs(r.eps_hat - 1.0) <= 0.15);
  CHECK_FALSE(r.sewing_only);
  CHECK(r.bound_violations == 0);
  const auto& last = r.samples.back();
  CHECK(last.kind == FitSample::Kind::consistency);
  CHECK(last.defect == 0.0);
}

TEST_CASE("four-point fit: lifted Euler only meets the sewing estimate") {
  const auto m = lift_to_parameter_space(make_linear_euler({1.0}, {0.0}, 1));
  const auto r = fit_strong_four_point(m, default_four_point_samples(m, 40, 8));
  CHECK(r.sewing_only);
  CHECK(r.eps_hat < 0.25);
  CHECK(r.note.find("sewing-only") != std::string::npos);
}

TEST_CASE("four-point fit: exact connection") {
  const auto m = make_flat_connection(ConnectionRule::exact_segment);
  const auto r = fit_strong_four_point(m, default_four_point_samples(m, 30, 9));
  CHECK(r.exact);
  CHECK(r.samples.back().kind == FitSample::Kind::consistency);
}

TEST_CASE("sample generators are deterministic and stay in the domain") {
  CHECK(default_three_point_samples(0, 1, 20, 3) == default_three_point_samples(0, 1, 20, 3));
  CHECK(default_three_point_samples(0, 1, 20, 3) != default_three_point_samples(0, 1, 20, 4));
  for (const auto& [s, u, t] : default_three_point_samples(0.2, 0.7, 50, 11)) {
    CHECK(s >= 0.2);
    CHECK(t <= 0.7);
    CHECK(s < u);
    CHECK(u < t);
  }
  const auto m = make_flat_connection(ConnectionRule::midpoint);
  for (const auto& q : default_four_point_samples(m, 50, 12))
    for (const auto& p : q) CHECK(m->in_domain(p));
}

TEST_CASE("fit CSV") {
  const auto m = make_riemann_additive({ScalarFunction::sine()});
  const auto r = fit_three_point(m, default_three_point_samples(0, 1, 20, 1));
  std::stringstream ss;
  write_fit_csv(ss, r);
  std::string line;
  std::getline(ss, line);
  CHECK(line == "row,index,gap_a,gap_b,q,defect,bound,residual,eps_hat,c_hat");
  std::size_t rows = 0;
  std::string last;
  while (std::getline(ss, line)) {
    ++rows;
    last = line;
  }
  CHECK(rows == 21);
  CHECK(last.rfind("fit,20,", 0) == 0);
}
