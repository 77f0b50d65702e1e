#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "sewkit/errors.hpp"
#include "sewkit/kernels.hpp"
#include "sewkit/metric.hpp"

using namespace sewkit;

namespace {

SpacePtr line(std::vector<double> xs) {
  std::vector<Point> ps;
  for (double x : xs) ps.push_back(Point{x});
  return MetricSpace::euclidean(1, std::move(ps));
}

ProbedMap scalar(const SpacePtr& s, std::function<double(double)> f) {
  return ProbedMap::pointwise(s, s, [f](const Point& p) { return Point{f(p[0])}; });
}

}  // namespace

TEST_CASE("ExtDistance saturates and orders infinity last") {
  const auto inf = ExtDistance::infinite();
  const auto one = ExtDistance::finite(1.0);
  CHECK((one + inf).is_infinite());
  CHECK((one + one).value() == 2.0);
  CHECK(one < inf);
  CHECK(max(one, inf) == inf);
  CHECK(ExtDistance::finite(HUGE_VAL).is_infinite());
  CHECK_THROWS_AS(ExtDistance::finite(-1.0), DomainError);
  CHECK_THROWS_AS(inf.value(), DomainError);
  CHECK(one.to_string() == "1");
  CHECK(inf.to_string() == "inf");
}

TEST_CASE("MetricSpace needs probes") {
  CHECK_THROWS_AS(MetricSpace::euclidean(1, {}), DomainError);
}

TEST_CASE("map_distance") {
  const auto s01 = line({0, 1});
  CHECK(map_distance(scalar(s01, [](double x) { return x; }), scalar(s01, [](double x) { return x; })).value() == 0.0);
  CHECK(map_distance(scalar(s01, [](double x) { return x; }), scalar(s01, [](double x) { return x + 3; })).value() == 3.0);
  const auto s3 = line({0, 0.5, 1});
  CHECK(map_distance(scalar(s3, [](double x) { return x * x; }), scalar(s3, [](double x) { return x; })).value() == 0.25);

  const auto other = MetricSpace::euclidean(2, {Point{0, 0}});
  CHECK_THROWS_AS(map_distance(ProbedMap::identity(s01), ProbedMap::identity(other)), DomainMismatch);
}

TEST_CASE("lipschitz_estimate") {
  CHECK(lipschitz_estimate(ProbedMap::identity(line({0, 1, 2}))) == 1.0);
  CHECK(lipschitz_estimate(scalar(line({0, 1}), [](double x) { return 3 * x; })) == 3.0);
  const double pi = std::numbers::pi;
  const double est = lipschitz_estimate(scalar(line({0, pi / 2, pi}), [](double x) { return std::sin(x); }));
  CHECK(est == doctest::Approx(2 / pi).epsilon(1e-15));
  CHECK_THROWS_AS(lipschitz_estimate(ProbedMap::identity(line({1, 1}))), InsufficientProbes);
}

TEST_CASE("composition bounds") {
  CHECK(composition_distance_bound(0, 1, 0) == 0.0);
  CHECK(composition_distance_bound(0.1, 2, 0.05) == doctest::Approx(0.2));
  CHECK_THROWS_AS(composition_distance_bound(-1, 1, 0), DomainError);
  const std::vector<double> gaps{0.1, 0.2, 0.3}, lips{1, 1, 1};
  CHECK(composition_chain_bound(gaps, lips) == doctest::Approx(0.6));
  const std::vector<double> lips2{2, 3, 4};
  CHECK(composition_chain_bound(gaps, lips2) == doctest::Approx(0.1 + 2 * 0.2 + 6 * 0.3));
}

TEST_CASE("path_length") {
  const auto plane = MetricSpace::euclidean(2, {Point{0, 0}});
  std::vector<Point> one{Point{3, 4}};
  CHECK(path_length(one, *plane).value() == 0.0);
  std::vector<Point> ell{Point{0, 0}, Point{1, 0}, Point{1, 1}};
  CHECK(path_length(ell, *plane).value() == 2.0);
  std::vector<Point> circ;
  for (int i = 0; i <= 4; ++i) {
    const double a = i * std::numbers::pi / 2;
    circ.push_back(Point{std::cos(a), std::sin(a)});
  }
  CHECK(path_length(circ, *plane).value() == doctest::Approx(5.656854249492380).epsilon(1e-14));
  CHECK_THROWS_AS(path_length(std::vector<Point>{}, *plane), DomainError);
}

TEST_CASE("property: map_distance is a pseudo-metric and composition bound holds") {
  oracle::Rng rng(7);
  const auto s = MetricSpace::euclidean(1, [] {
    std::vector<Point> ps;
    for (int i = -10; i <= 10; ++i) ps.push_back(Point{i / 10.0});
    return ps;
  }());
  for (int trial = 0; trial < 200; ++trial) {
    // affine maps x -> a x + b with analytically known Lipschitz constant |a|;
    // g and g2 share their slope so d(g, g2) = |b2 - b3| off the probes too
    double a[4], b[4];
    for (int i = 0; i < 4; ++i) {
      a[i] = rng.uniform(-2, 2);
      b[i] = rng.uniform(-1, 1);
    }
    a[3] = a[2];
    auto aff = [&](int i) { return scalar(s, [A = a[i], B = b[i]](double x) { return A * x + B; }); };
    const auto f = aff(0), f2 = aff(1), g = aff(2), g2 = aff(3);
    const double dfg = map_distance(f, g).value();
    CHECK(dfg == map_distance(g, f).value());
    CHECK(map_distance(f, f).value() == 0.0);
    CHECK(dfg <= map_distance(f, f2).value() + map_distance(f2, g).value() + 1e-15);
    const double lhs = map_distance(compose(g, f), compose(g2, f2)).value();
    CHECK(lhs <= composition_distance_bound(map_distance(g, g2).value(), std::abs(a[3]),
                                            map_distance(f, f2).value()) + 1e-14);
  }
}

TEST_CASE("property: path_length grows under refinement") {
  const auto plane = MetricSpace::euclidean(2, {Point{0, 0}});
  auto curve = [](double u) { return Point{std::cos(3 * u), std::sin(5 * u)}; };
  double previous = 0.0;
  for (int n = 1; n <= 256; n *= 2) {
    std::vector<Point> samples;
    for (int i = 0; i <= n; ++i) samples.push_back(curve(static_cast<double>(i) / n));
    const double len = path_length(samples, *plane).value();
    CHECK(len >= previous);
    previous = len;
  }
}

TEST_CASE("parallel kernels agree with serial twins bit for bit") {
  const auto s = MetricSpace::euclidean(2, grid_probes(2, 1.0, 9));
  const auto f = ProbedMap::pointwise(s, s, [](const Point& p) { return Point{std::sin(p[0]) * p[1], p[0] + p[1] * p[1]}; });
  const auto g = ProbedMap::pointwise(s, s, [](const Point& p) { return Point{p[0] * 1.1, p[1] - 0.3}; });
  std::vector<Point> a = s->probes(), b = s->probes();
  kernels::apply(f, a);
  kernels::serial::apply(f, b);
  CHECK(a == b);
  CHECK(map_distance(f, g) == kernels::serial::map_distance(f, g));
  std::vector<double> out1(100), out2(100);
  kernels::parallel_for(100, [&](std::size_t i) { out1[i] = std::exp(0.01 * i); });
  kernels::serial::parallel_for(100, [&](std::size_t i) { out2[i] = std::exp(0.01 * i); });
  CHECK(out1 == out2);
  CHECK(kernels::thread_count() >= 1);
}

TEST_CASE("probe generators") {
  const auto g = grid_probes(2, 1.0, 3);
  CHECK(g.size() == 9);
  CHECK(g.front() == Point{-1, -1});
  CHECK(g.back() == Point{1, 1});
  const auto c = circle_probes(4, 2.0);
  CHECK(c.size() == 4);
  CHECK(c[0] == Point{2, 0});
  CHECK(norm(c[3]) == doctest::Approx(2.0));
}
