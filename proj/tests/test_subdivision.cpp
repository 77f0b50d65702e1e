#include <doctest.h>

#include "oracles.hpp"
#include "sewkit/errors.hpp"
#include "sewkit/subdivision.hpp"

using namespace sewkit;

namespace {

Subdivision random_subdivision(oracle::Rng& rng, double s, double t, std::size_t k) {
  std::vector<double> w(k);
  double total = 0.0;
  for (auto& x : w) total += (x = rng.uniform(0.05, 1.0));
  std::vector<double> pts{s};
  double acc = 0.0;
  for (std::size_t j = 0; j + 1 < k; ++j) {
    acc += w[j];
    pts.push_back(s + (t - s) * acc / total);
  }
  pts.push_back(t);
  return Subdivision(pts);
}

}  // namespace

TEST_CASE("construction and validation") {
  CHECK(Subdivision::trivial(0, 1).points() == std::vector<double>{0, 1});
  CHECK(Subdivision::trivial(2, 2).points() == std::vector<double>{2});
  CHECK(Subdivision({1, 0.5, 0}).intervals() == 2);
  CHECK_THROWS_AS(Subdivision({0, 0.7, 0.5, 1}), SubdivisionError);
  CHECK_THROWS_AS(Subdivision({0, 0, 1}), SubdivisionError);
  CHECK_THROWS_AS(Subdivision(std::vector<double>{}), SubdivisionError);
}

TEST_CASE("mesh") {
  CHECK(mesh(Subdivision::trivial(0, 1)) == 1.0);
  CHECK(mesh(Subdivision({0, 0.25, 0.5, 1})) == 0.5);
  CHECK(mesh(Subdivision::regular(0, 1, 8)) == 0.125);
  CHECK(mesh(Subdivision::trivial(3, 3)) == 0.0);
}

TEST_CASE("dyadic_refine") {
  CHECK(dyadic_refine(Subdivision({0, 1})).points() == std::vector<double>{0, 0.5, 1});
  CHECK(dyadic_refine(Subdivision({0, 0.5, 1})).points() == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
  const auto I = Subdivision::regular(0, 1, 6);
  const auto J = dyadic_refine(I);
  CHECK(mesh(J) <= mesh(I) / 2);
  CHECK(J.refines(I));
  CHECK(dyadic_refine(Subdivision::trivial(1, 1)) == Subdivision::trivial(1, 1));
}

TEST_CASE("joint") {
  const Subdivision I({0, 0.5, 1}), J({0, 0.25, 1});
  CHECK(joint(I, I) == I);
  CHECK(joint(I, J).points() == std::vector<double>{0, 0.25, 0.5, 1});
  CHECK(mesh(joint(I, J)) <= std::min(mesh(I), mesh(J)));
  CHECK_THROWS_AS(joint(I, Subdivision({0, 2})), SubdivisionError);
  const Subdivision R({1, 0.5, 0}), R2({1, 0.8, 0});
  CHECK(joint(R, R2).points() == std::vector<double>{1, 0.8, 0.5, 0});
}

TEST_CASE("coarsen_minimal_pair") {
  const auto c = coarsen_minimal_pair(Subdivision({0, 0.1, 0.9, 1}));
  CHECK(c.result.points() == std::vector<double>{0, 0.9, 1});
  CHECK(c.removed_index == 1);
  CHECK(c.removed_pair_sum == doctest::Approx(0.9));
  const auto r = coarsen_minimal_pair(Subdivision::regular(0, 1, 4));
  CHECK(r.result.points() == std::vector<double>{0, 0.5, 0.75, 1});
  CHECK_THROWS_AS(coarsen_minimal_pair(Subdivision::trivial(0, 1)), SubdivisionError);
}

TEST_CASE("reverse and concatenate") {
  const Subdivision I({0, 0.5, 1});
  CHECK(reverse(I).points() == std::vector<double>{1, 0.5, 0});
  CHECK(reverse(reverse(I)) == I);
  CHECK(mesh(reverse(I)) == mesh(I));
  CHECK(concatenate(Subdivision({0, 0.5}), Subdivision({0.5, 0.7, 1})).points() ==
        std::vector<double>{0, 0.5, 0.7, 1});
}

TEST_CASE("property: coarsening bound and termination") {
  oracle::Rng rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t k = 2 + rng.below(30);
    Subdivision I = random_subdivision(rng, 0, 1, k);
    std::size_t steps = 0;
    while (!I.is_trivial()) {
      const std::size_t kk = I.intervals();
      const auto c = coarsen_minimal_pair(I);
      CHECK(c.removed_pair_sum <= 2.0 / static_cast<double>(kk - 1) + 1e-15);
      CHECK(I.refines(c.result));
      I = c.result;
      ++steps;
    }
    CHECK(steps == k - 1);
  }
}

TEST_CASE("property: joint is the least upper bound") {
  oracle::Rng rng(12);
  for (int trial = 0; trial < 300; ++trial) {
    const auto I = random_subdivision(rng, 0, 1, 1 + rng.below(10));
    const auto J = random_subdivision(rng, 0, 1, 1 + rng.below(10));
    const auto U = joint(I, J);
    CHECK(U.refines(I));
    CHECK(U.refines(J));
    CHECK(U.refines(U));
    CHECK(joint(I, J) == joint(J, I));
    // any common refinement refines the joint
    const auto W = joint(dyadic_refine(U), I);
    CHECK(W.refines(U));
    if (U.refines(I) && I.refines(U)) CHECK(U == I);
    CHECK(U.intervals() <= I.intervals() + J.intervals());
  }
}
