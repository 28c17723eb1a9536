#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "qst/unit.hpp"

using namespace qst;

TEST_SUITE("unit-protocols") {

TEST_CASE("protocol vectors") {
  const auto p = unit_protocols();
  CHECK(p[0].name == "TP");
  CHECK(p[0].vector == RateTriple{-2, 1, -1});
  CHECK(p[1].vector == RateTriple{2, -1, -1});
  CHECK(p[2].vector == RateTriple{0, -1, 1});
}

TEST_CASE("region membership examples") {
  const auto u = unit_region();
  CHECK(contains(u, {0, 0, 0}));
  CHECK(contains(u, {-2, 0, 0}));
  CHECK_FALSE(contains(u, {0, 0, 1}));
  REQUIRE(u.points().size() == 1);
  CHECK(u.rays().size() == 3);
}

TEST_CASE("coefficients") {
  auto w = unit_coefficients(kTeleportation);
  CHECK(w.tp == doctest::Approx(1.0));
  CHECK(w.sd == doctest::Approx(0.0));
  CHECK(w.ed == doctest::Approx(0.0));
  w = unit_coefficients({0, 0, -2});
  CHECK(w.tp == doctest::Approx(1.0));
  CHECK(w.sd == doctest::Approx(1.0));
  CHECK(w.ed == doctest::Approx(0.0));
  CHECK(unit_coefficients({0, 0, 0}).feasible());
  CHECK_FALSE(unit_coefficients({0, 0, 1}).feasible());
}

TEST_CASE("coefficients match an independent 3x3 solve") {
  std::mt19937_64 rng(101);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 200; ++i) {
    const RateTriple x{u(rng), u(rng), u(rng)};
    const auto w = unit_coefficients(x);
    const auto o = oracle::unit_weights(x.vec());
    CHECK(w.tp == doctest::Approx(o(0)).epsilon(1e-12));
    CHECK(w.sd == doctest::Approx(o(1)).epsilon(1e-12));
    CHECK(w.ed == doctest::Approx(o(2)).epsilon(1e-12));
  }
}

TEST_CASE("octant bound examples") {
  auto r = octant_bound_check({1, -1, 0});
  CHECK(r.passed());
  r = octant_bound_check({0.5, 0.5, 0.5});
  REQUIRE(r.octants.size() == 1);
  CHECK(r.octants[0].octant == "(+,+,+)");
  CHECK(r.octants[0].empty);
  CHECK_FALSE(r.passed());
  r = octant_bound_check({0, 0, 0});
  CHECK(r.octants.size() == 8);
  CHECK(r.passed());
  r = octant_bound_check({-1, -1, 1});
  CHECK(r.passed());
  r = octant_bound_check({-1, -1, 1.5});
  CHECK_FALSE(r.passed());
}

TEST_CASE("property: cone scaling") {
  std::mt19937_64 rng(103);
  std::uniform_real_distribution<double> w(0, 2), t(0, 10);
  const auto u = unit_region();
  for (int i = 0; i < 100; ++i) {
    const RateTriple x = kTeleportation * w(rng) + kSuperDense * w(rng) + kEntanglementDistribution * w(rng);
    CHECK(contains(u, x * t(rng)));
  }
}

}  // TEST_SUITE
