#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "qst/entropy.hpp"
#include "qst/models.hpp"

using namespace qst;

TEST_SUITE("entropy") {

TEST_CASE("binary entropy") {
  CHECK(binary_entropy(0.0) == 0.0);
  CHECK(binary_entropy(1.0) == 0.0);
  CHECK(binary_entropy(0.5) == doctest::Approx(1.0));
  CHECK(binary_entropy(0.1) == doctest::Approx(oracle::h2(0.1)).epsilon(1e-14));
  CHECK_THROWS_AS(binary_entropy(-0.1), std::domain_error);
  CHECK_THROWS_AS(binary_entropy(1.5), std::domain_error);
}

TEST_CASE("spectrum entropy clips tiny negatives and rejects large ones") {
  Eigen::VectorXd v(3);
  v << 0.5, 0.5, -1e-12;
  CHECK(spectrum_entropy(v) == doctest::Approx(1.0));
  v << 0.6, 0.5, -0.1;
  CHECK_THROWS(spectrum_entropy(v));
}

TEST_CASE("maximally mixed and pure states") {
  for (int d : {2, 3, 5}) {
    DensityMatrix mixed({{"A", d}}, Matrix::Identity(d, d) / static_cast<double>(d));
    CHECK(von_neumann(mixed) == doctest::Approx(std::log2(static_cast<double>(d))).epsilon(1e-12));
  }
  CHECK(von_neumann(bell_state()) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Bell pair information quantities") {
  const auto phi = bell_state();
  CHECK(mutual_information(phi, {"A"}, {"B"}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(coherent_information(phi, {"A"}, {"B"}) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("entropies agree with an independent eigen-solver") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const auto m = oracle::random_density(rng, 12);
    DensityMatrix rho({{"A", 2}, {"B", 3}, {"C", 2}}, m);
    CHECK(von_neumann(rho) == doctest::Approx(oracle::entropy(m)).epsilon(1e-10));
    const auto ac = oracle::partial_trace(m, {2, 3, 2}, {0, 2});
    CHECK(von_neumann(rho, {"A", "C"}) == doctest::Approx(oracle::entropy(ac)).epsilon(1e-10));
  }
}

TEST_CASE("entropic inequalities on random states") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 25; ++trial) {
    DensityMatrix rho({{"A", 2}, {"B", 2}, {"C", 2}}, oracle::random_density(rng, 8, 1 + trial % 8));
    CHECK(mutual_information(rho, {"A"}, {"B"}) >= -1e-10);
    CHECK(conditional_mutual_information(rho, {"A"}, {"B"}, {"C"}) >= -1e-10);
    // Araki-Lieb and subadditivity.
    const double ha = von_neumann(rho, {"A"}), hb = von_neumann(rho, {"B"}), hab = von_neumann(rho, {"A", "B"});
    CHECK(hab <= ha + hb + 1e-10);
    CHECK(hab >= std::abs(ha - hb) - 1e-10);
    // Coherent information is bounded by log of the reference dimension.
    CHECK(std::abs(coherent_information(rho, {"A"}, {"B"})) <= 1.0 + 1e-10);
  }
}

TEST_CASE("chain rule I(A;BC) = I(A;C) + I(A;B|C)") {
  std::mt19937_64 rng(47);
  for (int trial = 0; trial < 10; ++trial) {
    DensityMatrix rho({{"A", 2}, {"B", 2}, {"C", 3}}, oracle::random_density(rng, 12));
    const double lhs = mutual_information(rho, {"A"}, {"B", "C"});
    const double rhs = mutual_information(rho, {"A"}, {"C"}) + conditional_mutual_information(rho, {"A"}, {"B"}, {"C"});
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("EntropyQuery matches the free functions") {
  std::mt19937_64 rng(53);
  DensityMatrix rho({{"X", 2}, {"A", 2}, {"B", 3}}, oracle::random_density(rng, 12));
  EntropyQuery q(rho);
  CHECK(q.H({"A", "B"}) == doctest::Approx(von_neumann(rho, {"A", "B"})));
  CHECK(q.H({"B", "A"}) == doctest::Approx(von_neumann(rho, {"A", "B"})));
  CHECK(q.I({"A"}, {"B"}) == doctest::Approx(mutual_information(rho, {"A"}, {"B"})));
  CHECK(q.I({"A"}, {"B"}, {"X"}) == doctest::Approx(conditional_mutual_information(rho, {"A"}, {"B"}, {"X"})));
  CHECK(q.coherent({"A"}, {"B"}, {"X"}) == doctest::Approx(coherent_information(rho, {"A"}, {"B"}, {"X"})));
  CHECK_THROWS(q.I({"A"}, {"A", "B"}));
}

TEST_CASE("unknown subsystem names are rejected") {
  CHECK_THROWS_AS(von_neumann(bell_state(), {"Z"}), QuantumError);
}

}  // TEST_SUITE
