#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "qst/entropy.hpp"
#include "qst/models.hpp"
#include "qst/quantum.hpp"

using namespace qst;

namespace {

DensityMatrix random_state(std::mt19937_64& rng, Labels labels, int rank = -1) {
  const int d = static_cast<int>(total_dim(labels));
  return DensityMatrix(std::move(labels), oracle::random_density(rng, d, rank));
}

Matrix pauli_z() {
  Matrix z = Matrix::Zero(2, 2);
  z(0, 0) = 1.0;
  z(1, 1) = -1.0;
  return z;
}

}  // namespace

TEST_SUITE("quantum-core") {

TEST_CASE("density matrices reject invalid input") {
  Matrix m = Matrix::Identity(2, 2) / 2.0;
  CHECK_NOTHROW(DensityMatrix({{"A", 2}}, m));

  Matrix bad_trace = Matrix::Identity(2, 2);
  CHECK_THROWS_AS(DensityMatrix({{"A", 2}}, bad_trace), QuantumError);

  Matrix non_hermitian = m;
  non_hermitian(0, 1) = 0.3;
  CHECK_THROWS_AS(DensityMatrix({{"A", 2}}, non_hermitian), QuantumError);

  Matrix negative = Matrix::Zero(2, 2);
  negative(0, 0) = 1.5;
  negative(1, 1) = -0.5;
  CHECK_THROWS_AS(DensityMatrix({{"A", 2}}, negative), QuantumError);

  CHECK_THROWS_AS(DensityMatrix({{"A", 3}}, m), QuantumError);
  CHECK_THROWS_AS(DensityMatrix({{"A", 1}, {"A", 2}}, m), QuantumError);
}

TEST_CASE("dimension cap is enforced") {
  const auto old = dimension_cap();
  set_dimension_cap(8);
  std::mt19937_64 rng(3);
  const auto a = random_state(rng, {{"A", 4}});
  const auto b = random_state(rng, {{"B", 4}});
  CHECK_THROWS_AS(tensor(a, b), QuantumError);
  set_dimension_cap(old);
  CHECK_NOTHROW(tensor(a, b));
}

TEST_CASE("partial trace agrees with index enumeration") {
  std::mt19937_64 rng(11);
  const std::vector<int> dims{2, 3, 2};
  for (int trial = 0; trial < 5; ++trial) {
    const auto rho = random_state(rng, {{"A", 2}, {"B", 3}, {"C", 2}});
    const std::vector<std::pair<Group, std::vector<int>>> cases = {
        {{"A"}, {0}}, {{"B"}, {1}}, {{"C"}, {2}}, {{"A", "C"}, {0, 2}}, {{"B", "C"}, {1, 2}}, {{"A", "B"}, {0, 1}}};
    for (const auto& [group, idx] : cases) {
      const auto got = partial_trace(rho, group);
      const auto want = oracle::partial_trace(rho.matrix(), dims, idx);
      CHECK((got.matrix() - want).norm() < 1e-12);
    }
  }
}

TEST_CASE("partial trace keeps the original factor order") {
  std::mt19937_64 rng(5);
  const auto rho = random_state(rng, {{"A", 2}, {"B", 3}, {"C", 2}});
  const auto reduced = partial_trace(rho, {"C", "A"});
  REQUIRE(reduced.labels().size() == 2);
  CHECK(reduced.labels()[0].name == "A");
  CHECK(reduced.labels()[1].name == "C");
}

TEST_CASE("tensor then trace recovers each factor") {
  std::mt19937_64 rng(7);
  const auto a = random_state(rng, {{"A", 2}});
  const auto b = random_state(rng, {{"B", 3}});
  const auto ab = tensor(a, b);
  CHECK((partial_trace(ab, {"A"}).matrix() - a.matrix()).norm() < 1e-12);
  CHECK((partial_trace(ab, {"B"}).matrix() - b.matrix()).norm() < 1e-12);
}

TEST_CASE("permute is invertible and relabels") {
  std::mt19937_64 rng(13);
  const auto rho = random_state(rng, {{"A", 2}, {"B", 3}, {"C", 2}});
  const auto p = permute(rho, {"C", "A", "B"});
  CHECK(p.labels()[0].name == "C");
  const auto back = permute(p, {"A", "B", "C"});
  CHECK((back.matrix() - rho.matrix()).norm() < 1e-14);
  CHECK((partial_trace(p, {"B"}).matrix() - partial_trace(rho, {"B"}).matrix()).norm() < 1e-12);
  CHECK_THROWS_AS(permute(rho, {"A", "B"}), QuantumError);
  CHECK_THROWS_AS(permute(rho, {"A", "A", "B"}), QuantumError);
}

TEST_CASE("merge fuses adjacent factors") {
  std::mt19937_64 rng(17);
  const auto rho = random_state(rng, {{"A", 2}, {"B", 3}, {"C", 2}});
  const auto m = merge(rho, {"B", "C"}, "D");
  REQUIRE(m.labels().size() == 2);
  CHECK(m.subsystem("D").dim == 6);
  CHECK((m.matrix() - rho.matrix()).norm() == doctest::Approx(0.0));
  CHECK_THROWS_AS(merge(rho, {"A", "C"}, "D"), QuantumError);
}

TEST_CASE("purification recovers the state and has rank-sized environment") {
  std::mt19937_64 rng(19);
  for (int rank : {1, 2, 4}) {
    const auto rho = random_state(rng, {{"A", 2}, {"B", 2}}, rank);
    const auto psi = purify(rho, "E");
    CHECK(psi.labels().back().name == "E");
    CHECK(psi.labels().back().dim == rank);
    const auto back = partial_trace(psi.density(), {"A", "B"});
    CHECK((back.matrix() - rho.matrix()).norm() < 1e-10);
    CHECK(von_neumann(psi.density(), {"E"}) == doctest::Approx(von_neumann(rho)).epsilon(1e-9));
  }
}

TEST_CASE("purification is deterministic") {
  std::mt19937_64 rng(23);
  const auto rho = random_state(rng, {{"A", 3}});
  CHECK((purify(rho, "E").vector() - purify(rho, "E").vector()).norm() == 0.0);
}

TEST_CASE("channels validate completeness") {
  Matrix half = Matrix::Identity(2, 2) * 0.5;
  CHECK_THROWS_AS(QuantumChannel(2, 2, {half}), QuantumError);
  CHECK_THROWS_AS(QuantumChannel(2, 2, {Matrix::Identity(3, 2)}), QuantumError);
  CHECK_NOTHROW(QuantumChannel::identity(3));
}

TEST_CASE("dephasing damps coherences by 1 - p") {
  const double p = 0.3;
  Matrix plus = Matrix::Constant(2, 2, 0.5);
  const auto out = apply_channel(dephasing_channel(p), DensityMatrix({{"A", 2}}, plus), "A");
  CHECK(out.matrix()(0, 1).real() == doctest::Approx(0.5 * (1 - p)).epsilon(1e-12));
  CHECK(out.matrix()(0, 0).real() == doctest::Approx(0.5));
}

TEST_CASE("isometric extension reproduces the channel and its complement") {
  std::mt19937_64 rng(29);
  const auto channel = erasure_channel(0.3);
  const auto v = isometric_extension(channel, "B", "E");
  CHECK((v.matrix().adjoint() * v.matrix() - Matrix::Identity(2, 2)).norm() < 1e-12);
  const auto rho = random_state(rng, {{"R", 2}, {"A", 2}});
  const auto full = apply_isometry(v, rho, "A");
  const auto direct = apply_channel(channel, rho, "A");
  const auto via_iso = partial_trace(full, {"R", "B"});
  CHECK((via_iso.matrix() - direct.matrix()).norm() < 1e-12);
  // Total state is still pure when the input is pure.
  const auto pure = bell_vector(2, "R", "A");
  const auto out = apply_isometry(v, pure, "A").density();
  CHECK(von_neumann(out) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("instruments validate their total map") {
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  CHECK_NOTHROW(Instrument(2, 2, {{0, {p0}}, {1, {p1}}}));
  CHECK_THROWS_AS(Instrument(2, 2, {{0, {p0}}}), QuantumError);
  CHECK_THROWS_AS(Instrument(2, 2, {{0, {p0}}, {0, {p1}}}), QuantumError);
  CHECK(Instrument::trivial(3).branches().size() == 1);
}

TEST_CASE("dilating a measurement instrument gives a block-diagonal flagged state") {
  Matrix p0 = Matrix::Zero(2, 2), p1 = Matrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const Instrument measure(2, 2, {{0, {p0}}, {1, {p1}}});
  const auto dil = dilate_instrument(measure, bell_vector(), "A");
  REQUIRE(dil.probabilities.size() == 2);
  CHECK(dil.probabilities[0] == doctest::Approx(0.5));
  CHECK(dil.state.labels().front().name == "X");
  CHECK(dil.state.labels().back().name == "E'");
  CHECK(dil.state.has("A'"));
  // Measuring one half of a Bell pair leaves B perfectly correlated with X.
  CHECK(mutual_information(dil.state, {"X"}, {"B"}) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("apply_operator requires matching factor dimension") {
  const auto psi = bell_vector();
  CHECK_THROWS_AS(apply_operator(Matrix::Identity(3, 3), psi, "A", {{"A", 3}}), QuantumError);
  const auto flipped = apply_operator(pauli_z(), psi, "A", {{"A", 2}});
  CHECK(std::abs(flipped.vector()(3) + psi.vector()(3)) < 1e-15);
}

}  // TEST_SUITE
