#include <doctest.h>

#include <cmath>
#include <random>

#include "oracle.hpp"
#include "qst/assembly.hpp"
#include "qst/entropy.hpp"
#include "qst/models.hpp"
#include "qst/optimizer.hpp"

using namespace qst;

TEST_SUITE("state-assembly") {

TEST_CASE("ensembles are validated") {
  const Vector v = Ensemble::maximally_entangled(2).entries()[0].state;
  CHECK_THROWS(Ensemble(2, 2, {{0.5, v}}));                 // probabilities do not sum to one
  CHECK_THROWS(Ensemble(2, 2, {{1.2, v}, {-0.2, v}}));      // negative weight
  CHECK_THROWS(Ensemble(2, 2, {{1.0, 2.0 * v}}));           // not normalized
  CHECK_THROWS(Ensemble(2, 3, {{1.0, v}}));                 // wrong dimension
  CHECK_THROWS(Ensemble(2, 2, {}));                         // empty
  CHECK_THROWS(Ensemble(2, 2, {{0.5, v}, {0.5, v}}, 1));    // over the outcome cap
}

TEST_CASE("dynamic sigma on the identity channel") {
  const auto sigma = build_sigma_dynamic(QuantumChannel::identity(2), Ensemble::maximally_entangled(2));
  const auto& s = sigma.state;
  REQUIRE(s.labels().size() == 4);
  CHECK(s.labels()[0].name == "X");
  CHECK(s.labels()[3].name == "E");
  CHECK(conditional_mutual_information(s, {"A"}, {"B"}, {"X"}) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(conditional_mutual_information(s, {"A"}, {"E"}, {"X"}) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("dynamic sigma is block diagonal and reproduces its ensemble") {
  std::mt19937_64 rng(61);
  const auto channel = dephasing_channel(0.4);
  for (int trial = 0; trial < 5; ++trial) {
    const auto ens = random_ensemble(rng, 2, 4);
    const auto sigma = build_sigma_dynamic(channel, ens);
    CHECK(off_block_mass(sigma.state) < kBlockTol);
    const auto px = partial_trace(sigma.state, {"X"});
    for (std::size_t x = 0; x < ens.entries().size(); ++x) {
      CHECK(px.matrix()(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(x)).real() ==
            doctest::Approx(ens.entries()[x].probability).epsilon(1e-12));
    }
    // XABE is pure conditioned on X: H(ABE|X) = 0.
    CHECK(von_neumann(sigma.state) - von_neumann(sigma.state, {"X"}) == doctest::Approx(0.0).epsilon(1e-9));
  }
}

TEST_CASE("static sigma from the trivial instrument") {
  const auto rho = erased_state(0.25);
  const auto sigma = build_sigma_static(rho, Instrument::trivial(2));
  const auto& s = sigma.state;
  CHECK(s.has("X"));
  CHECK(s.has("A'"));
  CHECK(s.has("E'"));
  CHECK(s.subsystem("X").dim == 1);
  // A'B marginal equals the input state.
  const auto ab = partial_trace(s, {"A'", "B"});
  CHECK((ab.matrix() - rho.matrix()).norm() < 1e-12);
}

TEST_CASE("static sigma with a random instrument keeps B and E untouched") {
  std::mt19937_64 rng(67);
  const auto rho = erased_state(0.25);
  const auto psi = purify(rho, "E");
  const auto be = partial_trace(psi.density(), {"B", "E"});
  for (int trial = 0; trial < 5; ++trial) {
    const auto sigma = build_sigma_static(rho, random_instrument(rng, 2, 3));
    CHECK(off_block_mass(sigma.state) < kBlockTol);
    CHECK((partial_trace(sigma.state, {"B", "E"}).matrix() - be.matrix()).norm() < 1e-10);
    double total = 0.0;
    for (double p : sigma.probabilities) total += p;
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("product ensembles regroup subsystems") {
  const auto e = tensor(Ensemble::maximally_entangled(2), Ensemble::maximally_entangled(2));
  CHECK(e.dim_a() == 4);
  CHECK(e.dim_a_prime() == 4);
  const auto sigma = build_sigma_dynamic(QuantumChannel::identity(4), e);
  CHECK(coherent_information(sigma.state, {"A"}, {"B"}, {"X"}) == doctest::Approx(2.0).epsilon(1e-10));
}

}  // TEST_SUITE
