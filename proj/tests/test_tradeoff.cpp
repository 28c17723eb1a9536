#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "qst/entropy.hpp"
#include "qst/models.hpp"
#include "qst/optimizer.hpp"
#include "qst/tradeoff.hpp"

using namespace qst;

namespace {

double oracle_cmi(const Matrix& m, const std::vector<int>& dims, std::vector<int> a, std::vector<int> b,
                  std::vector<int> c) {
  auto h = [&](std::vector<int> keep) {
    std::sort(keep.begin(), keep.end());
    if (keep.empty()) return 0.0;
    return oracle::entropy(oracle::partial_trace(m, dims, keep));
  };
  auto join = [](std::vector<int> x, const std::vector<int>& y) {
    x.insert(x.end(), y.begin(), y.end());
    return x;
  };
  return h(join(a, c)) + h(join(b, c)) - h(join(join(a, b), c)) - h(c);
}

}  // namespace

TEST_SUITE("trade-off-engine") {

TEST_CASE("CEF point of the identity channel") {
  const auto p = cef_point(QuantumChannel::identity(2), Ensemble::maximally_entangled(2));
  CHECK(max_abs_diff(p.triple, {0, 1, 0}) < 1e-12);
  CHECK(p.kind == PointKind::CEF);
}

TEST_CASE("CEF point of dephasing on a maximally entangled input") {
  const double h = oracle::h2(0.1);
  const auto p = cef_point(dephasing_channel(0.2), Ensemble::maximally_entangled(2));
  CHECK(max_abs_diff(p.triple, {0, 1 - h / 2, -h / 2}) < 1e-9);
}

TEST_CASE("dynamic quantities match an independent evaluation") {
  std::mt19937_64 rng(109);
  const auto channel = dephasing_channel(0.35);
  for (int trial = 0; trial < 3; ++trial) {
    const auto ens = random_ensemble(rng, 2, 3);
    const auto sigma = build_sigma_dynamic(channel, ens);
    const auto q = dynamic_quantities(sigma);
    const auto dims = dims_of(sigma.state.labels());
    const Matrix& m = sigma.state.matrix();
    // Labels X=0, A=1, B=2, E=3.
    CHECK(q.I_X_B == doctest::Approx(oracle_cmi(m, dims, {0}, {2}, {})).epsilon(1e-9));
    CHECK(q.I_AX_B == doctest::Approx(oracle_cmi(m, dims, {0, 1}, {2}, {})).epsilon(1e-9));
    CHECK(q.I_A_B_given_X == doctest::Approx(oracle_cmi(m, dims, {1}, {2}, {0})).epsilon(1e-9));
    CHECK(q.I_A_E_given_X == doctest::Approx(oracle_cmi(m, dims, {1}, {3}, {0})).epsilon(1e-9));
  }
}

TEST_CASE("CASR points of simple states") {
  const auto mother = casr_point(erased_state(0.25), Instrument::trivial(2));
  CHECK(max_abs_diff(mother.triple, {0, -0.25, 0.75}) < 1e-9);
  CHECK(mother.kind == PointKind::CASR);

  const auto bell = casr_point(bell_state(), Instrument::trivial(2));
  CHECK(max_abs_diff(bell.triple, {0, 0, 1}) < 1e-12);

  Matrix prod = Matrix::Zero(4, 4);
  prod(0, 0) = 1.0;
  const auto zero = casr_point(DensityMatrix({{"A", 2}, {"B", 2}}, prod), Instrument::trivial(2));
  CHECK(max_abs_diff(zero.triple, {0, 0, 0}) < 1e-12);
}

TEST_CASE("states need labels A and B") {
  CHECK_THROWS_AS(build_sigma_static(DensityMatrix({{"A", 2}}, Matrix::Identity(2, 2) / 2.0), Instrument::trivial(2)),
                  QuantumError);
}

TEST_CASE("assembled regions") {
  const auto empty = assemble_region({});
  CHECK(contains(empty, kTeleportation));
  CHECK_FALSE(contains(empty, {0, 0, 0.1}));
  OneShotPoint mother{PointKind::CASR, {0, -0.25, 0.75}, "mother", 1};
  const auto r = assemble_region({mother});
  CHECK(contains(r, {-0.5, 0, 0.5}));
  CHECK(contains(r, {0, -0.25, 0.75}));
}

TEST_CASE("two copies of a product ensemble give the one-copy rates") {
  const auto channel = dephasing_channel(0.2);
  const auto ens = Ensemble(2, 2, {{0.3, schmidt_state(0.4)}, {0.7, schmidt_state(1.1)}});
  const auto one = cef_point(channel, ens);
  const auto two = cef_point(tensor_copies(channel, 2), tensor_copies(ens, 2), {}, 2);
  CHECK(max_abs_diff(one.triple, two.triple) < 1e-8);
  CHECK(two.k == 2);
  CHECK_THROWS(cef_point(channel, ens, {}, 3));
}

TEST_CASE("two copies of a state") {
  const auto rho = erased_state(0.25);
  const auto two = tensor_copies(rho, 2);
  CHECK(two.subsystem("A").dim == 4);
  CHECK(two.subsystem("B").dim == 9);
  CHECK(coherent_information(two, {"A"}, {"B"}) == doctest::Approx(1.0).epsilon(1e-9));
  const auto p = casr_point(rho, Instrument::trivial(2));
  const auto p2 = casr_point(two, Instrument::trivial(4), {}, 2);
  CHECK(max_abs_diff(p.triple, p2.triple) < 1e-8);
}

TEST_CASE("CEF points sit on their own converse bounds") {
  std::mt19937_64 rng(113);
  const auto channel = dephasing_channel(0.2);
  for (int trial = 0; trial < 10; ++trial) {
    const auto sigma = build_sigma_dynamic(channel, random_ensemble(rng, 2, 4));
    const auto q = dynamic_quantities(sigma);
    const auto x = cef_rates(q);
    const auto r = cef_octant_bounds(q, x);
    CHECK(r.in_octant);
    CHECK(r.passed(1e-9));
    CHECK(r.min_slack() == doctest::Approx(0.0).epsilon(1e-9));  // C + 2Q = I(AX;B) is tight
    CHECK_FALSE(cef_octant_bounds(q, x + RateTriple{0, 0.01, 0}).passed(1e-9));
    // Trading through teleportation stays inside the (-,+,-) bounds.
    const auto y = x + kTeleportation * (x.C / 2 + 0.1);
    CHECK(caq_bounds(q, y).in_octant);
    CHECK(caq_bounds(q, y).passed(1e-9));
    const auto z = x + kSuperDense * 0.3;
    if (z.Q < 0) CHECK(eaq_classical_bounds(q, z).passed(1e-9));
  }
}

TEST_CASE("CASR points sit on their own converse bounds") {
  std::mt19937_64 rng(127);
  const auto rho = erased_state(0.25);
  for (int trial = 0; trial < 10; ++trial) {
    const auto sigma = build_sigma_static(rho, random_instrument(rng, 2, 3));
    const auto q = static_quantities(sigma);
    const auto x = casr_rates(q);
    CHECK(casr_octant_bounds(q, x).passed(1e-9));
    CHECK_FALSE(casr_octant_bounds(q, x + RateTriple{0, 0, 0.05}).passed(1e-9));
  }
}

TEST_CASE("EA coding versus teleportation gap") {
  const auto id = ea_vs_tp_gap({cef_point(QuantumChannel::identity(2), Ensemble::maximally_entangled(2))});
  CHECK(id.gap == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ea_vs_tp_gap({}).gap == doctest::Approx(0.0).epsilon(1e-12));
  const double h = oracle::h2(0.1);
  const auto deph = ea_vs_tp_gap({cef_point(dephasing_channel(0.2), Ensemble::maximally_entangled(2))});
  CHECK(deph.gap == doctest::Approx(1 - h).epsilon(1e-9));
  CHECK(deph.ebits_teleportation == doctest::Approx(-deph.quantum_rate));
}

}  // TEST_SUITE
