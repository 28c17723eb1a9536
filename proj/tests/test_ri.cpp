#include <doctest.h>

#include <random>

#include "qst/geometry.hpp"
#include "qst/ri.hpp"
#include "qst/unit.hpp"

using namespace qst;

namespace {

const char* kTP = "2[c->c] + [qq] >= [q->q]";
const char* kSD = "[q->q] + [qq] >= 2[c->c]";
const char* kED = "[q->q] >= [qq]";

}  // namespace

TEST_SUITE("ri-lang") {

TEST_CASE("unit protocol expressions") {
  CHECK(ri::net_rate(ri::parse(kTP)).rate == RateTriple{-2, 1, -1});
  CHECK(ri::net_rate(ri::parse(kSD)).rate == RateTriple{2, -1, -1});
  CHECK(ri::net_rate(ri::parse(kED)).rate == RateTriple{0, -1, 1});
  CHECK(ri::net_rate(ri::parse("[qq] >= [qq]")).rate == RateTriple{0, 0, 0});
}

TEST_CASE("noisy resources") {
  const auto n = ri::net_rate(ri::parse("<rho> + 0.25[q->q] >= 0.75[qq]"));
  CHECK(n.has_noisy());
  CHECK(n.noisy == "rho");
  CHECK(n.rate == RateTriple{0, -0.25, 0.75});
  CHECK_THROWS_AS(ri::net_rate(ri::parse("[qq] >= <rho>")), ri::RateError);
  CHECK_THROWS_AS(ri::net_rate(ri::parse("<a> + <b> >= [qq]")), ri::RateError);
  CHECK_THROWS_AS(ri::parse("2<rho> >= [qq]"), ri::ParseError);
}

TEST_CASE("common randomness parses but has no rate") {
  const auto e = ri::parse("[c->c] >= [cc]");
  CHECK(ri::print(e) == "[c->c] >= [cc]");
  CHECK_THROWS_AS(ri::net_rate(e), ri::RateError);
  const auto d = ri::derivable(e, {ri::parse(kTP)});
  CHECK_FALSE(d.derivable);
  CHECK_FALSE(d.reason.empty());
}

TEST_CASE("syntax errors carry byte offsets") {
  try {
    ri::parse("3[xx] >= [qq]");
    FAIL("expected a parse error");
  } catch (const ri::ParseError& e) {
    CHECK(e.offset() == 1);
  }
  CHECK_THROWS_AS(ri::parse("[qq]"), ri::ParseError);
  CHECK_THROWS_AS(ri::parse("[qq] >= "), ri::ParseError);
  CHECK_THROWS_AS(ri::parse("1. [qq] >= [qq]"), ri::ParseError);
  CHECK_THROWS_AS(ri::parse("[qq] >= [qq] extra"), ri::ParseError);
  CHECK_THROWS_AS(ri::parse("<> >= [qq]"), ri::ParseError);
}

TEST_CASE("canonical printing") {
  CHECK(ri::print(ri::parse("[qq]+2[c->c]>=[q->q]")) == "2[c->c] + [qq] >= [q->q]");
  CHECK(ri::print(ri::parse("[c->c] + [c->c] >= 1.50[qq]")) == "2[c->c] >= 1.5[qq]");
  CHECK(ri::print(ri::parse("1[qq] >= 0.25[q->q]")) == "[qq] >= 0.25[q->q]");
  CHECK(ri::print(ri::parse("[qq] + <rho> >= [q->q]")) == "[qq] + <rho> >= [q->q]");
}

TEST_CASE("derivability examples") {
  const std::vector<ri::Expr> ed{ri::parse(kED)};
  auto d = ri::derivable(ri::parse("[q->q] >= [qq]"), ed);
  CHECK(d.derivable);
  CHECK(d.protocol_weights[0] == doctest::Approx(1.0));

  const std::vector<ri::Expr> tp_sd{ri::parse(kTP), ri::parse(kSD)};
  CHECK_FALSE(ri::derivable(ri::parse("[qq] >= [q->q] + [qq]"), tp_sd).derivable);
  CHECK_FALSE(ri::derivable(ri::parse("[qq] >= [q->q]"), tp_sd).derivable);

  d = ri::derivable(ri::parse("[q->q] + [qq] >= 2[c->c]"), {ri::parse(kSD)});
  CHECK(d.derivable);

  // Wasting resources is always allowed.
  d = ri::derivable(ri::parse("[q->q] + [qq] >= [c->c]"), {ri::parse(kSD)});
  CHECK(d.derivable);
  const auto back = ri::replay(d, {ri::parse(kSD)});
  CHECK(max_abs_diff(back, {1, -1, -1}) < 1e-9);
}

TEST_CASE("noisy resources are consumed at most once") {
  const std::vector<ri::Expr> mother{ri::parse("<rho> + 0.25[q->q] >= 0.75[qq]"), ri::parse(kED)};
  CHECK(ri::derivable(ri::parse("<rho> + 0.25[q->q] >= 0.75[qq]"), mother).derivable);
  CHECK(ri::derivable(ri::parse("<rho> + [q->q] >= 1.5[qq]"), mother).derivable);
  CHECK_FALSE(ri::derivable(ri::parse("<rho> + 0.5[q->q] >= 1.5[qq]"), mother).derivable);
  // Without the resource in the target the noisy protocol is unavailable.
  CHECK_FALSE(ri::derivable(ri::parse("0.25[q->q] >= 0.75[qq]"), mother).derivable);
  // A different noisy resource does not help.
  CHECK_FALSE(ri::derivable(ri::parse("<sigma> + 0.25[q->q] >= 0.75[qq]"), mother).derivable);
}

TEST_CASE("property: derivability agrees with cone membership") {
  std::mt19937_64 rng(107);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  const std::vector<ri::Expr> protocols{ri::parse(kTP), ri::parse(kSD), ri::parse(kED)};
  const auto region = unit_region();
  for (int i = 0; i < 100; ++i) {
    const RateTriple x{u(rng), u(rng), u(rng)};
    ri::Expr target;
    auto add = [](std::vector<ri::Term>& side, double c, ri::Resource r) {
      if (c > 0) side.push_back({c, r, {}});
    };
    add(target.rhs, x.C, ri::Resource::CBit);
    add(target.lhs, -x.C, ri::Resource::CBit);
    add(target.rhs, x.Q, ri::Resource::QBit);
    add(target.lhs, -x.Q, ri::Resource::QBit);
    add(target.rhs, x.E, ri::Resource::EBit);
    add(target.lhs, -x.E, ri::Resource::EBit);
    const auto d = ri::derivable(target, protocols);
    CHECK(d.derivable == contains(region, x));
    if (d.derivable) CHECK(max_abs_diff(ri::replay(d, protocols), x) < 1e-9);
  }
}

}  // TEST_SUITE
