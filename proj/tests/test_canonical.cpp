#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mbprk/canonical.hpp"
#include "mbprk/presets.hpp"
#include "mbprk/rng.hpp"
#include "mbprk/stepping.hpp"
#include "testutil.hpp"

using namespace mbprk;

namespace {

void check_rows(const RaggedArray& got, const RaggedArray& expected,
                double margin) {
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    REQUIRE(got[i].size() == expected[i].size());
    for (std::size_t j = 0; j < got[i].size(); ++j)
      CHECK(got[i][j] == Catch::Approx(expected[i][j]).margin(margin));
  }
}

}  // namespace

TEST_CASE("to_canonical reduces rk2-ssp") {
  const CanonicalForm cf = to_canonical(preset("rk2-ssp"));
  check_rows(cf.p, {{1.0}, {0.5, 0.5}}, 1e-15);
  CHECK(cf.d[0] == Catch::Approx(1.0).margin(1e-15));
  CHECK(cf.d[1] == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("to_canonical reduces rk3-ssp") {
  const CanonicalForm cf = to_canonical(preset("rk3-ssp"));
  check_rows(cf.p, {{1.0}, {0.75, 0.25}, {1.0 / 3.0, 0.0, 2.0 / 3.0}}, 1e-15);
  CHECK(cf.d[0] == Catch::Approx(1.0).margin(1e-15));
  CHECK(cf.d[1] == Catch::Approx(0.25).margin(1e-15));
  CHECK(cf.d[2] == Catch::Approx(2.0 / 3.0).margin(1e-15));
}

TEST_CASE("to_canonical reduces the non-dissipative rk3") {
  const CanonicalForm cf = to_canonical(preset("rk3-nondissipative"));
  check_rows(cf.p, {{1.0}, {0.0, 1.0}, {1.0 / 3.0, 0.5, 1.0 / 6.0}}, 1e-15);
  CHECK(cf.d[0] == Catch::Approx(1.0).margin(1e-15));
  CHECK(cf.d[1] == Catch::Approx(1.0).margin(1e-15));
  CHECK(cf.d[2] == Catch::Approx(1.0 / 6.0).margin(1e-15));
}

TEST_CASE("to_canonical handles classic-rk4") {
  const CanonicalForm cf = to_canonical(preset("classic-rk4"));
  CHECK(cf.d[0] == Catch::Approx(0.5).margin(1e-15));
  CHECK(cf.d[1] == Catch::Approx(0.5).margin(1e-15));
  CHECK(cf.d[2] == Catch::Approx(1.0).margin(1e-15));
  CHECK(cf.d[3] == Catch::Approx(1.0 / 6.0).margin(1e-15));
  for (const auto& row : cf.p) {
    double sum = 0.0;
    for (double v : row) sum += v;
    CHECK(sum == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("to_canonical names the stage blocking the reduction") {
  const ButcherTableau t =
      make_tableau("", {{1.0}, {1.0, 0.0}},
                   {1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
  CHECK_THROWS_AS(to_canonical(t), SubdiagonalZero);
}

TEST_CASE("to_canonical rejects negative derivative multipliers") {
  const ButcherTableau t = make_tableau("", {{-1.0}}, {0.5, 0.5});
  CHECK_THROWS_AS(to_canonical(t), NegativeD);
}

TEST_CASE("canonicalize_general eliminates the extra derivative term") {
  const CanonicalForm cf = canonicalize_general(rk4_five_stage_form());
  const double d4 = 0.544974750228521;
  const double p40 = 0.178079954393132;
  const double p43 = 0.821920045606868;
  const double p52 = 0.517231671970585;
  const double p53 = 0.096059710526147;
  const double d53 = 0.063692468666290;
  const double p54 = 0.386708617503269;
  const double d54 = 0.226007483236906;
  REQUIRE(cf.stages == 5);
  CHECK(cf.p[4][0] == Catch::Approx(-d53 * p40 / d4).margin(1e-14));
  CHECK(cf.p[4][1] == Catch::Approx(0.0).margin(1e-14));
  CHECK(cf.p[4][2] == Catch::Approx(p52).margin(1e-14));
  CHECK(cf.p[4][3] == Catch::Approx(p53 - d53 * p43 / d4).margin(1e-14));
  CHECK(cf.p[4][4] == Catch::Approx(p54 + d53 / d4).margin(1e-14));
  CHECK(cf.d[4] == Catch::Approx(d54).margin(1e-15));
}

TEST_CASE("canonicalize_general leaves canonical input unchanged") {
  const CanonicalForm source = to_canonical(preset("rk3-ssp"));
  ShuOsherForm f;
  f.stages = source.stages;
  f.alpha = source.p;
  f.beta.resize(static_cast<std::size_t>(source.stages));
  for (int i = 1; i <= source.stages; ++i) {
    f.beta[i - 1].assign(static_cast<std::size_t>(i), 0.0);
    f.beta[i - 1][i - 1] = source.d[i - 1];
  }
  const CanonicalForm cf = canonicalize_general(f);
  check_rows(cf.p, source.p, 1e-15);
  for (int i = 0; i < source.stages; ++i)
    CHECK(cf.d[i] == Catch::Approx(source.d[i]).margin(1e-15));
}

TEST_CASE("canonicalize_general handles the single-stage form") {
  ShuOsherForm f;
  f.stages = 1;
  f.alpha = {{1.0}};
  f.beta = {{1.0}};
  const CanonicalForm cf = canonicalize_general(f);
  CHECK(cf.p[0][0] == 1.0);
  CHECK(cf.d[0] == 1.0);
}

TEST_CASE("canonicalize_general reports an ineliminable derivative") {
  ShuOsherForm f;
  f.stages = 2;
  f.alpha = {{1.0}, {1.0, 0.0}};
  f.beta = {{0.0}, {0.5, 0.5}};
  CHECK_THROWS_AS(canonicalize_general(f), NotEliminable);
}

TEST_CASE("both canonicalization routes agree on the five-stage scheme") {
  const CanonicalForm via_tableau = to_canonical(preset("rk4-5stage"));
  const CanonicalForm via_form = canonicalize_general(rk4_five_stage_form());
  REQUIRE(via_tableau.stages == via_form.stages);
  for (int i = 1; i <= via_form.stages; ++i) {
    for (int k = 0; k < i; ++k)
      CHECK(via_tableau.p[i - 1][k] ==
            Catch::Approx(via_form.p[i - 1][k]).margin(1e-12));
    CHECK(via_tableau.d[i - 1] ==
          Catch::Approx(via_form.d[i - 1]).margin(1e-12));
  }
}

TEST_CASE("phi_matrix matches the displayed two-stage matrix") {
  const SquareMatrix phi = phi_matrix(to_canonical(preset("rk2-ssp")));
  CHECK(phi(0, 0) == Catch::Approx(1.0).margin(1e-12));
  CHECK(phi(0, 1) == Catch::Approx(1.0).margin(1e-12));
  CHECK(phi(1, 0) == 0.0);
  CHECK(phi(1, 1) == Catch::Approx(2.0).margin(1e-12));
}

TEST_CASE("phi_matrix matches the displayed three-stage matrices") {
  const SquareMatrix phi3 = phi_matrix(to_canonical(preset("rk3-ssp")));
  const double expected3[3][3] = {
      {1.0, 3.0, 0.5}, {0.0, 4.0, 0.5}, {0.0, 0.0, 1.5}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(phi3(i, j) == Catch::Approx(expected3[i][j]).margin(1e-12));

  const SquareMatrix phi_nd =
      phi_matrix(to_canonical(preset("rk3-nondissipative")));
  const double expected_nd[3][3] = {
      {1.0, 0.0, 2.0}, {0.0, 1.0, 5.0}, {0.0, 0.0, 6.0}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      CHECK(phi_nd(i, j) == Catch::Approx(expected_nd[i][j]).margin(1e-12));
}

TEST_CASE("phi_matrix of the single-stage scheme is the identity") {
  const SquareMatrix phi = phi_matrix(to_canonical(preset("euler")));
  REQUIRE(phi.n == 1);
  CHECK(phi(0, 0) == 1.0);
}

TEST_CASE("phi diagonal is the reciprocal multiplier", "[property]") {
  Xoshiro256pp rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    const int s = 1 + static_cast<int>(rng.next() % 8);
    CanonicalForm cf;
    cf.stages = s;
    cf.p.resize(static_cast<std::size_t>(s));
    cf.d.resize(static_cast<std::size_t>(s));
    for (int i = 1; i <= s; ++i) {
      std::vector<double> row(static_cast<std::size_t>(i));
      double sum = 0.0;
      for (double& v : row) {
        v = rng.uniform_sym();
        sum += v;
      }
      row[0] += 1.0 - sum;  // exact unit row sum is not required here
      cf.p[i - 1] = row;
      cf.d[i - 1] = 0.1 + rng.uniform01();
    }
    const SquareMatrix phi = phi_matrix(cf);
    for (int i = 0; i < s; ++i)
      CHECK(phi(i, i) == 1.0 / cf.d[i]);
  }
}

TEST_CASE("canonical recursion reproduces the tableau step on the cubic",
          "[property]") {
  Xoshiro256pp rng(23);
  for (const auto& name : {"rk2-ssp", "rk3-ssp", "rk3-nondissipative",
                           "rk4-5stage"}) {
    const ButcherTableau& t = preset(name);
    const CanonicalForm cf = to_canonical(t);
    for (int trial = 0; trial < 100; ++trial) {
      const Vector u0 = {rng.uniform_sym()};
      const double tau = 0.21;
      const double a =
          butcher_stages(u0, t, tau, testutil::cubic_rhs).back()[0];
      const double b =
          canonical_stages(u0, cf, tau, testutil::cubic_rhs).back()[0];
      CHECK(b == Catch::Approx(a).margin(1e-12));
    }
  }
}
