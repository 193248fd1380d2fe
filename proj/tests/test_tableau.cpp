#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <vector>

#include "mbprk/presets.hpp"
#include "mbprk/stepping.hpp"
#include "mbprk/tableau.hpp"
#include "mbprk/rng.hpp"
#include "testutil.hpp"

using namespace mbprk;

TEST_CASE("validate_tableau accepts the shipped presets") {
  for (const auto& name : preset_names())
    CHECK(validate_tableau(preset(name)).empty());
}

TEST_CASE("validate_tableau reports a node mismatch with its residual") {
  ButcherTableau t = preset("rk2-ssp");
  t.c[1] = 0.9;  // coefficient row sums to 1
  const auto violations = validate_tableau(t);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].row == 1);
  CHECK(violations[0].residual == Catch::Approx(0.1).margin(1e-15));
}

TEST_CASE("validate_tableau reports a weight row that does not sum to one") {
  const ButcherTableau t = make_tableau("", {{1.0}}, {1.0 / 3.0, 1.0 / 3.0});
  const auto violations = validate_tableau(t);
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].row == 2);
  CHECK(violations[0].residual == Catch::Approx(1.0 / 3.0).margin(1e-12));
}

TEST_CASE("ssp_check applies to classic-rk4 and finds a zero coefficient") {
  const ButcherTableau& t = preset("classic-rk4");
  // sub-diagonals 1/2, 1/2, 1, 1/6 are all nonzero, so no NonApplicable
  const SspVerdict v = ssp_check(t);
  CHECK_FALSE(v.is_ssp);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->row == 2);
  CHECK(v.witness->col == 0);
  CHECK(v.witness->value == 0.0);
  CHECK(v.witness->kind == WitnessKind::non_positive_entry);
  CHECK_FALSE(v.constructed_form.has_value());
}

TEST_CASE("ssp_check certifies rk2-ssp with a nonnegative form") {
  const SspVerdict v = ssp_check(preset("rk2-ssp"));
  CHECK(v.is_ssp);
  REQUIRE(v.constructed_form.has_value());
  const ShuOsherForm& f = *v.constructed_form;
  for (int i = 1; i <= f.stages; ++i) {
    double sum = 0.0;
    for (int k = 0; k < i; ++k) {
      CHECK(f.alpha[i - 1][k] >= 0.0);
      CHECK(f.beta[i - 1][k] >= 0.0);
      sum += f.alpha[i - 1][k];
    }
    CHECK(sum == Catch::Approx(1.0).margin(1e-12));
  }
}

TEST_CASE("ssp_check flags a negative coefficient") {
  const ButcherTableau t = make_tableau("", {{-1.0}}, {0.5, 0.5});
  const SspVerdict v = ssp_check(t);
  CHECK_FALSE(v.is_ssp);
  REQUIRE(v.witness.has_value());
  CHECK(v.witness->row == 1);
  CHECK(v.witness->col == 0);
  CHECK(v.witness->value == -1.0);
}

TEST_CASE("ssp_check refuses schemes with zero sub-diagonal coefficients") {
  const ButcherTableau t = make_tableau("", {{0.0}}, {0.5, 0.5});
  CHECK_THROWS_AS(ssp_check(t), NonApplicable);
}

TEST_CASE("construct_shu_osher on rk2-ssp matches the hand computation") {
  const ShuOsherForm f = construct_shu_osher(preset("rk2-ssp"));
  // delta = a_{20}/a_{10} = 1/2, off-column weight min{1/4, 1/2} = 1/4
  REQUIRE(f.stages == 2);
  CHECK(f.alpha[0][0] == Catch::Approx(1.0).margin(1e-15));
  CHECK(f.beta[0][0] == Catch::Approx(1.0).margin(1e-15));
  CHECK(f.alpha[1][0] == Catch::Approx(0.75).margin(1e-15));
  CHECK(f.alpha[1][1] == Catch::Approx(0.25).margin(1e-15));
  CHECK(f.beta[1][0] == Catch::Approx(0.25).margin(1e-15));
  CHECK(f.beta[1][1] == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("constructed beta satisfies the defining relation") {
  for (const auto& name : {"rk2-ssp", "rk3-ssp", "rk3-nondissipative",
                           "rk4-5stage"}) {
    const ButcherTableau& t = preset(name);
    const ShuOsherForm f = construct_shu_osher(t);
    for (int i = 1; i <= t.stages; ++i) {
      for (int k = 0; k < i; ++k) {
        double expected = t.a(i, k);
        for (int j = k + 1; j < i; ++j)
          expected -= f.alpha[i - 1][j] * t.a(j, k);
        CHECK(f.beta[i - 1][k] == Catch::Approx(expected).margin(1e-12));
        CHECK(f.beta[i - 1][k] >= 0.0);
        CHECK(f.alpha[i - 1][k] >= 0.0);
      }
    }
  }
}

TEST_CASE("construct_shu_osher handles the single-stage scheme") {
  const ShuOsherForm f = construct_shu_osher(preset("euler"));
  REQUIRE(f.stages == 1);
  CHECK(f.alpha[0][0] == 1.0);
  CHECK(f.beta[0][0] == 1.0);
}

TEST_CASE("construct_shu_osher rejects nonpositive coefficients") {
  CHECK_THROWS_AS(construct_shu_osher(preset("classic-rk4")),
                  PositivityViolated);
  const ButcherTableau t = make_tableau("", {{1.0}, {0.0, 0.5}},
                                        {0.25, 0.25, 0.5});
  CHECK_THROWS_AS(construct_shu_osher(t), PositivityViolated);
}

TEST_CASE("beta_from_alpha with all weight on the first column copies a") {
  const ButcherTableau& t = preset("rk3-ssp");
  RaggedArray alpha = {{1.0}, {1.0, 0.0}, {1.0, 0.0, 0.0}};
  const ShuOsherForm f = beta_from_alpha(t, alpha);
  for (int i = 1; i <= t.stages; ++i)
    for (int k = 0; k < i; ++k)
      CHECK(f.beta[i - 1][k] == Catch::Approx(t.a(i, k)).margin(1e-15));
}

TEST_CASE("beta_from_alpha reproduces the rk3-ssp staged form") {
  const ButcherTableau& t = preset("rk3-ssp");
  RaggedArray alpha = {{1.0}, {0.75, 0.25}, {1.0 / 3.0, 0.0, 2.0 / 3.0}};
  const ShuOsherForm f = beta_from_alpha(t, alpha);
  CHECK(f.beta[1][0] == Catch::Approx(0.0).margin(1e-15));
  CHECK(f.beta[1][1] == Catch::Approx(0.25).margin(1e-15));
}

TEST_CASE("beta_from_alpha evaluates the rk2 half-half row") {
  const ShuOsherForm f =
      beta_from_alpha(preset("rk2-ssp"), {{1.0}, {0.5, 0.5}});
  CHECK(f.beta[1][0] == Catch::Approx(0.0).margin(1e-15));
  CHECK(f.beta[1][1] == Catch::Approx(0.5).margin(1e-15));
}

TEST_CASE("beta_from_alpha rejects mismatched shapes") {
  CHECK_THROWS_AS(beta_from_alpha(preset("rk2-ssp"), {{1.0}}), ShapeMismatch);
  CHECK_THROWS_AS(beta_from_alpha(preset("rk2-ssp"), {{1.0}, {1.0}}),
                  ShapeMismatch);
}

TEST_CASE("shu_osher_to_butcher inverts the constructed form exactly") {
  const ButcherTableau& t = preset("rk2-ssp");
  const ButcherTableau back = shu_osher_to_butcher(construct_shu_osher(t));
  REQUIRE(back.stages == t.stages);
  for (int i = 1; i <= t.stages; ++i)
    for (int k = 0; k < i; ++k)
      CHECK(back.a(i, k) == Catch::Approx(t.a(i, k)).margin(1e-14));
}

TEST_CASE("shu_osher_to_butcher maps the single-stage form") {
  ShuOsherForm f;
  f.stages = 1;
  f.alpha = {{1.0}};
  f.beta = {{1.0}};
  const ButcherTableau t = shu_osher_to_butcher(f);
  CHECK(t.stages == 1);
  CHECK(t.b()[0] == 1.0);
}

TEST_CASE("five-stage form and its tableau take identical linear steps") {
  const ShuOsherForm& f = rk4_five_stage_form();
  const ButcherTableau& t = preset("rk4-5stage");
  const double tau = 0.37;
  const Vector u0 = {1.0};
  const auto a = shu_osher_stages(u0, f, tau, testutil::linear_rhs);
  const auto b = butcher_stages(u0, t, tau, testutil::linear_rhs);
  CHECK(a.back()[0] == Catch::Approx(b.back()[0]).margin(1e-12));
}

TEST_CASE("round trip through a tableau preserves beta", "[property]") {
  Xoshiro256pp rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const int s = 1 + static_cast<int>(rng.next() % 6);
    ShuOsherForm f;
    f.stages = s;
    f.alpha.resize(static_cast<std::size_t>(s));
    f.beta.resize(static_cast<std::size_t>(s));
    for (int i = 1; i <= s; ++i) {
      double sum = 0.0;
      std::vector<double> row(static_cast<std::size_t>(i));
      for (double& v : row) {
        v = 0.05 + rng.uniform01();
        sum += v;
      }
      for (double& v : row) v /= sum;
      f.alpha[i - 1] = row;
      f.beta[i - 1].resize(static_cast<std::size_t>(i));
      for (double& v : f.beta[i - 1]) v = rng.uniform_sym();
    }
    const ButcherTableau t = shu_osher_to_butcher(f);
    const ShuOsherForm back = beta_from_alpha(t, f.alpha);
    for (int i = 1; i <= s; ++i)
      for (int k = 0; k < i; ++k)
        CHECK(back.beta[i - 1][k] ==
              Catch::Approx(f.beta[i - 1][k]).margin(1e-12));
  }
}

TEST_CASE("verify_order matches the known orders of the presets") {
  CHECK(verify_order(preset("euler"), 1));
  CHECK_FALSE(verify_order(preset("euler"), 2));
  CHECK(verify_order(preset("rk2-ssp"), 2));
  CHECK_FALSE(verify_order(preset("rk2-ssp"), 3));
  CHECK(verify_order(preset("rk3-ssp"), 3));
  CHECK_FALSE(verify_order(preset("rk3-ssp"), 4));
  CHECK(verify_order(preset("classic-rk4"), 4));
  CHECK(verify_order(preset("rk4-5stage"), 4));
}

TEST_CASE("verify_order rejects unsupported targets") {
  CHECK_THROWS_AS(verify_order(preset("rk2-ssp"), 5), Unsupported);
  CHECK_THROWS_AS(verify_order(preset("rk2-ssp"), 0), Unsupported);
}

TEST_CASE("all representations take the same step on the cubic problem",
          "[property]") {
  Xoshiro256pp rng(7);
  for (const auto& name : {"rk2-ssp", "rk3-ssp", "rk3-nondissipative",
                           "rk4-5stage"}) {
    const ButcherTableau& t = preset(name);
    const ShuOsherForm constructed = construct_shu_osher(t);
    const ShuOsherForm trivial = butcher_as_shu_osher(t);
    for (int trial = 0; trial < 100; ++trial) {
      const Vector u0 = {rng.uniform_sym()};
      const double tau = 0.17;
      const double a =
          butcher_stages(u0, t, tau, testutil::cubic_rhs).back()[0];
      const double b =
          shu_osher_stages(u0, constructed, tau, testutil::cubic_rhs).back()[0];
      const double c =
          shu_osher_stages(u0, trivial, tau, testutil::cubic_rhs).back()[0];
      CHECK(b == Catch::Approx(a).margin(1e-12));
      CHECK(c == Catch::Approx(a).margin(1e-12));
    }
  }
}

TEST_CASE("positivity alone decides the verdict for s-stage s-order schemes") {
  // For these schemes the sub-diagonal hypothesis holds automatically.
  for (const auto& name : {"rk2-ssp", "rk3-ssp", "classic-rk4"}) {
    const ButcherTableau& t = preset(name);
    bool all_positive = true;
    for (int i = 1; i <= t.stages; ++i)
      for (int k = 0; k < i; ++k)
        all_positive = all_positive && t.a(i, k) > positivity_floor;
    CHECK(ssp_check(t).is_ssp == all_positive);
  }
}
