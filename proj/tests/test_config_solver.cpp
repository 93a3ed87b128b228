// Copyright 2026 The cptkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch.hpp>

#include <random>

#include "cpt/config_solver.hpp"
#include "cpt/scheme.hpp"

using namespace cpt;

TEST_CASE("solve_perp frozen values") {
  SECTION("symmetric family: sin(2 eps) = -m/(1+F)") {
    const auto s = solve_perp(1, 1, ConfigFamily::perp_symmetric);
    CHECK(s.epsilon1 == Approx(-pi / 12).epsilon(1e-14));
    CHECK(s.epsilon2 == Approx(pi / 12).epsilon(1e-14));
    CHECK(s.theta == Approx(pi / 2));
    const auto cs = solve_perp(3, 1, ConfigFamily::perp_symmetric);
    CHECK(cs.epsilon1 == Approx(-0.5 * std::asin(0.25)).epsilon(1e-14));
  }
  SECTION("lin-perp-eps and eps-perp-lin: tan(eps) = +-m/(1+F)") {
    const auto a = solve_perp(1, 1, ConfigFamily::lin_perp_eps);
    CHECK(a.epsilon1 == 0.0);
    CHECK(std::tan(a.epsilon2) == Approx(0.5).epsilon(1e-14));
    const auto b = solve_perp(1, 1, ConfigFamily::eps_perp_lin);
    CHECK(b.epsilon2 == 0.0);
    CHECK(std::tan(b.epsilon1) == Approx(-0.5).epsilon(1e-14));
  }
  SECTION("m = 0 collapses every perpendicular family to equal ellipticities") {
    const auto g = solve_perp(2, 0, ConfigFamily::perp_general, 0.31);
    CHECK(g.epsilon2 == Approx(0.31).epsilon(1e-12));
    const auto s = solve_perp(2, 0, ConfigFamily::perp_symmetric);
    CHECK(s.epsilon1 == 0.0);
    CHECK(s.epsilon2 == 0.0);
  }
  SECTION("sign symmetry in m") {
    for (int tf = 2; tf <= 8; tf += 2) {
      const HalfInt F = HalfInt::from_twice(tf);
      for (HalfInt m = HalfInt(1); m <= F; m += HalfInt(1)) {
        const auto plus = solve_perp(F, m, ConfigFamily::perp_symmetric);
        const auto minus = solve_perp(F, -m, ConfigFamily::perp_symmetric);
        CHECK(plus.epsilon1 == Approx(-minus.epsilon1));
      }
    }
  }
  SECTION("out-of-range m is a domain error") {
    CHECK_THROWS_AS(solve_perp(1, 2, ConfigFamily::perp_symmetric),
                    std::domain_error);
  }
}

TEST_CASE("check_condition") {
  SECTION("lin-perp-lin solves the 0-0 case for F1=1, F2=2") {
    const auto chk =
        check_condition(1, 2, 2, 0, named_config(ConfigKind::lin_perp_lin));
    CHECK(chk.satisfied);
    CHECK(chk.residual < 1e-14);
    CHECK_FALSE(chk.degenerate_sigma);
  }
  SECTION("symmetric solution for F=3, m=1 passes") {
    const auto sol = solve_perp(3, 1, ConfigFamily::perp_symmetric);
    CHECK(std::sin(2 * sol.epsilon1) == Approx(-0.25).epsilon(1e-14));
    const auto chk = check_condition(3, 4, 4, 1, sol.field());
    CHECK(chk.satisfied);
    CHECK(chk.residual < 1e-12);
  }
  SECTION("sigma+ sigma+ satisfies the condition but is flagged degenerate") {
    const auto chk =
        check_condition(3, 4, 4, 1, named_config(ConfigKind::sigma_plus_plus));
    CHECK(chk.satisfied);
    CHECK(chk.degenerate_sigma);
  }
  SECTION("amplitudes never matter") {
    std::mt19937 rng(41);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    const auto sol = solve_perp(2, 1, ConfigFamily::perp_symmetric);
    for (int i = 0; i < 30; ++i) {
      const auto f = sol.field({u(rng), u(rng)}, {u(rng), u(rng)});
      const auto chk = check_condition(2, 3, 3, 1, f);
      CHECK(chk.satisfied);
      CHECK(chk.residual < 1e-12);
    }
  }
  SECTION("wrong theta fails away from the solution") {
    const auto sol = solve_perp(2, 1, ConfigFamily::perp_symmetric);
    BichromaticField f{FieldComponent({1, 0}, sol.epsilon1, 0.0, 0),
                       FieldComponent({1, 0}, sol.epsilon2, pi / 3, 1)};
    const auto chk = check_condition(2, 3, 3, 1, f);
    CHECK_FALSE(chk.satisfied);
    CHECK(chk.residual > 1e-3);
  }
}

TEST_CASE("theta = pi/2 is forced for F2 = F + 1") {
  // coarse grid here; the acceptance suite runs the full 1-degree scan
  for (int tf : {2, 3, 6}) {
    const HalfInt F = HalfInt::from_twice(tf);
    const HalfInt F2 = F + HalfInt(1);
    for (HalfInt m = -F; m <= F; m += HalfInt(1)) {
      const auto sol = solve_perp(F, m, ConfigFamily::perp_symmetric);
      double best = 1e9, best_theta = -1;
      for (int deg = 0; deg < 180; deg += 5) {
        const double th = deg * pi / 180.0;
        BichromaticField f{FieldComponent({1, 0}, sol.epsilon1, 0.0, 0),
                           FieldComponent({1, 0}, sol.epsilon2, th, 1)};
        const double r = check_condition(F, F2, F + HalfInt(1), m, f).residual;
        if (r < best) {
          best = r;
          best_theta = th;
        }
      }
      CHECK(best_theta == Approx(pi / 2));
      CHECK(best < 1e-12);
    }
  }
}

TEST_CASE("solver/null-space round trip over random instances") {
  std::mt19937 rng(43);
  std::uniform_int_distribution<int> tf(1, 8), fam(0, 3);
  std::uniform_real_distribution<double> epsd(-quarter_pi + 0.05, quarter_pi - 0.05);
  const ConfigFamily fams[4] = {ConfigFamily::perp_general,
                                ConfigFamily::perp_symmetric,
                                ConfigFamily::lin_perp_eps,
                                ConfigFamily::eps_perp_lin};
  for (int i = 0; i < 60; ++i) {
    const HalfInt F = HalfInt::from_twice(tf(rng));
    std::uniform_int_distribution<int> tm(-F.twice(), F.twice());
    HalfInt m = HalfInt::from_twice(tm(rng));
    if (!F.same_parity(m)) m += HalfInt::from_twice(1);
    if (abs(m) > F) m = F;
    const ConfigFamily family = fams[fam(rng)];
    const auto sol = family == ConfigFamily::perp_general
                         ? solve_perp(F, m, family, epsd(rng))
                         : solve_perp(F, m, family);
    const auto f = sol.field();
    const HalfInt F2 = F + HalfInt(1);
    for (HalfInt fe : {F, F + HalfInt(1)}) {
      const auto chk = check_condition(F, F2, fe, m, f);
      CHECK(chk.satisfied);
      CHECK(chk.residual < 1e-12);
      const auto scheme = LevelScheme::generic(F, F2, {fe});
      const auto cands = null_space_dark(scheme, f, m, true);
      REQUIRE(cands.size() == 1);
      const auto pair = analytic_dark_pair(scheme, f, fe, m);
      REQUIRE((pair.plus || pair.minus));
      const auto& ref = pair.plus ? *pair.plus : *pair.minus;
      CHECK(std::abs(cands[0].A2 / cands[0].A1 - ref.A2 / ref.A1) <
            1e-10 * std::abs(ref.A2 / ref.A1));
    }
  }
}

TEST_CASE("parallel-axes variants") {
  SECTION("F2 = F + 2 frozen value: F=1, m=1, eps1=0 gives tan(eps2+pi/4) = 6") {
    const auto s = solve_parallel_fplus2(1, 1, 0.0);
    CHECK(s.theta == 0.0);
    CHECK(std::tan(s.epsilon2 + quarter_pi) == Approx(6.0).epsilon(1e-12));
    const auto s0 = solve_parallel_fplus2(1, 0, 0.17);
    CHECK(s0.epsilon2 == Approx(0.17).epsilon(1e-12));
  }
  SECTION("F2 = F + 2 solutions produce a dark state through Fe = F + 1") {
    for (int m = -1; m <= 1; ++m) {
      const auto s = solve_parallel_fplus2(1, m, 0.1);
      const auto scheme = LevelScheme::generic(1, 3, {2});
      const auto cands = null_space_dark(scheme, s.field(), m, true);
      REQUIRE(cands.size() == 1);
      CHECK(cands[0].residual < 1e-12);
    }
  }
  SECTION("equal ground momenta accept any common ellipticity for every m, Fe") {
    const auto s = solve_parallel_equal_f(0.3);
    CHECK(s.theta == 0.0);
    CHECK(s.epsilon1 == s.epsilon2);
    for (int fe = 1; fe <= 3; ++fe)
      for (int m = -2; m <= 2; ++m) {
        const auto chk = check_condition(2, 2, fe, m, s.field());
        CHECK(chk.satisfied);
      }
  }
  SECTION("circular endpoint is tagged degenerate") {
    const auto s = solve_parallel_equal_f(quarter_pi);
    CHECK(s.family == ConfigFamily::degenerate_sigma);
    const auto g = solve_perp(2, 1, ConfigFamily::perp_general, quarter_pi);
    CHECK(g.family == ConfigFamily::degenerate_sigma);
  }
}
