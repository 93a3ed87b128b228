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

#include "cpt/field.hpp"
#include "cpt/json_io.hpp"

using namespace cpt;

TEST_CASE("spherical components at the distinguished ellipticities") {
  const auto sp = FieldComponent({1, 0}, quarter_pi, 0.0).spherical();
  CHECK(std::abs(sp.minus) == Approx(0.0).margin(1e-15));
  CHECK(sp.plus.real() == Approx(1.0).epsilon(1e-15));

  const auto sm = FieldComponent({1, 0}, -quarter_pi, 0.0).spherical();
  CHECK(sm.minus.real() == Approx(-1.0).epsilon(1e-15));
  CHECK(std::abs(sm.plus) == Approx(0.0).margin(1e-15));

  const auto lin = FieldComponent({1, 0}, 0.0, 0.0).spherical();
  CHECK(lin.minus.real() == Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(lin.plus.real() == Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

  CHECK_THROWS_AS(FieldComponent({1, 0}, 1.0, 0.0), std::domain_error);
}

TEST_CASE("polarization properties over random parameters") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> eps(-quarter_pi, quarter_pi);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const double e = eps(rng), th = ang(rng);
    const auto s = FieldComponent({1, 0}, e, th).spherical();
    // unit norm
    CHECK(std::norm(s.minus) + std::norm(s.plus) == Approx(1.0).epsilon(1e-14));
    // ellipticity sign flip mirrors the circular weights
    const auto sflip = FieldComponent({1, 0}, -e, th).spherical();
    CHECK(std::abs(sflip.minus) == Approx(std::abs(s.plus)).margin(1e-14));
    CHECK(std::abs(sflip.plus) == Approx(std::abs(s.minus)).margin(1e-14));
    // axis shift by pi leaves the intensities unchanged
    const auto spi = FieldComponent({1, 0}, e, th + pi).spherical();
    CHECK(std::abs(spi.minus) == Approx(std::abs(s.minus)).margin(1e-14));
    CHECK(std::abs(spi.plus) == Approx(std::abs(s.plus)).margin(1e-14));
  }
}

TEST_CASE("named configurations") {
  const auto f = named_config(ConfigKind::eps_perp_minus_eps, {.eps1 = -pi / 12});
  CHECK(f.comp1.ellipticity() == Approx(-pi / 12));
  CHECK(f.comp2.ellipticity() == Approx(pi / 12));
  CHECK(f.theta() == Approx(pi / 2));

  const auto spp = named_config(ConfigKind::sigma_plus_plus);
  for (const auto* c : {&spp.comp1, &spp.comp2}) {
    const auto s = c->spherical();
    CHECK(std::abs(s.minus) == Approx(0.0).margin(1e-15));
    CHECK(s.plus.real() == Approx(1.0));
  }

  const auto lpl = named_config(ConfigKind::lin_perp_lin);
  CHECK(lpl.comp1.ellipticity() == 0.0);
  CHECK(lpl.comp2.ellipticity() == 0.0);
  CHECK(lpl.theta() == Approx(pi / 2));

  const auto par = named_config(ConfigKind::eps_par_eps, {.eps1 = 0.2, .eps2 = 0.3});
  CHECK(par.theta() == Approx(0.0));

  // contradictory parameters
  CHECK_THROWS_AS(named_config(ConfigKind::lin_perp_lin, {.eps1 = 0.1}),
                  std::domain_error);
  CHECK_THROWS_AS(
      named_config(ConfigKind::eps_perp_minus_eps, {.eps1 = 0.1, .eps2 = 0.1}),
      std::domain_error);
  CHECK_THROWS_AS(named_config(ConfigKind::eps_perp_eps, {}), std::domain_error);
}

TEST_CASE("comb construction") {
  const auto base = named_config(ConfigKind::eps_perp_eps, {.eps1 = 0.0});
  SECTION("n = 2 returns the pair unchanged") {
    const auto comb = comb_from_pair(base, 2);
    REQUIRE(comb.components.size() == 2);
    CHECK(comb.components[0].axis_angle() == base.comp1.axis_angle());
    CHECK(comb.components[1].axis_angle() == base.comp2.axis_angle());
  }
  SECTION("n = 5 linear comb alternates x, y, x, y, x") {
    const auto comb = comb_from_pair(base, 5);
    REQUIRE(comb.components.size() == 5);
    for (int k = 0; k < 5; ++k) {
      const double axis = comb.components[k].axis_angle();
      CHECK(std::abs(std::remainder(axis - (k % 2) * pi / 2.0, pi)) ==
            Approx(0.0).margin(1e-12));
      CHECK(comb.components[k].frequency_tag() == k);
      CHECK(std::abs(comb.components[k].amplitude()) == Approx(1.0));
    }
  }
  SECTION("adjacent pairs of an elliptic comb are eps-perp-eps again") {
    const auto comb =
        comb_from_pair(named_config(ConfigKind::eps_perp_eps, {.eps1 = pi / 6}), 4);
    for (std::size_t k = 0; k + 1 < comb.components.size(); ++k) {
      CHECK(comb.components[k].ellipticity() ==
            Approx(comb.components[k + 1].ellipticity()));
      const double th = comb.components[k + 1].axis_angle() -
                        comb.components[k].axis_angle();
      CHECK(std::abs(std::remainder(th, pi)) == Approx(pi / 2).margin(1e-12));
    }
  }
  SECTION("rejects non-eps-perp-eps bases") {
    CHECK_THROWS_AS(
        comb_from_pair(named_config(ConfigKind::eps_perp_minus_eps, {.eps1 = 0.2}), 3),
        std::domain_error);
    CHECK_THROWS_AS(comb_from_pair(base, 1), std::domain_error);
  }
}

TEST_CASE("field JSON round trip") {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> eps(-quarter_pi, quarter_pi);
  std::uniform_real_distribution<double> ang(-3.0, 3.0);
  for (int i = 0; i < 20; ++i) {
    const BichromaticField f{
        FieldComponent({ang(rng), ang(rng)}, eps(rng), ang(rng), 0),
        FieldComponent({ang(rng), ang(rng)}, eps(rng), ang(rng), 1)};
    const BichromaticField g = bichromatic_from_json(to_json(f));
    for (auto [a, b] : {std::pair{&f.comp1, &g.comp1}, std::pair{&f.comp2, &g.comp2}}) {
      CHECK(a->amplitude() == b->amplitude());
      CHECK(a->ellipticity() == b->ellipticity());
      CHECK(a->axis_angle() == b->axis_angle());
      CHECK(a->frequency_tag() == b->frequency_tag());
    }
  }
  // angle strings with the deg: prefix parse
  const Json j{{"amplitude", Json{{"re", 1.0}, {"im", 0.0}}},
               {"ellipticity_rad", "deg:45"},
               {"axis_angle_rad", 0.0},
               {"tag", 0}};
  CHECK(field_component_from_json(j).ellipticity() == Approx(quarter_pi));
}

TEST_CASE("scheme JSON round trip") {
  for (const char* name : {"cs-d1", "cs-d2", "rb87-d1", "rb87-d2"}) {
    const LevelScheme s = preset_scheme(name);
    const LevelScheme t = scheme_from_json(to_json(s));
    CHECK(t.nuclear_spin == s.nuclear_spin);
    CHECK(t.line == s.line);
    CHECK(t.F1 == s.F1);
    CHECK(t.F2 == s.F2);
    CHECK(t.excited == s.excited);
    CHECK(t.resolved == s.resolved);
  }
  const LevelScheme g = LevelScheme::generic(1, 3, {2});
  const LevelScheme g2 = scheme_from_json(to_json(g));
  CHECK(g2.line == LineId::generic);
  CHECK(g2.F2 == HalfInt(3));
  // malformed schemes are rejected
  CHECK_THROWS_AS(scheme_from_json(Json{{"F1", "1"},
                                        {"F2", "2"},
                                        {"excited", Json::array({"7"})}}),
                  std::domain_error);
}
