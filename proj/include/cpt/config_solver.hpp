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

#pragma once

#include <cassert>
#include <cmath>
#include <optional>
#include <string>

#include "cpt/coupling.hpp"
#include "cpt/field.hpp"

namespace cpt {

enum class ConfigFamily {
  perp_general,
  perp_symmetric,
  lin_perp_eps,
  eps_perp_lin,
  parallel_fplus2,
  parallel_equal_f,
  degenerate_sigma,
};

inline const char* to_string(ConfigFamily f) {
  switch (f) {
    case ConfigFamily::perp_general: return "perp_general";
    case ConfigFamily::perp_symmetric: return "perp_symmetric";
    case ConfigFamily::lin_perp_eps: return "lin_perp_eps";
    case ConfigFamily::eps_perp_lin: return "eps_perp_lin";
    case ConfigFamily::parallel_fplus2: return "parallel_Fplus2";
    case ConfigFamily::parallel_equal_f: return "parallel_equalF";
    case ConfigFamily::degenerate_sigma: return "degenerate_sigma";
  }
  return "?";
}

//! A polarization configuration solving the m-m darkness condition.
struct ConfigSolution {
  double theta;
  double epsilon1;
  double epsilon2;
  ConfigFamily family;
  std::string validity_note;

  BichromaticField field(Complex amp1 = {1.0, 0.0},
                         Complex amp2 = {1.0, 0.0}) const {
    return {FieldComponent(amp1, epsilon1, 0.0, 0),
            FieldComponent(amp2, epsilon2, theta, 1)};
  }
};

struct ConditionCheck {
  bool satisfied;
  double residual;
  bool degenerate_sigma;
};

//! Evaluates the darkness compatibility condition for the Lambda pair at
//! (F1, F2, Fe, m):
//!
//!   [C2+ C1- / (C1+ C2-)] e^{2 i theta} = tan(eps1 + pi/4) / tan(eps2 + pi/4)
//!
//! in the pole-free cross-multiplied form, normalized so the residual is
//! scale free. Field amplitudes never enter. Configurations with both
//! components circularly polarized in the same sense satisfy the condition
//! but are flagged degenerate (an end-state trap coexists).
inline ConditionCheck check_condition(HalfInt F1, HalfInt F2, HalfInt Fe,
                                      HalfInt m, const BichromaticField& field,
                                      double tol = 1e-9) {
  if (!dipole_allowed(F1, Fe) && !dipole_allowed(F2, Fe))
    throw std::domain_error("check_condition: Fe unreachable from both levels");
  const HalfInt one(1);
  const double c1p = detail::cg_or_zero(F1, m, one, Fe, m + one).value();
  const double c2p = detail::cg_or_zero(F2, m, one, Fe, m + one).value();
  const double c1m = detail::cg_or_zero(F1, m, -one, Fe, m - one).value();
  const double c2m = detail::cg_or_zero(F2, m, -one, Fe, m - one).value();

  const double e1 = field.comp1.ellipticity();
  const double e2 = field.comp2.ellipticity();
  const bool degenerate =
      (std::abs(e1 - quarter_pi) < 1e-9 && std::abs(e2 - quarter_pi) < 1e-9) ||
      (std::abs(e1 + quarter_pi) < 1e-9 && std::abs(e2 + quarter_pi) < 1e-9);

  const double kscale = std::max(std::abs(c2p * c1m), std::abs(c1p * c2m));
  if (kscale == 0.0) return {true, 0.0, degenerate};  // no two-sided constraint

  const Complex rot = std::polar(1.0, 2.0 * field.theta());
  const Complex a = (c2p * c1m / kscale) * rot * std::cos(e1 + quarter_pi) *
                    std::sin(e2 + quarter_pi);
  const Complex b = (c1p * c2m / kscale) * std::sin(e1 + quarter_pi) *
                    std::cos(e2 + quarter_pi);
  const double scale = std::max(std::abs(a), std::abs(b));
  // both Lambda products vanish (up to the rounding of cos(pi/2)): at most
  // one circular component survives and a single Lambda always has a dark
  // state, so there is nothing to match
  if (scale < 1e-14) return {true, 0.0, degenerate};
  const double residual = std::abs(a - b) / scale;
  return {residual < tol, residual, degenerate};
}

namespace detail {

inline ConfigSolution tag_if_degenerate(ConfigSolution s) {
  if (std::abs(std::abs(s.epsilon1) - quarter_pi) < 1e-12 &&
      std::abs(std::abs(s.epsilon2) - quarter_pi) < 1e-12) {
    s.family = ConfigFamily::degenerate_sigma;
    s.validity_note +=
        "; both components circular: end-state trap makes the dark state impure";
  }
  return s;
}

}  // namespace detail

//! Solves the perpendicular-axes condition for an F2 = F+1 scheme,
//!   (1+F-m)/(1+F+m) = tan(eps1 + pi/4)/tan(eps2 + pi/4),  theta = pi/2.
//! perp_symmetric fixes eps1 = -eps2 = eps via sin(2 eps) = -m/(1+F);
//! lin_perp_eps / eps_perp_lin set the linear component (1 or 2) and the
//! other from tan(eps) = +-m/(1+F); perp_general takes eps1 as given
//! (default 0) and solves for eps2.
inline ConfigSolution solve_perp(HalfInt F, HalfInt m, ConfigFamily family,
                                 std::optional<double> fixed_eps1 = {}) {
  if (!projection_in_range(F, m))
    throw std::domain_error("solve_perp: |m| must not exceed F");
  const double fv = F.value(), mv = m.value();
  ConfigSolution s{pi / 2.0, 0.0, 0.0, family, ""};
  switch (family) {
    case ConfigFamily::perp_symmetric: {
      const double eps = 0.5 * std::asin(-mv / (1.0 + fv));
      s.epsilon1 = eps;
      s.epsilon2 = -eps;
      s.validity_note = "sin(2 eps) = -m/(1+F)";
      break;
    }
    case ConfigFamily::lin_perp_eps: {
      s.epsilon1 = 0.0;
      s.epsilon2 = std::atan(mv / (1.0 + fv));
      s.validity_note = "tan(eps2) = +m/(1+F)";
      break;
    }
    case ConfigFamily::eps_perp_lin: {
      s.epsilon1 = std::atan(-mv / (1.0 + fv));
      s.epsilon2 = 0.0;
      s.validity_note = "tan(eps1) = -m/(1+F)";
      break;
    }
    case ConfigFamily::perp_general: {
      const double e1 = fixed_eps1.value_or(0.0);
      if (std::abs(e1) > quarter_pi + 1e-12)
        throw std::domain_error("solve_perp: fixed eps1 outside [-pi/4, pi/4]");
      s.epsilon1 = e1;
      if (std::abs(e1 - quarter_pi) < 1e-12) {
        s.epsilon2 = quarter_pi;  // tan pole: sigma+ stays sigma+
      } else {
        const double t2 =
            std::tan(e1 + quarter_pi) * (1.0 + fv + mv) / (1.0 + fv - mv);
        s.epsilon2 = std::atan(t2) - quarter_pi;
      }
      s.validity_note = "tan(eps2+pi/4) = tan(eps1+pi/4) (1+F+m)/(1+F-m)";
      break;
    }
    default:
      throw std::domain_error("solve_perp: family is not a perpendicular one");
  }
  assert(std::abs(s.epsilon1) <= quarter_pi + 1e-9 &&
         std::abs(s.epsilon2) <= quarter_pi + 1e-9);
  return detail::tag_if_degenerate(std::move(s));
}

//! Parallel-axes solution for the F1 = F, F2 = F+2, Fe = F+1 scheme:
//!   (1+F-m)(2+F-m) / ((1+F+m)(2+F+m)) = tan(eps1+pi/4)/tan(eps2+pi/4),
//! theta = 0.
inline ConfigSolution solve_parallel_fplus2(HalfInt F, HalfInt m,
                                            std::optional<double> fixed_eps1 = {}) {
  if (!projection_in_range(F, m))
    throw std::domain_error("solve_parallel_fplus2: |m| must not exceed F");
  const double fv = F.value(), mv = m.value();
  const double e1 = fixed_eps1.value_or(0.0);
  if (std::abs(e1) > quarter_pi + 1e-12)
    throw std::domain_error("solve_parallel_fplus2: fixed eps1 outside range");
  ConfigSolution s{0.0, e1, 0.0, ConfigFamily::parallel_fplus2,
                   "tan(eps2+pi/4) = tan(eps1+pi/4) (1+F+m)(2+F+m)/((1+F-m)(2+F-m))"};
  if (std::abs(e1 - quarter_pi) < 1e-12) {
    s.epsilon2 = quarter_pi;
  } else {
    const double ratio =
        ((1.0 + fv + mv) * (2.0 + fv + mv)) / ((1.0 + fv - mv) * (2.0 + fv - mv));
    s.epsilon2 = std::atan(std::tan(e1 + quarter_pi) * ratio) - quarter_pi;
  }
  return detail::tag_if_degenerate(std::move(s));
}

//! F1 = F2 scheme: identical elliptical polarizations with parallel axes
//! solve the condition for every m and every Fe.
inline ConfigSolution solve_parallel_equal_f(double eps = 0.0) {
  if (std::abs(eps) > quarter_pi + 1e-12)
    throw std::domain_error("solve_parallel_equal_f: eps outside [-pi/4, pi/4]");
  ConfigSolution s{0.0, eps, eps, ConfigFamily::parallel_equal_f,
                   "eps1 = eps2, theta = 0; independent of m and Fe"};
  return detail::tag_if_degenerate(std::move(s));
}

}  // namespace cpt
