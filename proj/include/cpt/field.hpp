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

#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

namespace cpt {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double quarter_pi = std::numbers::pi / 4.0;

//! Contravariant spherical components of a polarization unit vector for a
//! wave running along z: (a)^{-1} and (a)^{+1}; (a)^0 vanishes identically.
struct SphericalAmplitudes {
  Complex minus;  // (a)^{-1}
  Complex plus;   // (a)^{+1}
};

//! One frequency component of the driving field: complex amplitude,
//! ellipticity angle (|tan eps| = minor/major semiaxis ratio, sign = sense
//! of rotation), major-axis orientation, and a tag identifying which comb
//! slot / ground level it addresses.
class FieldComponent {
public:
  FieldComponent(Complex amplitude, double ellipticity, double axis_angle,
                 int frequency_tag = 0)
      : amplitude_(amplitude),
        ellipticity_(ellipticity),
        axis_angle_(axis_angle),
        tag_(frequency_tag) {
    if (std::abs(ellipticity) > quarter_pi + 1e-12)
      throw std::domain_error("FieldComponent: ellipticity outside [-pi/4, pi/4]");
  }

  Complex amplitude() const { return amplitude_; }
  double ellipticity() const { return ellipticity_; }
  double axis_angle() const { return axis_angle_; }
  int frequency_tag() const { return tag_; }

  //! ((a)^{-1}, (a)^{+1}) = (e^{-i axis} sin(eps - pi/4), e^{+i axis} cos(eps - pi/4)).
  //! Squared moduli sum to one for any ellipticity.
  SphericalAmplitudes spherical() const {
    const Complex rot = std::polar(1.0, axis_angle_);
    return {std::conj(rot) * std::sin(ellipticity_ - quarter_pi),
            rot * std::cos(ellipticity_ - quarter_pi)};
  }

private:
  Complex amplitude_;
  double ellipticity_;
  double axis_angle_;
  int tag_;
};

//! Two-frequency field; component 1 addresses the lower ground level F1,
//! component 2 addresses F2. theta is the angle between the major axes.
struct BichromaticField {
  FieldComponent comp1;
  FieldComponent comp2;

  double theta() const { return comp2.axis_angle() - comp1.axis_angle(); }
};

//! Multi-frequency field with equidistant components; adjacent pairs act as
//! bichromatic drives of the same two-photon resonance.
struct CombField {
  std::vector<FieldComponent> components;
};

enum class ConfigKind {
  lin_perp_lin,
  eps_perp_eps,
  eps_perp_minus_eps,
  lin_perp_eps,
  eps_perp_lin,
  sigma_plus_plus,
  sigma_minus_minus,
  eps_par_eps,
};

struct NamedConfigParams {
  std::optional<double> eps1;
  std::optional<double> eps2;
  Complex amp1{1.0, 0.0};
  Complex amp2{1.0, 0.0};
};

namespace detail {
inline void require_consistent(std::optional<double> given, double forced,
                               const char* what) {
  if (given && std::abs(*given - forced) > 1e-12)
    throw std::domain_error(std::string("named_config: contradictory ") + what);
}
}  // namespace detail

//! Builds one of the standard two-component configurations. Perpendicular
//! kinds place the major axes at 0 and pi/2, parallel kinds at 0 and 0.
inline BichromaticField named_config(ConfigKind kind,
                                     const NamedConfigParams& p = {}) {
  double e1 = 0.0, e2 = 0.0, axis2 = pi / 2.0;
  switch (kind) {
    case ConfigKind::lin_perp_lin:
      detail::require_consistent(p.eps1, 0.0, "eps1 for lin-perp-lin");
      detail::require_consistent(p.eps2, 0.0, "eps2 for lin-perp-lin");
      break;
    case ConfigKind::eps_perp_eps:
      if (!p.eps1 && !p.eps2)
        throw std::domain_error("named_config: eps-perp-eps needs an ellipticity");
      e1 = p.eps1 ? *p.eps1 : *p.eps2;
      detail::require_consistent(p.eps2, e1, "eps2 for eps-perp-eps");
      e2 = e1;
      break;
    case ConfigKind::eps_perp_minus_eps:
      if (!p.eps1)
        throw std::domain_error("named_config: eps-perp-minus-eps needs eps1");
      e1 = *p.eps1;
      detail::require_consistent(p.eps2, -e1, "eps2 for eps-perp-minus-eps");
      e2 = -e1;
      break;
    case ConfigKind::lin_perp_eps:
      detail::require_consistent(p.eps1, 0.0, "eps1 for lin-perp-eps");
      if (!p.eps2) throw std::domain_error("named_config: lin-perp-eps needs eps2");
      e2 = *p.eps2;
      break;
    case ConfigKind::eps_perp_lin:
      if (!p.eps1) throw std::domain_error("named_config: eps-perp-lin needs eps1");
      e1 = *p.eps1;
      detail::require_consistent(p.eps2, 0.0, "eps2 for eps-perp-lin");
      break;
    case ConfigKind::sigma_plus_plus:
      detail::require_consistent(p.eps1, quarter_pi, "eps1 for sigma++");
      detail::require_consistent(p.eps2, quarter_pi, "eps2 for sigma++");
      e1 = e2 = quarter_pi;
      axis2 = 0.0;
      break;
    case ConfigKind::sigma_minus_minus:
      detail::require_consistent(p.eps1, -quarter_pi, "eps1 for sigma--");
      detail::require_consistent(p.eps2, -quarter_pi, "eps2 for sigma--");
      e1 = e2 = -quarter_pi;
      axis2 = 0.0;
      break;
    case ConfigKind::eps_par_eps:
      if (!p.eps1) throw std::domain_error("named_config: eps-par-eps needs eps1");
      e1 = *p.eps1;
      e2 = p.eps2 ? *p.eps2 : e1;
      axis2 = 0.0;
      break;
  }
  return {FieldComponent(p.amp1, e1, 0.0, 0),
          FieldComponent(p.amp2, e2, axis2, 1)};
}

//! Expands an eps-perp-eps pair into an n-component comb: common
//! ellipticity, axes alternating by pi/2 so every adjacent pair is again
//! eps-perp-eps, equal amplitude moduli (|E1|) and a constant phase step
//! arg(E2/E1) between neighbours. n = 2 returns the pair unchanged.
inline CombField comb_from_pair(const BichromaticField& base, int n) {
  if (n < 2) throw std::domain_error("comb_from_pair: need n >= 2");
  const double e1 = base.comp1.ellipticity();
  const double e2 = base.comp2.ellipticity();
  const double theta = base.theta();
  const double theta_mod = std::abs(std::remainder(theta, pi));
  if (std::abs(e1 - e2) > 1e-12 || std::abs(theta_mod - pi / 2.0) > 1e-12)
    throw std::domain_error("comb_from_pair: base is not an eps-perp-eps configuration");
  if (n == 2) return {{base.comp1, base.comp2}};
  const double mag = std::abs(base.comp1.amplitude());
  const double phase0 = std::arg(base.comp1.amplitude());
  const double step = std::arg(base.comp2.amplitude() / base.comp1.amplitude());
  CombField comb;
  comb.components.reserve(n);
  for (int k = 0; k < n; ++k)
    comb.components.emplace_back(std::polar(mag, phase0 + k * step), e1,
                                 base.comp1.axis_angle() + k * (pi / 2.0), k);
  return comb;
}

}  // namespace cpt
