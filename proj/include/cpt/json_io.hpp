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

#include <json.hpp>

#include <fstream>
#include <stdexcept>
#include <string>

#include "cpt/config_solver.hpp"
#include "cpt/coupling.hpp"
#include "cpt/field.hpp"
#include "cpt/scheme.hpp"

namespace cpt {

using Json = nlohmann::ordered_json;

// Half-integers travel as strings ("3", "7/2") to keep quantum numbers exact.
inline Json to_json(HalfInt h) { return h.str(); }

inline HalfInt half_int_from_json(const Json& j) {
  if (j.is_number_integer()) return HalfInt(j.get<int>());
  if (j.is_string()) {
    auto h = HalfInt::parse(j.get<std::string>());
    if (h) return *h;
  }
  throw std::domain_error("expected a half-integer like \"3\" or \"7/2\", got " +
                          j.dump());
}

//! Angles are radians; the "deg:" prefix converts from degrees.
inline double angle_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.rfind("deg:", 0) == 0) return std::stod(s.substr(4)) * pi / 180.0;
    return std::stod(s);
  }
  throw std::domain_error("expected an angle (radians or \"deg:<value>\")");
}

inline Json to_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

inline Complex complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  return {j.value("re", 0.0), j.value("im", 0.0)};
}

inline Json to_json(const FieldComponent& c) {
  return Json{{"amplitude", to_json(c.amplitude())},
              {"ellipticity_rad", c.ellipticity()},
              {"axis_angle_rad", c.axis_angle()},
              {"tag", c.frequency_tag()}};
}

inline FieldComponent field_component_from_json(const Json& j) {
  return FieldComponent(complex_from_json(j.at("amplitude")),
                        angle_from_json(j.at("ellipticity_rad")),
                        angle_from_json(j.at("axis_angle_rad")),
                        j.value("tag", 0));
}

inline Json to_json(const BichromaticField& f) {
  return Json{{"components", Json::array({to_json(f.comp1), to_json(f.comp2)})}};
}

inline Json to_json(const CombField& comb) {
  Json arr = Json::array();
  for (const auto& c : comb.components) arr.push_back(to_json(c));
  return Json{{"components", arr}};
}

inline BichromaticField bichromatic_from_json(const Json& j) {
  const auto& arr = j.at("components");
  if (!arr.is_array() || arr.size() != 2)
    throw std::domain_error("field JSON must contain exactly 2 components");
  return {field_component_from_json(arr[0]), field_component_from_json(arr[1])};
}

inline CombField comb_from_json(const Json& j) {
  const auto& arr = j.at("components");
  if (!arr.is_array() || arr.size() < 2)
    throw std::domain_error("comb JSON must contain at least 2 components");
  CombField comb;
  for (const auto& c : arr) comb.components.push_back(field_component_from_json(c));
  return comb;
}

inline Json to_json(LineId line) {
  switch (line) {
    case LineId::d1: return "D1";
    case LineId::d2: return "D2";
    case LineId::generic: return "generic";
  }
  return "generic";
}

inline LineId line_from_json(const Json& j) {
  std::string s = j.get<std::string>();
  for (auto& ch : s) ch = static_cast<char>(std::tolower(ch));
  if (s == "d1") return LineId::d1;
  if (s == "d2") return LineId::d2;
  if (s == "generic") return LineId::generic;
  throw std::domain_error("line must be D1, D2 or generic");
}

inline Json to_json(const LevelScheme& s) {
  Json fes = Json::array();
  for (HalfInt fe : s.excited) fes.push_back(to_json(fe));
  return Json{{"I", to_json(s.nuclear_spin)}, {"line", to_json(s.line)},
              {"F1", to_json(s.F1)},          {"F2", to_json(s.F2)},
              {"excited", fes},               {"resolved", s.resolved}};
}

inline LevelScheme scheme_from_json(const Json& j) {
  LevelScheme s;
  s.line = j.contains("line") ? line_from_json(j.at("line")) : LineId::generic;
  if (j.contains("I")) s.nuclear_spin = half_int_from_json(j.at("I"));
  s.F1 = half_int_from_json(j.at("F1"));
  s.F2 = half_int_from_json(j.at("F2"));
  for (const auto& fe : j.at("excited")) s.excited.push_back(half_int_from_json(fe));
  s.resolved = j.value("resolved", true);
  s.validate();
  return s;
}

inline Json to_json(const DarkStateCandidate& c) {
  return Json{{"m", to_json(c.m)},
              {"A1", to_json(c.A1)},
              {"A2", to_json(c.A2)},
              {"residual", c.residual}};
}

inline Json to_json(const TrapState& t) {
  return Json{{"level", t.level == 0 ? "F1" : "F2"},
              {"F", to_json(t.F)},
              {"m", to_json(t.m)}};
}

inline Json to_json(const ConfigSolution& s) {
  return Json{{"theta_rad", s.theta},
              {"epsilon1_rad", s.epsilon1},
              {"epsilon2_rad", s.epsilon2},
              {"family", to_string(s.family)},
              {"validity_note", s.validity_note}};
}

//! Loads a scheme from a preset name or a JSON file path.
inline LevelScheme load_scheme(const std::string& spec) {
  if (spec == "cs-d1" || spec == "cs-d2" || spec == "rb87-d1" || spec == "rb87-d2")
    return preset_scheme(spec);
  std::ifstream in(spec);
  if (!in) throw std::domain_error("cannot open scheme file: " + spec);
  Json j;
  in >> j;
  return scheme_from_json(j);
}

//! Parses a field: either a JSON file path or a named-configuration
//! shorthand such as "lin-perp-lin", "eps-perp-minus-eps:-0.26",
//! "eps-perp-eps:deg:15", "sigma++", "eps-par-eps:0.1,0.2".
inline BichromaticField load_field(const std::string& spec) {
  auto parse_angle_str = [](const std::string& s) {
    if (s.rfind("deg:", 0) == 0) return std::stod(s.substr(4)) * pi / 180.0;
    return std::stod(s);
  };
  auto named = [&](ConfigKind kind, const std::string& args,
                   int n_eps) -> BichromaticField {
    NamedConfigParams p;
    if (n_eps >= 1 && !args.empty()) {
      const auto comma = args.find(',');
      if (comma == std::string::npos) {
        p.eps1 = parse_angle_str(args);
      } else {
        p.eps1 = parse_angle_str(args.substr(0, comma));
        p.eps2 = parse_angle_str(args.substr(comma + 1));
      }
      if (kind == ConfigKind::lin_perp_eps) {
        p.eps2 = p.eps1;
        p.eps1.reset();
      }
    } else if (n_eps >= 1) {
      throw std::domain_error("field shorthand needs an ellipticity argument");
    }
    return named_config(kind, p);
  };
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string args = colon == std::string::npos ? "" : spec.substr(colon + 1);
  if (head == "lin-perp-lin") return named_config(ConfigKind::lin_perp_lin);
  if (head == "sigma++") return named_config(ConfigKind::sigma_plus_plus);
  if (head == "sigma--") return named_config(ConfigKind::sigma_minus_minus);
  if (head == "eps-perp-eps") return named(ConfigKind::eps_perp_eps, args, 1);
  if (head == "eps-perp-minus-eps")
    return named(ConfigKind::eps_perp_minus_eps, args, 1);
  if (head == "lin-perp-eps") return named(ConfigKind::lin_perp_eps, args, 1);
  if (head == "eps-perp-lin") return named(ConfigKind::eps_perp_lin, args, 1);
  if (head == "eps-par-eps") return named(ConfigKind::eps_par_eps, args, 1);
  std::ifstream in(spec);
  if (!in) throw std::domain_error("cannot open field file: " + spec);
  Json j;
  in >> j;
  return bichromatic_from_json(j);
}

}  // namespace cpt
