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

#include <algorithm>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cpt/angular.hpp"
#include "cpt/half_int.hpp"

namespace cpt {

//! Dipole selection rule for a ground level F and excited level Fe:
//! |F - Fe| <= 1 (triangle with a rank-1 operator) and not 0 -> 0.
inline bool dipole_allowed(HalfInt F, HalfInt Fe) {
  if (!triangle(F, HalfInt(1), Fe)) return false;
  return !(F.twice() == 0 && Fe.twice() == 0);
}

//! Two ground hyperfine levels F1, F2 and a set of excited levels {Fe}.
//! Alkali schemes carry a nuclear spin and a D-line identity from which the
//! reduced dipole elements follow; generic schemes use unit elements.
struct LevelScheme {
  HalfInt nuclear_spin{0};  // I; meaningful for alkali lines only
  LineId line = LineId::generic;
  HalfInt F1{0};
  HalfInt F2{0};
  std::vector<HalfInt> excited;
  bool resolved = true;

  static LevelScheme alkali(LineId line, HalfInt I, std::vector<HalfInt> fes = {}) {
    if (line == LineId::generic)
      throw std::domain_error("LevelScheme::alkali: line must be D1 or D2");
    LevelScheme s;
    s.line = line;
    s.nuclear_spin = I;
    const HalfInt half = HalfInt::from_twice(1);
    s.F1 = I > half ? I - half : half - I;
    s.F2 = I + half;
    if (fes.empty()) {
      const HalfInt Jp = line == LineId::d1 ? half : HalfInt::from_twice(3);
      const HalfInt lo = I > Jp ? I - Jp : Jp - I;
      for (HalfInt fe = lo; fe <= I + Jp; fe += HalfInt(1))
        fes.push_back(fe);
    }
    s.excited = std::move(fes);
    s.validate();
    return s;
  }

  static LevelScheme generic(HalfInt F1, HalfInt F2, std::vector<HalfInt> fes) {
    LevelScheme s;
    s.F1 = F1;
    s.F2 = F2;
    s.excited = std::move(fes);
    s.validate();
    return s;
  }

  void validate() const {
    if (excited.empty())
      throw std::domain_error("LevelScheme: no excited levels");
    if (F1.twice() < 0 || F2.twice() < 0)
      throw std::domain_error("LevelScheme: negative ground momentum");
    for (HalfInt fe : excited)
      if (!dipole_allowed(F1, fe) && !dipole_allowed(F2, fe))
        throw std::domain_error("LevelScheme: excited level " + fe.str() +
                                " unreachable from both ground levels");
    if (line != LineId::generic) {
      const HalfInt half = HalfInt::from_twice(1);
      const HalfInt lo = nuclear_spin > half ? nuclear_spin - half : half - nuclear_spin;
      if (!((F1 == lo && F2 == nuclear_spin + half) ||
            (F2 == lo && F1 == nuclear_spin + half)))
        throw std::domain_error("LevelScheme: ground momenta inconsistent with I");
    }
  }

  bool couples(HalfInt Fg, HalfInt Fe) const { return dipole_allowed(Fg, Fe); }

  //! Reduced dipole element d_{Fg Fe}; unit for generic schemes, zero when
  //! the transition is dipole-forbidden.
  Surd dipole(HalfInt Fg, HalfInt Fe) const {
    if (!dipole_allowed(Fg, Fe)) return Surd();
    if (line == LineId::generic) return Surd(1);
    return reduced_dipole(Fg, Fe, line, nuclear_spin);
  }

  int ground_dim() const { return F1.twice() + F2.twice() + 2; }
};

//! Built-in schemes: "cs-d1", "cs-d2" (I=7/2), "rb87-d1", "rb87-d2" (I=3/2).
inline LevelScheme preset_scheme(std::string_view name) {
  const HalfInt seven_half = HalfInt::from_twice(7);
  const HalfInt three_half = HalfInt::from_twice(3);
  if (name == "cs-d1") return LevelScheme::alkali(LineId::d1, seven_half);
  if (name == "cs-d2") return LevelScheme::alkali(LineId::d2, seven_half);
  if (name == "rb87-d1") return LevelScheme::alkali(LineId::d1, three_half);
  if (name == "rb87-d2") return LevelScheme::alkali(LineId::d2, three_half);
  throw std::domain_error("unknown scheme preset: " + std::string(name));
}

}  // namespace cpt
