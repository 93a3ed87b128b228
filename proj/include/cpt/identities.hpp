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

#include <string>
#include <vector>

#include "cpt/coupling.hpp"

namespace cpt {

struct IdentityReport {
  std::string name;
  long cases = 0;
  long failures = 0;
  bool pass() const { return failures == 0 && cases > 0; }
};

namespace detail {

inline Surd int_surd(HalfInt h) {
  if (h.twice() % 2 != 0) throw std::domain_error("int_surd: not an integer");
  return Surd(h.twice() / 2);
}

}  // namespace detail

//! Exact check, over all F up to max_F and Fe in {F, F+1}, that
//!   C^{Fe m+1}_{(F+1)m,11} C^{Fe m-1}_{Fm,1-1}
//!   --------------------------------------------- = -(1+F-m)/(1+F+m),
//!   C^{Fe m+1}_{Fm,11}     C^{Fe m-1}_{(F+1)m,1-1}
//! in the cross-multiplied form that stays valid where edge coefficients
//! vanish. The ratio is negative, which forces theta = pi/2.
inline IdentityReport verify_cg_ratio_negativity(HalfInt max_F) {
  IdentityReport rep{"cg-ratio vs -(1+F-m)/(1+F+m)"};
  const HalfInt one(1);
  for (int tf = 1; tf <= max_F.twice(); ++tf) {
    const HalfInt F = HalfInt::from_twice(tf);
    const HalfInt F2 = F + one;
    for (HalfInt m = -F; m <= F; m += one) {
      for (HalfInt Fe : {F, F + one}) {
        const Surd c2p = detail::cg_or_zero(F2, m, one, Fe, m + one);
        const Surd c1m = detail::cg_or_zero(F, m, -one, Fe, m - one);
        const Surd c1p = detail::cg_or_zero(F, m, one, Fe, m + one);
        const Surd c2m = detail::cg_or_zero(F2, m, -one, Fe, m - one);
        const Surd lhs = c2p * c1m * detail::int_surd(one + F + m);
        const Surd rhs = -(detail::int_surd(one + F - m) * c1p * c2m);
        ++rep.cases;
        if (!(lhs == rhs)) ++rep.failures;
      }
    }
  }
  return rep;
}

//! Exact check of the D1 (J' = 1/2) dipole-ratio identity
//!   d_{F Fe} C^{Fe m+1}_{Fm,11} / (d_{(F+1)Fe} C^{Fe m+1}_{(F+1)m,11})
//!     = -sqrt((1+F+m)/(1+F-m))
//! for both Fe in {F, F+1}, with the nuclear spin I = F + 1/2 that makes
//! {F, F+1} the alkali ground doublet. Fe independence of this ratio is
//! what preserves the dark states without excited-state spectral resolution.
inline IdentityReport verify_d1_ratio(HalfInt max_F) {
  IdentityReport rep{"D1 ratio vs -sqrt((1+F+m)/(1+F-m))"};
  const HalfInt one(1), half = HalfInt::from_twice(1);
  for (int tf = 1; tf <= max_F.twice(); ++tf) {
    const HalfInt F = HalfInt::from_twice(tf);
    const HalfInt I = F + half;
    const Surd dF[2] = {reduced_dipole(F, F, LineId::d1, I),
                        reduced_dipole(F, F + one, LineId::d1, I)};
    const Surd dF1[2] = {reduced_dipole(F + one, F, LineId::d1, I),
                         reduced_dipole(F + one, F + one, LineId::d1, I)};
    for (HalfInt m = -F; m <= F; m += one) {
      for (int k = 0; k < 2; ++k) {
        const HalfInt Fe = k == 0 ? F : F + one;
        const Surd num = dF[k] * detail::cg_or_zero(F, m, one, Fe, m + one);
        const Surd den = dF1[k] * detail::cg_or_zero(F + one, m, one, Fe, m + one);
        const Surd lhs = num * Surd::sqrt_rational((one + F - m).twice() / 2);
        const Surd rhs =
            -(Surd::sqrt_rational((one + F + m).twice() / 2) * den);
        ++rep.cases;
        if (!(lhs == rhs)) ++rep.failures;
      }
    }
  }
  return rep;
}

//! The D2 (J' = 3/2) closed form of the same ratio,
//!   -(F-Fe+2)(F+Fe+3) sqrt(1+F+m) / ((F-Fe-1)(F+Fe) sqrt(1+F-m)),
//! checked exactly for Fe in {F, F+1}; the two Fe values always give
//! different ratios, so no common dark state survives degenerate excited
//! hyperfine structure on D2.
inline IdentityReport verify_d2_ratio(HalfInt max_F) {
  IdentityReport rep{"D2 ratio closed form + Fe dependence"};
  const HalfInt one(1), half = HalfInt::from_twice(1);
  auto closed_form = [&](HalfInt F, HalfInt m, HalfInt Fe) {
    const long a = (F - Fe).twice() / 2 + 2;  // F - Fe + 2
    const long b = (F + Fe).twice() / 2 + 3;  // F + Fe + 3
    const long c = (F - Fe).twice() / 2 - 1;  // F - Fe - 1
    const long d = (F + Fe).twice() / 2;      // F + Fe
    const BigRational coeff = make_rational(-a * b, c * d);
    const BigRational rad((one + F + m).twice() / 2, (one + F - m).twice() / 2);
    return Surd::make(coeff, rad);
  };
  for (int tf = 1; tf <= max_F.twice(); ++tf) {
    const HalfInt F = HalfInt::from_twice(tf);
    const HalfInt I = F + half;
    for (HalfInt m = -F; m <= F; m += one) {
      Surd forms[2];
      for (int k = 0; k < 2; ++k) {
        const HalfInt Fe = k == 0 ? F : F + one;
        const Surd dF = reduced_dipole(F, Fe, LineId::d2, I);
        const Surd dF1 = reduced_dipole(F + one, Fe, LineId::d2, I);
        const Surd num = dF * detail::cg_or_zero(F, m, one, Fe, m + one);
        const Surd den = dF1 * detail::cg_or_zero(F + one, m, one, Fe, m + one);
        forms[k] = closed_form(F, m, Fe);
        // cross-multiplied: num = form * den
        ++rep.cases;
        if (!(num == forms[k] * den)) ++rep.failures;
      }
      ++rep.cases;
      if (forms[0] == forms[1]) ++rep.failures;  // must differ for every m
    }
  }
  return rep;
}

//! Exact Clebsch-Gordan orthogonality
//!   sum_{m1,m2} C^{F M}_{F1 m1, F2 m2} C^{F' M'}_{F1 m1, F2 m2} = delta delta
//! over all F1, F2 up to max_F.
inline IdentityReport verify_cg_orthogonality(HalfInt max_F) {
  IdentityReport rep{"CG orthogonality"};
  const HalfInt one(1);
  for (int tf1 = 1; tf1 <= max_F.twice(); ++tf1) {
    for (int tf2 = tf1; tf2 <= max_F.twice(); ++tf2) {
      const HalfInt F1 = HalfInt::from_twice(tf1);
      const HalfInt F2 = HalfInt::from_twice(tf2);
      for (HalfInt M = -(F1 + F2); M <= F1 + F2; M += one) {
        const HalfInt Flo = abs(F1 - F2) < abs(M) ? abs(M) : abs(F1 - F2);
        for (HalfInt Fa = Flo; Fa <= F1 + F2; Fa += one) {
          for (HalfInt Fb = Fa; Fb <= F1 + F2; Fb += one) {
            Surd sum;
            for (HalfInt m1 = -F1; m1 <= F1; m1 += one) {
              const HalfInt m2 = M - m1;
              if (!projection_in_range(F2, m2)) continue;
              sum = sum + clebsch_gordan(F1, m1, F2, m2, Fa, M) *
                              clebsch_gordan(F1, m1, F2, m2, Fb, M);
            }
            ++rep.cases;
            const Surd expected = Fa == Fb ? Surd(1) : Surd();
            if (!(sum == expected)) ++rep.failures;
          }
        }
      }
    }
  }
  return rep;
}

inline std::vector<IdentityReport> run_identity_suite(HalfInt max_F) {
  return {verify_cg_ratio_negativity(max_F), verify_d1_ratio(max_F),
          verify_d2_ratio(max_F), verify_cg_orthogonality(max_F)};
}

}  // namespace cpt
