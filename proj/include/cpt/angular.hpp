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

#include <array>
#include <map>
#include <mutex>
#include <stdexcept>
#include <vector>

#include "cpt/half_int.hpp"
#include "cpt/surd.hpp"

namespace cpt {

//! Alkali D-line identity: D1 is J=1/2 -> J'=1/2, D2 is J=1/2 -> J'=3/2.
//! `generic` marks schemes whose reduced dipole elements are not derived
//! from a fine-structure line (they default to 1).
enum class LineId { d1, d2, generic };

namespace detail {

inline BigInt factorial(int n) {
  static std::mutex mu;
  static std::vector<BigInt> table{BigInt(1)};
  std::lock_guard<std::mutex> lock(mu);
  while (static_cast<int>(table.size()) <= n)
    table.push_back(table.back() * static_cast<int>(table.size()));
  return table[n];
}

// (a+b-c)! (a-b+c)! (-a+b+c)! / (a+b+c+1)!, arguments as twice-values.
inline BigRational triangle_delta2(int ta, int tb, int tc) {
  return BigRational(factorial((ta + tb - tc) / 2) *
                         factorial((ta - tb + tc) / 2) *
                         factorial((-ta + tb + tc) / 2),
                     factorial((ta + tb + tc) / 2 + 1));
}

inline int parity_sign(int n) { return (n % 2 == 0) ? 1 : -1; }

template <typename Fn>
const Surd& memoized(const std::array<int, 6>& key, Fn&& compute) {
  static std::mutex mu;
  static std::map<std::array<int, 6>, Surd> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, compute()).first;
  return it->second;
}

}  // namespace detail

//! Exact Wigner 3j symbol via the Racah sum formula.
//!
//! Throws std::domain_error when a j is negative or a (j, m) pair mixes
//! integer and half-integer character; returns zero for out-of-range
//! projections, violated triangle rules and m1+m2+m3 != 0.
inline Surd wigner_3j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt m1,
                      HalfInt m2, HalfInt m3) {
  const int tj1 = j1.twice(), tj2 = j2.twice(), tj3 = j3.twice();
  const int tm1 = m1.twice(), tm2 = m2.twice(), tm3 = m3.twice();
  if (tj1 < 0 || tj2 < 0 || tj3 < 0)
    throw std::domain_error("wigner_3j: negative angular momentum");
  if (!j1.same_parity(m1) || !j2.same_parity(m2) || !j3.same_parity(m3))
    throw std::domain_error("wigner_3j: projection parity mismatch");
  if (tm1 + tm2 + tm3 != 0) return Surd();
  if (!triangle(j1, j2, j3)) return Surd();
  if (abs(m1) > j1 || abs(m2) > j2 || abs(m3) > j3) return Surd();

  return detail::memoized({tj1, tj2, tj3, tm1, tm2, tm3}, [&] {
    using detail::factorial;
    const int jpm1 = (tj1 + tm1) / 2, jmm1 = (tj1 - tm1) / 2;
    const int jpm2 = (tj2 + tm2) / 2, jmm2 = (tj2 - tm2) / 2;
    const int jpm3 = (tj3 + tm3) / 2, jmm3 = (tj3 - tm3) / 2;
    const int j12m3 = (tj1 + tj2 - tj3) / 2;
    const int a1 = (tj3 - tj2 + tm1) / 2;  // j3 - j2 + m1
    const int a2 = (tj3 - tj1 - tm2) / 2;  // j3 - j1 - m2
    const int tmin = std::max({0, -a1, -a2});
    const int tmax = std::min({j12m3, jmm1, jpm2});
    BigRational sum = 0;
    for (int t = tmin; t <= tmax; ++t) {
      BigRational term(1, factorial(t) * factorial(a1 + t) * factorial(a2 + t) *
                              factorial(j12m3 - t) * factorial(jmm1 - t) *
                              factorial(jpm2 - t));
      sum += (t % 2 == 0) ? term : -term;
    }
    BigRational pref = detail::triangle_delta2(tj1, tj2, tj3);
    pref *= factorial(jpm1) * factorial(jmm1) * factorial(jpm2) *
            factorial(jmm2) * factorial(jpm3) * factorial(jmm3);
    const int phase = detail::parity_sign((tj1 - tj2 - tm3) / 2);
    Surd result = Surd(sum) * Surd::sqrt_rational(pref);
    return phase < 0 ? -result : result;
  });
}

//! Exact Clebsch-Gordan coefficient C^{F M}_{F1 m1, F2 m2} in the
//! Condon-Shortley convention (stretched coefficients positive).
//!
//! Throws std::domain_error for invalid projections (|m| > F or parity
//! mismatch) on any of the three (F, m) pairs; returns zero when
//! M != m1 + m2 or the triangle rule fails.
inline Surd clebsch_gordan(HalfInt F1, HalfInt m1, HalfInt F2, HalfInt m2,
                           HalfInt F, HalfInt M) {
  if (F1.twice() < 0 || F2.twice() < 0 || F.twice() < 0)
    throw std::domain_error("clebsch_gordan: negative angular momentum");
  if (!projection_in_range(F1, m1) || !projection_in_range(F2, m2) ||
      !projection_in_range(F, M))
    throw std::domain_error("clebsch_gordan: projection out of range");
  if (m1 + m2 != M || !triangle(F1, F2, F)) return Surd();
  const int phase = detail::parity_sign((F1 - F2 + M).twice() / 2);
  Surd c = Surd::sqrt_rational(F.twice() + 1) *
           wigner_3j(F1, F2, F, m1, m2, -M);
  return phase < 0 ? -c : c;
}

//! Exact Wigner 6j symbol {j1 j2 j3; j4 j5 j6} via the Racah sum formula.
//!
//! Returns zero when any of the four triads violates the triangle rule or
//! parity consistency; throws only for negative arguments.
inline Surd wigner_6j(HalfInt j1, HalfInt j2, HalfInt j3, HalfInt j4,
                      HalfInt j5, HalfInt j6) {
  const std::array<int, 6> tj{j1.twice(), j2.twice(), j3.twice(),
                              j4.twice(), j5.twice(), j6.twice()};
  for (int t : tj)
    if (t < 0) throw std::domain_error("wigner_6j: negative angular momentum");
  if (!triangle(j1, j2, j3) || !triangle(j1, j5, j6) || !triangle(j4, j2, j6) ||
      !triangle(j4, j5, j3))
    return Surd();

  return detail::memoized(tj, [&] {
    using detail::factorial;
    const int a1 = (tj[0] + tj[1] + tj[2]) / 2;
    const int a2 = (tj[0] + tj[4] + tj[5]) / 2;
    const int a3 = (tj[3] + tj[1] + tj[5]) / 2;
    const int a4 = (tj[3] + tj[4] + tj[2]) / 2;
    const int b1 = (tj[0] + tj[1] + tj[3] + tj[4]) / 2;
    const int b2 = (tj[1] + tj[2] + tj[4] + tj[5]) / 2;
    const int b3 = (tj[0] + tj[2] + tj[3] + tj[5]) / 2;
    const int tmin = std::max({a1, a2, a3, a4});
    const int tmax = std::min({b1, b2, b3});
    BigRational sum = 0;
    for (int t = tmin; t <= tmax; ++t) {
      BigRational term(factorial(t + 1),
                       factorial(t - a1) * factorial(t - a2) *
                           factorial(t - a3) * factorial(t - a4) *
                           factorial(b1 - t) * factorial(b2 - t) *
                           factorial(b3 - t));
      sum += (t % 2 == 0) ? term : -term;
    }
    BigRational pref = detail::triangle_delta2(tj[0], tj[1], tj[2]) *
                       detail::triangle_delta2(tj[0], tj[4], tj[5]) *
                       detail::triangle_delta2(tj[3], tj[1], tj[5]) *
                       detail::triangle_delta2(tj[3], tj[4], tj[2]);
    return Surd(sum) * Surd::sqrt_rational(pref);
  });
}

//! Reduced dipole matrix element d_{F Fe} of an alkali D-line hyperfine
//! transition, defined as the proportionality constant of the coupling
//! <Fe mu| d_q |F m> = d_{F Fe} C^{Fe mu}_{F m, 1 q}.
//!
//! Convention:  d_{F Fe} = (-1)^{J'+I+F+1} sqrt((2F+1)(2J'+1))
//!                         * {J J' 1; Fe F I}
//! with the fine-structure reduced element normalized to 1. This follows
//! from recoupling the electronic J to the nuclear spin I and makes
//! sum_F |d_{F Fe}|^2 = 1 for every Fe, so the d themselves are the
//! spontaneous-decay branching amplitudes. Only ratios of d enter any
//! polarization condition.
inline Surd reduced_dipole(HalfInt F_g, HalfInt F_e, LineId line, HalfInt I) {
  if (line == LineId::generic)
    throw std::domain_error("reduced_dipole: generic scheme has no D-line element");
  const HalfInt J = HalfInt::from_twice(1);
  const HalfInt Jp = line == LineId::d1 ? HalfInt::from_twice(1) : HalfInt::from_twice(3);
  if (!triangle(I, J, F_g))
    throw std::domain_error("reduced_dipole: F incompatible with I (x) J");
  if (!triangle(I, Jp, F_e))
    throw std::domain_error("reduced_dipole: Fe incompatible with I (x) J'");
  const HalfInt phase_hi = Jp + I + F_g + HalfInt(1);
  if (phase_hi.twice() % 2 != 0)
    throw std::domain_error("reduced_dipole: non-integer phase exponent");
  const int phase = detail::parity_sign(phase_hi.twice() / 2);
  Surd d = Surd::sqrt_rational(BigRational((F_g.twice() + 1) * (Jp.twice() + 1))) *
           wigner_6j(J, Jp, HalfInt(1), F_e, F_g, I);
  return phase < 0 ? -d : d;
}

}  // namespace cpt
