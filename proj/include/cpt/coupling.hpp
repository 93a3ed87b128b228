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

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "cpt/field.hpp"
#include "cpt/scheme.hpp"

namespace cpt {

namespace detail {

// C^{Fe mu}_{F m, 1 q} treated as zero when mu is out of range for Fe.
inline Surd cg_or_zero(HalfInt F, HalfInt m, HalfInt q, HalfInt Fe, HalfInt mu) {
  if (!projection_in_range(Fe, mu)) return Surd();
  return clebsch_gordan(F, m, HalfInt(1), q, Fe, mu);
}

}  // namespace detail

//! Rotating-wave coupling block for one excited level Fe. Rows are the
//! excited Zeeman states |Fe, mu>, columns the ground states |F1, m>
//! followed by |F2, m>. Entry (mu; Fj, m) = d_{Fj Fe} E_j C^{Fe mu}_{Fj m, 1 q}
//! (a_j)^q with q = mu - m; q = 0 never contributes since (a)^0 = 0.
class CouplingMatrix {
public:
  CouplingMatrix(const LevelScheme& scheme, HalfInt Fe, Eigen::MatrixXcd mat)
      : F1_(scheme.F1), F2_(scheme.F2), Fe_(Fe), mat_(std::move(mat)) {}

  HalfInt F1() const { return F1_; }
  HalfInt F2() const { return F2_; }
  HalfInt Fe() const { return Fe_; }
  const Eigen::MatrixXcd& matrix() const { return mat_; }

  int rows() const { return static_cast<int>(mat_.rows()); }
  int cols() const { return static_cast<int>(mat_.cols()); }

  int row_index(HalfInt mu) const { return (mu + Fe_).twice() / 2; }
  //! level 0 -> F1 block, level 1 -> F2 block.
  int col_index(int level, HalfInt m) const {
    const HalfInt F = level == 0 ? F1_ : F2_;
    const int offset = level == 0 ? 0 : F1_.twice() + 1;
    return offset + (m + F).twice() / 2;
  }

  Complex entry(HalfInt mu, int level, HalfInt m) const {
    return mat_(row_index(mu), col_index(level, m));
  }

private:
  HalfInt F1_, F2_, Fe_;
  Eigen::MatrixXcd mat_;
};

//! Builds the rotating-wave coupling block for one excited level.
//! Component 1 drives F1, component 2 drives F2 (the resonant assignment of
//! the two-photon scheme). Throws when Fe is not in the scheme or is
//! dipole-forbidden from both ground levels.
inline CouplingMatrix build_coupling(const LevelScheme& scheme,
                                     const BichromaticField& field, HalfInt Fe) {
  if (std::find(scheme.excited.begin(), scheme.excited.end(), Fe) ==
      scheme.excited.end())
    throw std::domain_error("build_coupling: Fe not part of the scheme");
  if (!scheme.couples(scheme.F1, Fe) && !scheme.couples(scheme.F2, Fe))
    throw std::domain_error("build_coupling: Fe violates selection rules");

  const int n_e = Fe.twice() + 1;
  Eigen::MatrixXcd mat = Eigen::MatrixXcd::Zero(n_e, scheme.ground_dim());
  CouplingMatrix out(scheme, Fe, mat);

  const FieldComponent* comps[2] = {&field.comp1, &field.comp2};
  for (int level = 0; level < 2; ++level) {
    const HalfInt F = level == 0 ? scheme.F1 : scheme.F2;
    const double d = scheme.dipole(F, Fe).value();
    if (d == 0.0) continue;
    const auto sph = comps[level]->spherical();
    const Complex amp = comps[level]->amplitude();
    for (HalfInt m = -F; m <= F; m += HalfInt(1)) {
      for (int qi : {-1, +1}) {
        const HalfInt q(qi);
        const HalfInt mu = m + q;
        if (!projection_in_range(Fe, mu)) continue;
        const Complex pol = qi == 1 ? sph.plus : sph.minus;
        const double cg = detail::cg_or_zero(F, m, q, Fe, mu).value();
        mat(out.row_index(mu), out.col_index(level, m)) += d * amp * cg * pol;
      }
    }
  }
  return CouplingMatrix(scheme, Fe, std::move(mat));
}

//! The four legs of the per-m Lambda pair: |F1,m>,|F2,m> -> |Fe, m+1>
//! (sigma+) and -> |Fe, m-1> (sigma-). Legs whose target projection is out
//! of range are zero.
struct LambdaSystem {
  Complex plus_f1{};   // |F1,m> -> |Fe,m+1>
  Complex plus_f2{};   // |F2,m> -> |Fe,m+1>
  Complex minus_f1{};  // |F1,m> -> |Fe,m-1>
  Complex minus_f2{};  // |F2,m> -> |Fe,m-1>
};

inline LambdaSystem lambda_system(const LevelScheme& scheme,
                                  const BichromaticField& field, HalfInt Fe,
                                  HalfInt m) {
  if (!projection_in_range(scheme.F1, m) || !projection_in_range(scheme.F2, m))
    throw std::domain_error("lambda_system: m out of range for the ground levels");
  auto leg = [&](int level, int qi) -> Complex {
    const HalfInt F = level == 0 ? scheme.F1 : scheme.F2;
    const FieldComponent& c = level == 0 ? field.comp1 : field.comp2;
    const HalfInt mu = m + HalfInt(qi);
    if (!projection_in_range(Fe, mu)) return {};
    const auto sph = c.spherical();
    const Complex pol = qi == 1 ? sph.plus : sph.minus;
    return scheme.dipole(F, Fe).value() * c.amplitude() *
           detail::cg_or_zero(F, m, HalfInt(qi), Fe, mu).value() * pol;
  };
  return {leg(0, +1), leg(1, +1), leg(0, -1), leg(1, -1)};
}

//! m-m superposition A1 |F1,m> + A2 |F2,m> with |A1|^2 + |A2|^2 = 1 and a
//! darkness residual ||V psi|| / ||V||. Reported with A1 real positive
//! (A2 real positive when A1 vanishes).
struct DarkStateCandidate {
  HalfInt m;
  Complex A1;
  Complex A2;
  double residual = 0.0;
};

namespace detail {

inline DarkStateCandidate canonical_candidate(HalfInt m, Complex a1, Complex a2,
                                              double residual) {
  const double norm = std::sqrt(std::norm(a1) + std::norm(a2));
  a1 /= norm;
  a2 /= norm;
  const Complex anchor = std::abs(a1) > 1e-12 ? a1 : a2;
  const Complex phase = std::conj(anchor) / std::abs(anchor);
  return {m, a1 * phase, a2 * phase, residual};
}

}  // namespace detail

//! The analytic dark states of the two per-m Lambda systems: dark_plus
//! nullifies the sigma+ legs, dark_minus the sigma- legs, with
//! A2/A1 = -leg(F1)/leg(F2). A side whose Lambda is incomplete (a vanishing
//! leg imposes no two-level constraint) is reported as nullopt. Residuals
//! are measured against the respective circular component only.
struct AnalyticDarkPair {
  std::optional<DarkStateCandidate> plus;
  std::optional<DarkStateCandidate> minus;
};

inline AnalyticDarkPair analytic_dark_pair(const LevelScheme& scheme,
                                           const BichromaticField& field,
                                           HalfInt Fe, HalfInt m) {
  const LambdaSystem lam = lambda_system(scheme, field, Fe, m);
  auto solve = [&](Complex v1, Complex v2) -> std::optional<DarkStateCandidate> {
    const double scale = std::max(std::abs(v1), std::abs(v2));
    if (scale == 0.0 || std::abs(v1) < 1e-15 * scale ||
        std::abs(v2) < 1e-15 * scale)
      return std::nullopt;
    const Complex ratio = -v1 / v2;
    auto cand = detail::canonical_candidate(m, Complex(1.0, 0.0), ratio, 0.0);
    cand.residual = std::abs(cand.A1 * v1 + cand.A2 * v2) / scale;
    return cand;
  };
  return {solve(lam.plus_f1, lam.plus_f2), solve(lam.minus_f1, lam.minus_f2)};
}

//! Numeric dark states at fixed m: null space of the coupling restricted to
//! span{|F1,m>, |F2,m>}, stacked over the given excited levels. A singular
//! value below rel_threshold times the largest marks a null direction.
inline std::vector<DarkStateCandidate> null_space_dark(
    const LevelScheme& scheme, const BichromaticField& field, HalfInt m,
    std::span<const HalfInt> fes, double rel_threshold = 1e-10) {
  if (!projection_in_range(scheme.F1, m) || !projection_in_range(scheme.F2, m))
    throw std::domain_error("null_space_dark: m out of range for the ground levels");
  int rows = 0;
  for (HalfInt fe : fes) rows += fe.twice() + 1;
  Eigen::MatrixXcd stacked = Eigen::MatrixXcd::Zero(rows, 2);
  int offset = 0;
  for (HalfInt fe : fes) {
    const LambdaSystem lam = lambda_system(scheme, field, fe, m);
    for (int qi : {-1, +1}) {
      const HalfInt mu = m + HalfInt(qi);
      if (!projection_in_range(fe, mu)) continue;
      const int row = offset + (mu + fe).twice() / 2;
      stacked(row, 0) = qi == 1 ? lam.plus_f1 : lam.minus_f1;
      stacked(row, 1) = qi == 1 ? lam.plus_f2 : lam.minus_f2;
    }
    offset += fe.twice() + 1;
  }

  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  std::vector<DarkStateCandidate> out;
  const double smax = sv(0);
  if (smax <= 0.0) {
    // no coupling at all: both basis states are trivially dark
    out.push_back({m, Complex(1, 0), Complex(0, 0), 0.0});
    out.push_back({m, Complex(0, 0), Complex(1, 0), 0.0});
    return out;
  }
  for (int i = 0; i < sv.size(); ++i) {
    if (sv(i) > rel_threshold * smax) continue;
    const Eigen::Vector2cd v = svd.matrixV().col(i);
    out.push_back(detail::canonical_candidate(m, v(0), v(1), sv(i) / smax));
  }
  return out;
}

//! Spec-shaped overload: use_all_excited stacks every Fe of the scheme (the
//! unresolved-hyperfine test); otherwise only the first listed Fe is used.
inline std::vector<DarkStateCandidate> null_space_dark(
    const LevelScheme& scheme, const BichromaticField& field, HalfInt m,
    bool use_all_excited = false, double rel_threshold = 1e-10) {
  if (use_all_excited)
    return null_space_dark(scheme, field, m,
                           std::span<const HalfInt>(scheme.excited),
                           rel_threshold);
  return null_space_dark(scheme, field, m,
                         std::span<const HalfInt>(scheme.excited.data(), 1),
                         rel_threshold);
}

//! Ground state left completely uncoupled by its own frequency component,
//! for every excited level and both circular polarizations. Such states are
//! dark at any Raman detuning and trap optical-pumping population.
struct TrapState {
  int level;  // 0 -> F1, 1 -> F2
  HalfInt F;
  HalfInt m;
};

inline std::vector<TrapState> trap_states(const LevelScheme& scheme,
                                          const BichromaticField& field,
                                          double tol = 1e-12) {
  std::vector<TrapState> out;
  const HalfInt top = std::max(scheme.F1, scheme.F2);
  for (HalfInt m = -top; m <= top; m += HalfInt(1)) {
    for (int level = 0; level < 2; ++level) {
      const HalfInt F = level == 0 ? scheme.F1 : scheme.F2;
      if (!projection_in_range(F, m)) continue;
      const FieldComponent& c = level == 0 ? field.comp1 : field.comp2;
      const auto sph = c.spherical();
      bool coupled = false;
      for (HalfInt fe : scheme.excited) {
        const double d = scheme.dipole(F, fe).value();
        if (d == 0.0) continue;
        for (int qi : {-1, +1}) {
          const HalfInt mu = m + HalfInt(qi);
          if (!projection_in_range(fe, mu)) continue;
          const Complex pol = qi == 1 ? sph.plus : sph.minus;
          const double cg = detail::cg_or_zero(F, m, HalfInt(qi), fe, mu).value();
          if (std::abs(d * cg * pol) > tol) coupled = true;
        }
      }
      if (!coupled) out.push_back({level, F, m});
    }
  }
  return out;
}

//! Checks that one m-m candidate is dark for every adjacent comb pair;
//! returns it with the maximum residual over pairs, or nullopt. Within a
//! pair the lower-index component addresses F1, so two components reduce
//! exactly to the bichromatic case.
inline std::optional<DarkStateCandidate> comb_dark_check(
    const LevelScheme& scheme, const CombField& comb, HalfInt m,
    double tol = 1e-10) {
  if (comb.components.size() < 2)
    throw std::domain_error("comb_dark_check: need at least two components");
  auto pair_field = [&](std::size_t k) {
    return BichromaticField{comb.components[k], comb.components[k + 1]};
  };
  auto residual_for = [&](const DarkStateCandidate& cand,
                          const BichromaticField& f) {
    double worst = 0.0;
    for (HalfInt fe : scheme.excited) {
      const LambdaSystem lam = lambda_system(scheme, f, fe, m);
      const double scale =
          std::max({std::abs(lam.plus_f1), std::abs(lam.plus_f2),
                    std::abs(lam.minus_f1), std::abs(lam.minus_f2)});
      if (scale == 0.0) continue;
      worst = std::max(worst,
                       std::abs(cand.A1 * lam.plus_f1 + cand.A2 * lam.plus_f2) / scale);
      worst = std::max(
          worst, std::abs(cand.A1 * lam.minus_f1 + cand.A2 * lam.minus_f2) / scale);
    }
    return worst;
  };

  auto candidates = null_space_dark(scheme, pair_field(0), m, true, tol);
  std::optional<DarkStateCandidate> best;
  for (auto& cand : candidates) {
    double worst = cand.residual;
    for (std::size_t k = 0; k + 1 < comb.components.size(); ++k)
      worst = std::max(worst, residual_for(cand, pair_field(k)));
    if (worst < tol && (!best || worst < best->residual)) {
      cand.residual = worst;
      best = cand;
    }
  }
  return best;
}

}  // namespace cpt
