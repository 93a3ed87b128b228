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
#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/Sparse>

#include <algorithm>
#include <map>
#include <stdexcept>
#include <vector>

#include "cpt/coupling.hpp"
#include "cpt/field.hpp"
#include "cpt/scheme.hpp"

namespace cpt {

//! Linear Zeeman model. A level's shift is g * m * b_split, with b_split the
//! magnetic splitting unit expressed in units of Gamma. Ground g-factors of
//! opposite sign reproduce the alkali situation where the m-m resonances of
//! different m are mutually detuned by (g2 - g1) * m * b_split. The defaults
//! carry the electronic parts -1/2, +1/2 plus a common offset standing in
//! for the nuclear contribution; exactly opposite g-factors would leave the
//! Delta-m = 2 two-photon pairs (m, 2 m_target - m) accidentally resonant
//! and those spurious dark states would trap population.
struct ZeemanModel {
  double g1 = -0.4;
  double g2 = 0.6;
  std::map<int, double> g_excited;  // twice(Fe) -> g, default 0
  double b_split = 0.0;

  double ground_shift(int level, HalfInt m) const {
    return (level == 0 ? g1 : g2) * m.value() * b_split;
  }
  double excited_shift(HalfInt Fe, HalfInt mu) const {
    auto it = g_excited.find(Fe.twice());
    return it == g_excited.end() ? 0.0 : it->second * mu.value() * b_split;
  }
};

struct SimParams {
  double rabi1 = 0.1;              // |E1| d_line / hbar, in Gamma
  double rabi2 = 0.1;
  double raman_detuning = 0.0;     // offset from the m*-m* two-photon resonance
  double one_photon_detuning = 0.0;
  double hf_splitting = 0.0;       // uniform spacing of excited levels, in Gamma
  int resonant_fe_index = -1;      // reference excited level; -1 = manifold center
  double gamma = 1.0;              // total excited decay rate (natural unit)
  HalfInt m_target{0};
  double rel_tol = 1e-8;
  double abs_tol = 1e-10;
};

//! State layout: the F1 Zeeman block, the F2 block, then one block per
//! excited level in scheme order.
class Basis {
public:
  explicit Basis(const LevelScheme& scheme) : scheme_(scheme) {
    int off = 0;
    ground_offsets_[0] = off;
    off += scheme.F1.twice() + 1;
    ground_offsets_[1] = off;
    off += scheme.F2.twice() + 1;
    for (HalfInt fe : scheme.excited) {
      excited_offsets_.push_back(off);
      off += fe.twice() + 1;
    }
    dim_ = off;
  }

  const LevelScheme& scheme() const { return scheme_; }
  int dim() const { return dim_; }
  int ground_dim() const { return scheme_.ground_dim(); }
  int excited_count() const { return static_cast<int>(excited_offsets_.size()); }

  int ground_index(int level, HalfInt m) const {
    const HalfInt F = level == 0 ? scheme_.F1 : scheme_.F2;
    return ground_offsets_[level] + (m + F).twice() / 2;
  }
  int excited_index(int fe_index, HalfInt mu) const {
    const HalfInt Fe = scheme_.excited[fe_index];
    return excited_offsets_[fe_index] + (mu + Fe).twice() / 2;
  }
  int excited_offset(int fe_index) const { return excited_offsets_[fe_index]; }

private:
  LevelScheme scheme_;
  int ground_offsets_[2] = {0, 0};
  std::vector<int> excited_offsets_;
  int dim_ = 0;
};

inline double trace_error(const Eigen::MatrixXcd& rho) {
  return std::abs(rho.trace().real() - 1.0) + std::abs(rho.trace().imag());
}

inline double min_eigenvalue(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
      0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

struct TrajectoryPoint {
  double t;
  Eigen::MatrixXcd rho;
};
using Trajectory = std::vector<TrajectoryPoint>;

struct SteadyStateResult {
  Eigen::MatrixXcd rho;
  double residual = 0.0;       // ||L rho|| / ||rho||
  bool degenerate = false;     // dim of the Liouvillian null space >= 2
  int null_dimension = 1;
  std::vector<Eigen::MatrixXcd> zero_modes;  // basis of the null space when probed
};

//! Lindblad master equation for optical pumping by the bichromatic field:
//! rotating-frame Hamiltonian per the resonant component-to-level
//! assignment (component 1 <-> F1, component 2 <-> F2; off-resonant cross
//! couplings are dropped) plus spontaneous decay of every excited level at
//! total rate gamma, branching to the two ground levels with amplitudes
//! proportional to d_{F Fe} C (normalized per excited level).
//!
//! Field amplitudes supply only their phases; the drive magnitudes come
//! from rabi1 / rabi2, so the effective amplitude of component j is
//! rabi_j * E_j / |E_j|.
class PumpSimulation {
public:
  PumpSimulation(LevelScheme scheme, const BichromaticField& field,
                 ZeemanModel zeeman, SimParams params)
      : basis_(scheme),
        zeeman_(zeeman),
        params_(params),
        field_(make_effective_field(field, params)) {
    const LevelScheme& sch = basis_.scheme();
    if (!projection_in_range(sch.F1, params.m_target) ||
        !projection_in_range(sch.F2, params.m_target))
      throw std::domain_error("PumpSimulation: m_target outside both ground levels");
    build_hamiltonian();
    build_jumps();
    build_liouvillian();
  }

  const Basis& basis() const { return basis_; }
  const BichromaticField& effective_field() const { return field_; }
  const Eigen::MatrixXcd& hamiltonian() const { return H_; }

  //! d rho / dt for the given state; zero exactly on steady states.
  Eigen::MatrixXcd apply_liouvillian(const Eigen::MatrixXcd& rho) const {
    const int n = basis_.dim();
    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho.data(), n * n);
    Eigen::VectorXcd w = Lsp_ * v;
    return Eigen::Map<const Eigen::MatrixXcd>(w.data(), n, n);
  }

  //! Integrates d rho/dt = -i[H, rho] + D(rho) with an adaptive
  //! Dormand-Prince 5(4) scheme, sampling the state at `samples` + 1
  //! equally spaced times including t = 0 and t = t_final.
  Trajectory evolve(const Eigen::MatrixXcd& rho0, double t_final,
                    int samples = 100) const {
    const int n = basis_.dim();
    if (rho0.rows() != n || rho0.cols() != n)
      throw std::invalid_argument("evolve: density matrix has wrong dimension");
    Eigen::VectorXcd y = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), n * n);
    Trajectory traj;
    traj.push_back({0.0, rho0});
    double t = 0.0;
    double dt = std::min(0.01, t_final / std::max(1, samples));
    for (int s = 1; s <= samples; ++s) {
      const double t_stop = t_final * s / samples;
      integrate_to(y, t, t_stop, dt);
      traj.push_back({t_stop, Eigen::Map<const Eigen::MatrixXcd>(y.data(), n, n)});
    }
    return traj;
  }

  //! Stationary density matrix from the Liouvillian null space. The primary
  //! path solves (L + t v^T) x = t with t = vec(1/N) and v the trace
  //! functional, which is nonsingular exactly when the steady state is
  //! unique. With detect_degeneracy (or on a failed residual) the full null
  //! space is probed by a rank-revealing LU and returned.
  SteadyStateResult steady_state(bool detect_degeneracy = true) const {
    const int n = basis_.dim();
    const int n2 = n * n;
    Eigen::MatrixXcd L = Eigen::MatrixXcd(Lsp_);
    Eigen::VectorXcd tether = Eigen::VectorXcd::Zero(n2);
    for (int i = 0; i < n; ++i) tether(i * n + i) = 1.0 / n;
    Eigen::MatrixXcd M = L;
    for (int c = 0; c < n; ++c) M.col(c * n + c) += tether;
    Eigen::VectorXcd x = Eigen::PartialPivLU<Eigen::MatrixXcd>(M).solve(tether);

    SteadyStateResult out;
    const double xn = x.norm();
    out.residual = xn > 0 ? (Lsp_ * x).norm() / xn : 1.0;
    Eigen::MatrixXcd rho = Eigen::Map<const Eigen::MatrixXcd>(x.data(), n, n);
    rho = 0.5 * (rho + rho.adjoint());
    const double tr = rho.trace().real();
    if (std::abs(tr) > 1e-12) rho /= tr;
    out.rho = rho;

    if (detect_degeneracy || out.residual > 1e-8) {
      Eigen::FullPivLU<Eigen::MatrixXcd> lu(L);
      lu.setThreshold(1e-9);
      const int null_dim = n2 - static_cast<int>(lu.rank());
      out.null_dimension = null_dim;
      out.degenerate = null_dim >= 2;
      if (null_dim >= 1) {
        Eigen::MatrixXcd kernel = lu.kernel();
        for (int c = 0; c < kernel.cols(); ++c) {
          Eigen::MatrixXcd k =
              Eigen::Map<const Eigen::MatrixXcd>(kernel.col(c).data(), n, n);
          out.zero_modes.push_back(k);
        }
      }
      if (out.degenerate || out.residual > 1e-8) {
        // The tether matrix is singular on a degenerate manifold; a
        // least-squares solve with an appended trace row still returns a
        // trace-one element of the null space.
        Eigen::MatrixXcd A(n2 + 1, n2);
        A.topRows(n2) = L;
        A.row(n2).setZero();
        for (int i = 0; i < n; ++i) A(n2, i * n + i) = 1.0;
        Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n2 + 1);
        rhs(n2) = 1.0;
        x = A.colPivHouseholderQr().solve(rhs);
        out.residual = x.norm() > 0 ? (Lsp_ * x).norm() / x.norm() : 1.0;
        Eigen::MatrixXcd r = Eigen::Map<const Eigen::MatrixXcd>(x.data(), n, n);
        r = 0.5 * (r + r.adjoint());
        const double tr2 = r.trace().real();
        if (std::abs(tr2) > 1e-12) r /= tr2;
        out.rho = r;
      }
    }
    return out;
  }

  // --- initial states and observables -------------------------------------

  Eigen::MatrixXcd uniform_ground_mixture() const {
    const int n = basis_.dim();
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(n, n);
    const double p = 1.0 / basis_.ground_dim();
    for (int i = 0; i < basis_.ground_dim(); ++i) rho(i, i) = p;
    return rho;
  }

  Eigen::MatrixXcd pure_state(const Eigen::VectorXcd& psi) const {
    return psi * psi.adjoint() / psi.squaredNorm();
  }

  Eigen::VectorXcd ground_state_vector(const DarkStateCandidate& c) const {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(basis_.dim());
    psi(basis_.ground_index(0, c.m)) = c.A1;
    psi(basis_.ground_index(1, c.m)) = c.A2;
    return psi;
  }

  double excited_population(const Eigen::MatrixXcd& rho) const {
    double p = 0.0;
    for (int i = basis_.ground_dim(); i < basis_.dim(); ++i) p += rho(i, i).real();
    return p;
  }

  //! Tr(rho_g^2) / (Tr rho_g)^2 over the ground block; 1 for a pure ground state.
  double ground_purity(const Eigen::MatrixXcd& rho) const {
    const int g = basis_.ground_dim();
    const Eigen::MatrixXcd rg = rho.topLeftCorner(g, g);
    const double tr = rg.trace().real();
    if (tr <= 0.0) return 0.0;
    return (rg * rg).trace().real() / (tr * tr);
  }

  //! Population of the stretched end states |F2, +F2> and |F2, -F2>.
  double end_state_population(const Eigen::MatrixXcd& rho) const {
    const LevelScheme& sch = basis_.scheme();
    return rho(basis_.ground_index(1, sch.F2), basis_.ground_index(1, sch.F2))
               .real() +
           rho(basis_.ground_index(1, -sch.F2), basis_.ground_index(1, -sch.F2))
               .real();
  }

  double population(int index, const Eigen::MatrixXcd& rho) const {
    return rho(index, index).real();
  }

  double fidelity(const Eigen::MatrixXcd& rho, const Eigen::VectorXcd& psi) const {
    return (psi.adjoint() * rho * psi).real()(0, 0) / psi.squaredNorm();
  }

private:
  Basis basis_;
  ZeemanModel zeeman_;
  SimParams params_;
  BichromaticField field_;  // effective amplitudes rabi_j e^{i arg E_j}
  Eigen::MatrixXcd H_;
  std::vector<Eigen::MatrixXcd> jumps_;
  Eigen::SparseMatrix<Complex> Lsp_;
  double dt_stability_cap_ = 1.0;

  static BichromaticField make_effective_field(const BichromaticField& f,
                                               const SimParams& p) {
    auto rescale = [](const FieldComponent& c, double rabi) {
      const double mag = std::abs(c.amplitude());
      if (mag == 0.0)
        throw std::domain_error("PumpSimulation: zero field amplitude");
      return FieldComponent(c.amplitude() / mag * rabi, c.ellipticity(),
                            c.axis_angle(), c.frequency_tag());
    };
    return {rescale(f.comp1, p.rabi1), rescale(f.comp2, p.rabi2)};
  }

  double excited_frame_offset(int fe_index) const {
    const int count = basis_.excited_count();
    const double centered =
        (fe_index - 0.5 * (count - 1)) * params_.hf_splitting;
    double ref = 0.0;
    if (params_.resonant_fe_index >= 0 && params_.resonant_fe_index < count)
      ref = (params_.resonant_fe_index - 0.5 * (count - 1)) * params_.hf_splitting;
    return centered - ref;
  }

  void build_hamiltonian() {
    const LevelScheme& sch = basis_.scheme();
    const int n = basis_.dim();
    H_ = Eigen::MatrixXcd::Zero(n, n);
    const HalfInt mt = params_.m_target;
    const double raman_align =
        (zeeman_.g2 - zeeman_.g1) * mt.value() * zeeman_.b_split;

    for (HalfInt m = -sch.F1; m <= sch.F1; m += HalfInt(1))
      H_(basis_.ground_index(0, m), basis_.ground_index(0, m)) =
          zeeman_.ground_shift(0, m);
    for (HalfInt m = -sch.F2; m <= sch.F2; m += HalfInt(1))
      H_(basis_.ground_index(1, m), basis_.ground_index(1, m)) =
          zeeman_.ground_shift(1, m) - raman_align - params_.raman_detuning;

    for (int k = 0; k < basis_.excited_count(); ++k) {
      const HalfInt fe = sch.excited[k];
      const double off = excited_frame_offset(k) - params_.one_photon_detuning;
      for (HalfInt mu = -fe; mu <= fe; mu += HalfInt(1))
        H_(basis_.excited_index(k, mu), basis_.excited_index(k, mu)) =
            off + zeeman_.excited_shift(fe, mu);

      // V + V^dagger, entries d_{Fj Fe} Omega_j C (a_j)^q
      const FieldComponent* comps[2] = {&field_.comp1, &field_.comp2};
      for (int level = 0; level < 2; ++level) {
        const HalfInt F = level == 0 ? sch.F1 : sch.F2;
        const double d = sch.dipole(F, fe).value();
        if (d == 0.0) continue;
        const auto sph = comps[level]->spherical();
        for (HalfInt m = -F; m <= F; m += HalfInt(1)) {
          for (int qi : {-1, +1}) {
            const HalfInt mu = m + HalfInt(qi);
            if (!projection_in_range(fe, mu)) continue;
            const Complex pol = qi == 1 ? sph.plus : sph.minus;
            const double cg = detail::cg_or_zero(F, m, HalfInt(qi), fe, mu).value();
            const Complex v = d * comps[level]->amplitude() * cg * pol;
            H_(basis_.excited_index(k, mu), basis_.ground_index(level, m)) += v;
            H_(basis_.ground_index(level, m), basis_.excited_index(k, mu)) +=
                std::conj(v);
          }
        }
      }
    }
  }

  void build_jumps() {
    const LevelScheme& sch = basis_.scheme();
    const int n = basis_.dim();
    jumps_.assign(3, Eigen::MatrixXcd::Zero(n, n));
    for (int k = 0; k < basis_.excited_count(); ++k) {
      const HalfInt fe = sch.excited[k];
      double weight = 0.0;
      double d[2];
      for (int level = 0; level < 2; ++level) {
        const HalfInt F = level == 0 ? sch.F1 : sch.F2;
        d[level] = sch.dipole(F, fe).value();
        weight += d[level] * d[level];
      }
      if (weight <= 0.0)
        throw std::domain_error("PumpSimulation: excited level decays nowhere");
      const double norm = std::sqrt(params_.gamma / weight);
      for (int level = 0; level < 2; ++level) {
        const HalfInt F = level == 0 ? sch.F1 : sch.F2;
        if (d[level] == 0.0) continue;
        for (HalfInt m = -F; m <= F; m += HalfInt(1)) {
          for (int qi : {-1, 0, +1}) {
            const HalfInt mu = m + HalfInt(qi);
            if (!projection_in_range(fe, mu)) continue;
            const double cg = detail::cg_or_zero(F, m, HalfInt(qi), fe, mu).value();
            if (cg == 0.0) continue;
            jumps_[qi + 1](basis_.ground_index(level, m),
                           basis_.excited_index(k, mu)) += norm * d[level] * cg;
          }
        }
      }
    }
  }

  void build_liouvillian() {
    const int n = basis_.dim();
    const int n2 = n * n;
    std::vector<Eigen::Triplet<Complex>> trip;
    // rho -> A rho: entries ((j n + i), (j n + i')) = A(i, i')
    auto add_left = [&](const Eigen::MatrixXcd& A, Complex coeff) {
      for (int i = 0; i < n; ++i)
        for (int ip = 0; ip < n; ++ip) {
          const Complex v = coeff * A(i, ip);
          if (v == Complex(0, 0)) continue;
          for (int j = 0; j < n; ++j) trip.emplace_back(j * n + i, j * n + ip, v);
        }
    };
    // rho -> rho B: entries ((j n + i), (j' n + i)) = B(j', j)
    auto add_right = [&](const Eigen::MatrixXcd& B, Complex coeff) {
      for (int j = 0; j < n; ++j)
        for (int jp = 0; jp < n; ++jp) {
          const Complex v = coeff * B(jp, j);
          if (v == Complex(0, 0)) continue;
          for (int i = 0; i < n; ++i) trip.emplace_back(j * n + i, jp * n + i, v);
        }
    };
    // rho -> A rho B: entries ((j n + i), (j' n + i')) = A(i,i') B(j',j)
    auto add_sandwich = [&](const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B,
                            Complex coeff) {
      for (int i = 0; i < n; ++i)
        for (int ip = 0; ip < n; ++ip) {
          if (A(i, ip) == Complex(0, 0)) continue;
          for (int j = 0; j < n; ++j)
            for (int jp = 0; jp < n; ++jp) {
              const Complex v = coeff * A(i, ip) * B(jp, j);
              if (v == Complex(0, 0)) continue;
              trip.emplace_back(j * n + i, jp * n + ip, v);
            }
        }
    };

    const Complex mi(0.0, -1.0);
    add_left(H_, mi);
    add_right(H_, -mi);
    for (const auto& D : jumps_) {
      const Eigen::MatrixXcd DdD = D.adjoint() * D;
      add_sandwich(D, D.adjoint(), Complex(1.0, 0.0));
      add_left(DdD, Complex(-0.5, 0.0));
      add_right(DdD, Complex(-0.5, 0.0));
    }
    Lsp_.resize(n2, n2);
    Lsp_.setFromTriplets(trip.begin(), trip.end());
    Lsp_.makeCompressed();

    // Explicit-integrator stability bound. The row-sum norm dominates the
    // spectral radius, so dt <= 1.5 / ||L||_inf keeps every mode inside the
    // Dormand-Prince stability region; without the cap a quasi-stationary
    // state lets the controller push dt into the unstable regime where
    // rounding noise is amplified up to the tolerance floor.
    Eigen::VectorXd row_sums = Eigen::VectorXd::Zero(n2);
    for (int k = 0; k < Lsp_.outerSize(); ++k)
      for (Eigen::SparseMatrix<Complex>::InnerIterator it(Lsp_, k); it; ++it)
        row_sums(it.row()) += std::abs(it.value());
    const double norm = row_sums.maxCoeff();
    dt_stability_cap_ = norm > 0.0 ? 1.5 / norm : 1e6;
  }

  // Dormand-Prince 5(4) with PI-free step control; integrates y through
  // [t, t_stop] in place.
  void integrate_to(Eigen::VectorXcd& y, double& t, double t_stop,
                    double& dt) const {
    constexpr double a21 = 1.0 / 5;
    constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                     a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                     a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                     a65 = -5103.0 / 18656;
    constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                     b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    constexpr double e1 = 35.0 / 384 - 5179.0 / 57600,
                     e3 = 500.0 / 1113 - 7571.0 / 16695,
                     e4 = 125.0 / 192 - 393.0 / 640,
                     e5 = -2187.0 / 6784 + 92097.0 / 339200,
                     e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    long steps = 0;
    while (t < t_stop - 1e-14 * std::max(1.0, t_stop)) {
      if (++steps > 4000000)
        throw std::runtime_error(
            "evolve: step budget exhausted at t = " + std::to_string(t) +
            ", dt = " + std::to_string(dt));
      dt = std::min({dt, t_stop - t, dt_stability_cap_});
      const Eigen::VectorXcd k1 = Lsp_ * y;
      const Eigen::VectorXcd k2 = Lsp_ * (y + dt * (a21 * k1));
      const Eigen::VectorXcd k3 = Lsp_ * (y + dt * (a31 * k1 + a32 * k2));
      const Eigen::VectorXcd k4 = Lsp_ * (y + dt * (a41 * k1 + a42 * k2 + a43 * k3));
      const Eigen::VectorXcd k5 =
          Lsp_ * (y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
      const Eigen::VectorXcd k6 = Lsp_ * (y + dt * (a61 * k1 + a62 * k2 + a63 * k3 +
                                                    a64 * k4 + a65 * k5));
      const Eigen::VectorXcd y5 =
          y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      const Eigen::VectorXcd k7 = Lsp_ * y5;
      const Eigen::VectorXcd err = dt * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 +
                                         e6 * k6 + e7 * k7);
      double norm2 = 0.0;
      for (int i = 0; i < y.size(); ++i) {
        const double sc = params_.abs_tol +
                          params_.rel_tol * std::max(std::abs(y(i)), std::abs(y5(i)));
        const double q = std::abs(err(i)) / sc;
        norm2 += q * q;
      }
      const double err_norm = std::sqrt(norm2 / y.size());
      if (err_norm <= 1.0) {
        t += dt;
        y = y5;
      }
      const double factor = err_norm > 0.0
                                ? 0.9 * std::pow(err_norm, -0.2)
                                : 5.0;
      dt *= std::clamp(factor, 0.2, 5.0);
      if (dt < 1e-12)
        throw std::runtime_error("evolve: step size underflow at t = " +
                                 std::to_string(t));
    }
  }
};

struct MetricsRow {
  double t;
  double dark_population;
  double ground_purity;
  double excited_population;
  double end_state_population;
};

//! Per-sample observables of a trajectory, with the dark population measured
//! against the supplied analytic candidate.
inline std::vector<MetricsRow> metrics(const Trajectory& traj,
                                       const PumpSimulation& sim,
                                       const DarkStateCandidate& dark) {
  if (traj.empty()) throw std::invalid_argument("metrics: empty trajectory");
  const Eigen::VectorXcd psi = sim.ground_state_vector(dark);
  std::vector<MetricsRow> rows;
  rows.reserve(traj.size());
  for (const auto& pt : traj)
    rows.push_back({pt.t, sim.fidelity(pt.rho, psi), sim.ground_purity(pt.rho),
                    sim.excited_population(pt.rho),
                    sim.end_state_population(pt.rho)});
  return rows;
}

struct ResolutionPoint {
  double splitting;
  double fidelity;
};

//! Steady-state fidelity with the resonant excited level's analytic dark
//! state as a function of the excited hyperfine splitting. The one-photon
//! detuning tracks the resonant level, so large splittings reproduce the
//! spectrally resolved situation.
inline std::vector<ResolutionPoint> resolution_scan(
    const LevelScheme& scheme, const BichromaticField& field,
    const ZeemanModel& zeeman, SimParams params,
    const std::vector<double>& splittings) {
  if (params.resonant_fe_index < 0) {
    for (int k = 0; k < static_cast<int>(scheme.excited.size()); ++k)
      if (scheme.couples(scheme.F1, scheme.excited[k]) &&
          scheme.couples(scheme.F2, scheme.excited[k])) {
        params.resonant_fe_index = k;
        break;
      }
  }
  if (params.resonant_fe_index < 0)
    throw std::domain_error("resolution_scan: no excited level couples both ground levels");

  std::vector<ResolutionPoint> out;
  for (double s : splittings) {
    SimParams p = params;
    p.hf_splitting = s;
    PumpSimulation sim(scheme, field, zeeman, p);
    const HalfInt fe_res = scheme.excited[p.resonant_fe_index];
    const auto pair = analytic_dark_pair(scheme, sim.effective_field(), fe_res,
                                         p.m_target);
    const auto& cand = pair.plus ? pair.plus : pair.minus;
    if (!cand)
      throw std::domain_error("resolution_scan: resonant level has no Lambda system");
    const auto ss = sim.steady_state(false);
    out.push_back({s, sim.fidelity(ss.rho, sim.ground_state_vector(*cand))});
  }
  return out;
}

}  // namespace cpt
