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
#include "cpt/master_equation.hpp"
#include "cpt/scheme.hpp"

using namespace cpt;

namespace {

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  const Eigen::MatrixXcd d = 0.5 * ((a - b) + (a - b).adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(d, Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

TEST_CASE("switched-off field leaves a diagonal ground mixture unchanged") {
  const auto rb = preset_scheme("rb87-d1");
  SimParams p;
  p.rabi1 = p.rabi2 = 0.0;
  p.m_target = 0;
  ZeemanModel z;
  z.b_split = 2.0;
  PumpSimulation sim(rb, named_config(ConfigKind::lin_perp_lin), z, p);
  const auto rho0 = sim.uniform_ground_mixture();
  const auto traj = sim.evolve(rho0, 50.0, 5);
  CHECK((traj.back().rho - rho0).norm() < 1e-10);
}

TEST_CASE("uniform mixture metrics start at the maximally mixed values") {
  const auto rb = preset_scheme("rb87-d1");
  SimParams p;
  p.m_target = 1;
  ZeemanModel z;
  z.b_split = 2.0;
  const auto sol = solve_perp(rb.F1, 1, ConfigFamily::perp_symmetric);
  PumpSimulation sim(rb, sol.field(), z, p);
  const auto cands = null_space_dark(rb, sim.effective_field(), 1, true);
  REQUIRE(cands.size() == 1);
  const auto traj = sim.evolve(sim.uniform_ground_mixture(), 1.0, 1);
  const auto rows = metrics(traj, sim, cands[0]);
  CHECK(rows.front().ground_purity == Approx(1.0 / rb.ground_dim()).epsilon(1e-12));
  CHECK(rows.front().dark_population == Approx(1.0 / rb.ground_dim()).epsilon(1e-12));
  CHECK(rows.front().excited_population == 0.0);
}

TEST_CASE("a dark initial state never reaches the excited manifold") {
  const auto rb = preset_scheme("rb87-d1");
  const auto sol = solve_perp(rb.F1, 1, ConfigFamily::perp_symmetric);
  SimParams p;
  p.rabi1 = 0.4;
  p.rabi2 = 0.25;
  p.m_target = 1;
  ZeemanModel z;
  z.b_split = 4.0;
  PumpSimulation sim(rb, sol.field(), z, p);
  const auto cands = null_space_dark(rb, sim.effective_field(), 1, true);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].residual < 1e-12);
  const auto traj = sim.evolve(sim.pure_state(sim.ground_state_vector(cands[0])),
                               40.0, 20);
  for (const auto& pt : traj) {
    CHECK(sim.excited_population(pt.rho) < 1e-6);
    CHECK(trace_error(pt.rho) < 1e-9);
    CHECK(min_eigenvalue(pt.rho) > -1e-8);
  }
}

TEST_CASE("trap states keep their population at any Raman detuning") {
  const auto rb = preset_scheme("rb87-d1");
  const auto field = named_config(ConfigKind::sigma_plus_plus);
  const auto traps = trap_states(rb, field);
  REQUIRE(traps.size() == 1);
  std::mt19937 rng(53);
  std::uniform_real_distribution<double> det(-3.0, 3.0);
  for (int i = 0; i < 3; ++i) {
    SimParams p;
    p.rabi1 = p.rabi2 = 0.4;
    p.m_target = 0;
    p.raman_detuning = det(rng);
    ZeemanModel z;
    z.b_split = 3.0;
    PumpSimulation sim(rb, field, z, p);
    Eigen::VectorXcd end = Eigen::VectorXcd::Zero(sim.basis().dim());
    end(sim.basis().ground_index(traps[0].level, traps[0].m)) = 1.0;
    const auto traj = sim.evolve(sim.pure_state(end), 25.0, 5);
    const int idx = sim.basis().ground_index(traps[0].level, traps[0].m);
    CHECK(traj.back().rho(idx, idx).real() == Approx(1.0).margin(1e-8));
  }
}

TEST_CASE("sigma+ sigma+ pumping ends in a dark/end-state mixture") {
  const auto rb = preset_scheme("rb87-d1");
  SimParams p;
  p.rabi1 = p.rabi2 = 0.5;
  p.m_target = 0;
  ZeemanModel z;
  z.b_split = 2.0;
  PumpSimulation sim(rb, named_config(ConfigKind::sigma_plus_plus), z, p);
  const auto ss = sim.steady_state(true);
  CHECK(ss.degenerate);
  CHECK(ss.null_dimension >= 2);
  const auto traj = sim.evolve(sim.uniform_ground_mixture(), 400.0, 8);
  const auto& rho_end = traj.back().rho;
  CHECK(sim.end_state_population(rho_end) > 0.05);
  CHECK(sim.ground_purity(rho_end) < 0.999);
  CHECK(sim.excited_population(rho_end) < 1e-3);
}

TEST_CASE("steady state equals the long-time limit of the evolution") {
  const auto rb = preset_scheme("rb87-d1");
  const auto sol = solve_perp(rb.F1, 0, ConfigFamily::perp_symmetric);
  SimParams p;
  p.rabi1 = p.rabi2 = 0.15;
  p.m_target = 0;
  ZeemanModel z;
  z.b_split = 0.5;
  PumpSimulation sim(rb, sol.field(), z, p);
  const auto ss = sim.steady_state(true);
  CHECK_FALSE(ss.degenerate);
  CHECK(ss.residual < 1e-10);
  const auto traj = sim.evolve(sim.uniform_ground_mixture(), 14000.0, 4);
  CHECK(trace_distance(traj.back().rho, ss.rho) < 1e-6);
  // and the steady state is the pure dark state
  const auto cands = null_space_dark(rb, sim.effective_field(), 0, true);
  REQUIRE(cands.size() == 1);
  CHECK(sim.fidelity(ss.rho, sim.ground_state_vector(cands[0])) > 0.999);
  CHECK(trace_error(traj.back().rho) < 1e-9);
  CHECK(min_eigenvalue(traj.back().rho) > -1e-8);
}

TEST_CASE("unresolved D2 cannot purify: steady ground state stays mixed") {
  const auto rb2 = preset_scheme("rb87-d2");
  SimParams p;
  p.rabi1 = p.rabi2 = 0.3;
  p.m_target = 0;
  p.resonant_fe_index = 1;  // Fe = 1 couples both ground levels
  ZeemanModel z;
  z.b_split = 3.0;
  PumpSimulation sim(rb2, named_config(ConfigKind::lin_perp_lin), z, p);
  const auto ss = sim.steady_state(false);
  CHECK(sim.ground_purity(ss.rho) < 0.9);
}

TEST_CASE("resolution scan shows the D1/D2 dichotomy") {
  ZeemanModel z;
  z.b_split = 3.0;
  SimParams p;
  p.rabi1 = p.rabi2 = 0.3;
  p.m_target = 1;

  const auto rb1 = preset_scheme("rb87-d1");
  const auto sol = solve_perp(rb1.F1, 1, ConfigFamily::perp_symmetric);
  const auto d1 = resolution_scan(rb1, sol.field(), z, p, {0.0, 100.0});
  CHECK(d1[0].fidelity > 0.999);  // no spectral resolution needed on D1
  CHECK(d1[1].fidelity > 0.999);

  const auto rb2 = preset_scheme("rb87-d2");
  SimParams p2 = p;
  p2.resonant_fe_index = 1;
  const auto d2 = resolution_scan(rb2, sol.field(), z, p2, {0.0});
  CHECK(d2[0].fidelity < 0.9);  // measured ~0.05: no common dark state at zero splitting
}

TEST_CASE("master-equation hygiene on a generic pumping run") {
  const auto rb = preset_scheme("rb87-d1");
  const auto sol = solve_perp(rb.F1, 1, ConfigFamily::perp_symmetric);
  SimParams p;
  p.rabi1 = 0.35;
  p.rabi2 = 0.2;
  p.m_target = 1;
  p.raman_detuning = 0.07;
  ZeemanModel z;
  z.b_split = 4.0;
  PumpSimulation sim(rb, sol.field(), z, p);
  const auto traj = sim.evolve(sim.uniform_ground_mixture(), 120.0, 40);
  for (const auto& pt : traj) {
    CHECK(trace_error(pt.rho) < 1e-9);
    CHECK(min_eigenvalue(pt.rho) > -1e-8);
    CHECK((pt.rho - pt.rho.adjoint()).norm() < 1e-10);
  }
}
