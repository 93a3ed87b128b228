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

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "cpt/config_solver.hpp"
#include "cpt/identities.hpp"
#include "cpt/json_io.hpp"
#include "cpt/master_equation.hpp"

namespace {

using namespace cpt;

constexpr int kExitOk = 0;
constexpr int kExitNumerical = 1;
constexpr int kExitUsage = 2;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

HalfInt parse_half(const std::string& s, const char* what) {
  auto h = HalfInt::parse(s);
  if (!h) throw std::domain_error(std::string("malformed half-integer for ") +
                                  what + ": '" + s + "'");
  return *h;
}

double parse_angle(const std::string& s) {
  try {
    if (s.rfind("deg:", 0) == 0) return std::stod(s.substr(4)) * pi / 180.0;
    return std::stod(s);
  } catch (const std::exception&) {
    throw std::domain_error("malformed angle: '" + s + "'");
  }
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw std::runtime_error("cannot open output file: " + path);
  return file;
}

ConfigFamily parse_family(const std::string& name) {
  if (name == "general" || name == "perp-general") return ConfigFamily::perp_general;
  if (name == "symmetric" || name == "perp-symmetric")
    return ConfigFamily::perp_symmetric;
  if (name == "lin-perp-eps") return ConfigFamily::lin_perp_eps;
  if (name == "eps-perp-lin") return ConfigFamily::eps_perp_lin;
  if (name == "parallel-fplus2") return ConfigFamily::parallel_fplus2;
  if (name == "parallel-equal-f") return ConfigFamily::parallel_equal_f;
  throw std::domain_error("unknown family: " + name);
}

//! Reference dark candidate for trajectory metrics: the stacked null-space
//! candidate when one exists, otherwise the analytic state of the first
//! excited level that forms a full Lambda system.
DarkStateCandidate reference_dark_candidate(const LevelScheme& scheme,
                                            const BichromaticField& field,
                                            HalfInt m) {
  auto cands = null_space_dark(scheme, field, m, true);
  if (!cands.empty()) return cands.front();
  for (HalfInt fe : scheme.excited) {
    const auto pair = analytic_dark_pair(scheme, field, fe, m);
    if (pair.plus) return *pair.plus;
    if (pair.minus) return *pair.minus;
  }
  throw std::runtime_error("no dark reference state exists for this configuration");
}

struct PumpCliOptions {
  std::string scheme = "cs-d1";
  std::string field = "lin-perp-lin";
  std::string m_target = "0";
  double rabi1 = 0.3, rabi2 = 0.3;
  double zeeman_splitting = -1.0;  // <0: auto, 50x the two-photon pumping width
  double hf_splitting = 0.0;
  double raman_detuning = 0.0;
  double one_photon_detuning = 0.0;
  int resonant_fe = -1;
  double t_final = 200.0;
  int samples = 100;
  double rel_tol = 1e-8;
  std::string out;

  void attach(CLI::App* cmd, bool with_time) {
    cmd->add_option("--scheme", scheme, "preset name or scheme JSON path");
    cmd->add_option("--field", field, "field shorthand or JSON path");
    cmd->add_option("--m-target", m_target, "target m of the m-m resonance");
    cmd->add_option("--rabi1", rabi1, "reduced Rabi frequency of component 1 (Gamma)");
    cmd->add_option("--rabi2", rabi2, "reduced Rabi frequency of component 2 (Gamma)");
    cmd->add_option("--zeeman-splitting", zeeman_splitting,
                    "m-m resonance spacing (Gamma); negative = auto");
    cmd->add_option("--hf-splitting", hf_splitting,
                    "spacing of the excited hyperfine levels (Gamma)");
    cmd->add_option("--raman-detuning", raman_detuning,
                    "offset from the m-m two-photon resonance (Gamma)");
    cmd->add_option("--one-photon-detuning", one_photon_detuning,
                    "common one-photon detuning (Gamma)");
    cmd->add_option("--resonant-fe", resonant_fe,
                    "index of the excited level the laser is tuned to (-1 = center)");
    if (with_time) {
      cmd->add_option("--t-final", t_final, "integration time (1/Gamma)");
      cmd->add_option("--samples", samples, "number of trajectory samples");
    }
    cmd->add_option("--tol", rel_tol, "integrator relative tolerance");
    cmd->add_option("--out", out, "output path (default stdout)");
  }

  std::pair<ZeemanModel, SimParams> build() const {
    SimParams p;
    p.rabi1 = rabi1;
    p.rabi2 = rabi2;
    p.raman_detuning = raman_detuning;
    p.one_photon_detuning = one_photon_detuning;
    p.hf_splitting = hf_splitting;
    p.resonant_fe_index = resonant_fe;
    p.m_target = parse_half(m_target, "--m-target");
    p.rel_tol = rel_tol;
    ZeemanModel zee;
    zee.b_split = zeeman_splitting >= 0.0
                      ? zeeman_splitting
                      : std::max(1.0, 50.0 * rabi1 * rabi2);
    return {zee, p};
  }
};

void emit_json(const Json& j, const std::string& out_path) {
  std::ofstream file;
  open_output(file, out_path) << j.dump(2) << "\n";
}

int run(int argc, char** argv) {
  CLI::App app{
      "cptkit - dark m-m superposition states of alkali atoms in a "
      "bichromatic elliptically polarized field"};
  app.require_subcommand(1);

  // ---- cg -----------------------------------------------------------------
  std::vector<std::string> cg_args;
  auto* cmd_cg = app.add_subcommand(
      "cg", "Clebsch-Gordan coefficient C^{F M}_{F1 m1, F2 m2}");
  cmd_cg->add_option("args", cg_args, "F1 m1 F2 m2 F M (e.g. 3 0 1 1 4 1)")
      ->expected(6);

  // ---- sixj ---------------------------------------------------------------
  std::vector<std::string> sixj_args;
  auto* cmd_sixj = app.add_subcommand("sixj", "Wigner 6j symbol {j1 j2 j3; j4 j5 j6}");
  cmd_sixj->add_option("args", sixj_args, "j1 j2 j3 j4 j5 j6")->expected(6);

  // ---- dipole -------------------------------------------------------------
  std::string dip_F, dip_Fe, dip_line = "D1", dip_I = "7/2";
  auto* cmd_dip = app.add_subcommand("dipole", "reduced dipole element d_{F Fe}");
  cmd_dip->add_option("F", dip_F, "ground F")->required();
  cmd_dip->add_option("Fe", dip_Fe, "excited Fe")->required();
  cmd_dip->add_option("--line", dip_line, "D1 or D2");
  cmd_dip->add_option("--ispin", dip_I, "nuclear spin I");

  // ---- polarization -------------------------------------------------------
  std::string pol_field = "lin-perp-lin", pol_out;
  auto* cmd_pol = app.add_subcommand(
      "polarization", "spherical components of the field polarizations");
  cmd_pol->add_option("--field", pol_field, "field shorthand or JSON path");
  cmd_pol->add_option("--out", pol_out, "output path");

  // ---- dark-find ----------------------------------------------------------
  std::string df_scheme = "cs-d1", df_field = "lin-perp-lin", df_m, df_out;
  bool df_all = false;
  double df_tol = 1e-10;
  auto* cmd_df = app.add_subcommand(
      "dark-find", "m-m dark states and trap states of a scheme in a field");
  cmd_df->add_option("--scheme", df_scheme, "preset name or scheme JSON path");
  cmd_df->add_option("--field", df_field, "field shorthand or JSON path");
  cmd_df->add_option("--m", df_m, "restrict to one m (default: all)");
  cmd_df->add_flag("--all-excited", df_all,
                   "require darkness for every excited level simultaneously");
  cmd_df->add_option("--tol", df_tol, "null-space threshold");
  cmd_df->add_option("--out", df_out, "output path");

  // ---- config-solve -------------------------------------------------------
  std::string cs_scheme, cs_F, cs_m = "0", cs_family = "symmetric", cs_out;
  std::string cs_fix_eps1, cs_eps;
  auto* cmd_cs = app.add_subcommand(
      "config-solve", "solve the polarization condition for a dark m-m state");
  cmd_cs->add_option("--scheme", cs_scheme, "preset name or scheme JSON path");
  cmd_cs->add_option("--F", cs_F, "lower ground momentum (alternative to --scheme)");
  cmd_cs->add_option("--m", cs_m, "magnetic quantum number");
  cmd_cs->add_option("--family", cs_family,
                     "general|symmetric|lin-perp-eps|eps-perp-lin|"
                     "parallel-fplus2|parallel-equal-f");
  cmd_cs->add_option("--fix-eps1", cs_fix_eps1, "fixed ellipticity of component 1");
  cmd_cs->add_option("--eps", cs_eps, "common ellipticity for parallel-equal-f");
  cmd_cs->add_option("--out", cs_out, "output path");

  // ---- config-scan --------------------------------------------------------
  std::string sc_scheme, sc_F = "3", sc_m = "1", sc_fe, sc_mode = "theta", sc_out;
  double sc_step_deg = 1.0;
  auto* cmd_scan = app.add_subcommand(
      "config-scan", "CSV residual grid of the darkness condition");
  cmd_scan->add_option("--scheme", sc_scheme, "preset name or scheme JSON path");
  cmd_scan->add_option("--F", sc_F, "lower ground momentum if no scheme given");
  cmd_scan->add_option("--m", sc_m, "magnetic quantum number");
  cmd_scan->add_option("--fe", sc_fe, "excited momentum (default F+1)");
  cmd_scan->add_option("--mode", sc_mode, "theta (axis-angle scan) or eps (ellipticity grid)");
  cmd_scan->add_option("--step-deg", sc_step_deg, "grid step in degrees");
  cmd_scan->add_option("--out", sc_out, "output path");

  // ---- comb-check ---------------------------------------------------------
  std::string cb_scheme = "cs-d1", cb_m = "0", cb_eps = "0", cb_out;
  int cb_n = 5;
  double cb_tol = 1e-10;
  auto* cmd_cb = app.add_subcommand(
      "comb-check", "darkness of an eps-perp-eps frequency comb");
  cmd_cb->add_option("--scheme", cb_scheme, "preset name or scheme JSON path");
  cmd_cb->add_option("--n", cb_n, "number of comb components");
  cmd_cb->add_option("--eps", cb_eps, "common ellipticity");
  cmd_cb->add_option("--m", cb_m, "magnetic quantum number");
  cmd_cb->add_option("--tol", cb_tol, "residual threshold");
  cmd_cb->add_option("--out", cb_out, "output path");

  // ---- pump ---------------------------------------------------------------
  PumpCliOptions pump;
  auto* cmd_pump = app.add_subcommand(
      "pump", "optical-pumping trajectory (CSV: t, dark population, ...)");
  pump.attach(cmd_pump, true);

  // ---- steady -------------------------------------------------------------
  PumpCliOptions steady;
  auto* cmd_steady = app.add_subcommand(
      "steady", "stationary state of the optical-pumping master equation");
  steady.attach(cmd_steady, false);

  // ---- resolution-scan ----------------------------------------------------
  PumpCliOptions rscan;
  std::string rs_splittings = "0,0.5,1,2,5,10";
  auto* cmd_rs = app.add_subcommand(
      "resolution-scan",
      "steady-state dark fidelity vs excited hyperfine splitting (CSV)");
  rscan.attach(cmd_rs, false);
  cmd_rs->add_option("--splittings", rs_splittings, "comma-separated list (Gamma)");

  // ---- identity-suite -----------------------------------------------------
  std::string is_maxF = "5";
  auto* cmd_is = app.add_subcommand(
      "identity-suite", "exact verification of the CG/dipole ratio identities");
  cmd_is->add_option("--max-F", is_maxF, "largest ground momentum");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*cmd_cg) {
      const Surd c = clebsch_gordan(
          parse_half(cg_args[0], "F1"), parse_half(cg_args[1], "m1"),
          parse_half(cg_args[2], "F2"), parse_half(cg_args[3], "m2"),
          parse_half(cg_args[4], "F"), parse_half(cg_args[5], "M"));
      std::cout << c.str() << " = " << fmt(c.value()) << "\n";
    } else if (*cmd_sixj) {
      const Surd s = wigner_6j(
          parse_half(sixj_args[0], "j1"), parse_half(sixj_args[1], "j2"),
          parse_half(sixj_args[2], "j3"), parse_half(sixj_args[3], "j4"),
          parse_half(sixj_args[4], "j5"), parse_half(sixj_args[5], "j6"));
      std::cout << s.str() << " = " << fmt(s.value()) << "\n";
    } else if (*cmd_dip) {
      LineId line;
      std::string l = dip_line;
      for (auto& ch : l) ch = static_cast<char>(std::tolower(ch));
      if (l == "d1") line = LineId::d1;
      else if (l == "d2") line = LineId::d2;
      else throw std::domain_error("--line must be D1 or D2");
      const Surd d = reduced_dipole(parse_half(dip_F, "F"), parse_half(dip_Fe, "Fe"),
                                    line, parse_half(dip_I, "--ispin"));
      std::cout << d.str() << " = " << fmt(d.value()) << "\n";
    } else if (*cmd_pol) {
      const BichromaticField f = load_field(pol_field);
      Json out = Json::array();
      for (const FieldComponent* c : {&f.comp1, &f.comp2}) {
        const auto sph = c->spherical();
        Json jc = to_json(*c);
        jc["spherical"] = Json{{"minus", to_json(sph.minus)},
                               {"plus", to_json(sph.plus)}};
        out.push_back(jc);
      }
      emit_json(Json{{"components", out}, {"theta_rad", f.theta()}}, pol_out);
    } else if (*cmd_df) {
      const LevelScheme scheme = load_scheme(df_scheme);
      const BichromaticField field = load_field(df_field);
      std::vector<HalfInt> ms;
      if (!df_m.empty()) {
        ms.push_back(parse_half(df_m, "--m"));
      } else {
        const HalfInt top = std::min(scheme.F1, scheme.F2);
        for (HalfInt m = -top; m <= top; m += HalfInt(1)) ms.push_back(m);
      }
      Json cands = Json::array();
      for (HalfInt m : ms)
        for (const auto& c : null_space_dark(scheme, field, m, df_all, df_tol))
          cands.push_back(to_json(c));
      Json traps = Json::array();
      for (const auto& t : trap_states(scheme, field)) traps.push_back(to_json(t));
      emit_json(Json{{"candidates", cands}, {"trap_states", traps}}, df_out);
    } else if (*cmd_cs) {
      const ConfigFamily family = parse_family(cs_family);
      ConfigSolution sol{};
      if (family == ConfigFamily::parallel_equal_f) {
        sol = solve_parallel_equal_f(cs_eps.empty() ? 0.0 : parse_angle(cs_eps));
      } else {
        HalfInt F;
        if (!cs_scheme.empty()) F = load_scheme(cs_scheme).F1;
        else if (!cs_F.empty()) F = parse_half(cs_F, "--F");
        else throw std::domain_error("config-solve: give --scheme or --F");
        std::optional<double> fix;
        if (!cs_fix_eps1.empty()) fix = parse_angle(cs_fix_eps1);
        const HalfInt m = parse_half(cs_m, "--m");
        sol = family == ConfigFamily::parallel_fplus2
                  ? solve_parallel_fplus2(F, m, fix)
                  : solve_perp(F, m, family, fix);
      }
      Json j = to_json(sol);
      j["epsilon1_deg"] = sol.epsilon1 * 180.0 / pi;
      j["epsilon2_deg"] = sol.epsilon2 * 180.0 / pi;
      emit_json(j, cs_out);
    } else if (*cmd_scan) {
      HalfInt F;
      if (!sc_scheme.empty()) F = load_scheme(sc_scheme).F1;
      else F = parse_half(sc_F, "--F");
      const HalfInt m = parse_half(sc_m, "--m");
      const HalfInt Fe = sc_fe.empty() ? F + HalfInt(1) : parse_half(sc_fe, "--fe");
      const HalfInt F2 = F + HalfInt(1);
      std::ofstream file;
      auto& os = open_output(file, sc_out);
      os << "theta_rad,eps1_rad,eps2_rad,residual\n";
      if (sc_mode == "theta") {
        const auto sol = solve_perp(F, m, ConfigFamily::perp_symmetric);
        for (double deg = 0.0; deg < 180.0; deg += sc_step_deg) {
          const double th = deg * pi / 180.0;
          BichromaticField f{FieldComponent({1, 0}, sol.epsilon1, 0.0, 0),
                             FieldComponent({1, 0}, sol.epsilon2, th, 1)};
          const auto chk = check_condition(F, F2, Fe, m, f);
          os << fmt(th) << "," << fmt(sol.epsilon1) << "," << fmt(sol.epsilon2)
             << "," << fmt(chk.residual) << "\n";
        }
      } else if (sc_mode == "eps") {
        const double step = sc_step_deg * pi / 180.0;
        for (double e1 = -quarter_pi; e1 <= quarter_pi + 1e-12; e1 += step) {
          for (double e2 = -quarter_pi; e2 <= quarter_pi + 1e-12; e2 += step) {
            BichromaticField f{
                FieldComponent({1, 0}, std::clamp(e1, -quarter_pi, quarter_pi), 0.0, 0),
                FieldComponent({1, 0}, std::clamp(e2, -quarter_pi, quarter_pi),
                               pi / 2.0, 1)};
            const auto chk = check_condition(F, F2, Fe, m, f);
            os << fmt(pi / 2.0) << "," << fmt(e1) << "," << fmt(e2) << ","
               << fmt(chk.residual) << "\n";
          }
        }
      } else {
        throw std::domain_error("config-scan: --mode must be theta or eps");
      }
    } else if (*cmd_cb) {
      const LevelScheme scheme = load_scheme(cb_scheme);
      const auto base = named_config(ConfigKind::eps_perp_eps,
                                     {.eps1 = parse_angle(cb_eps)});
      const CombField comb = comb_from_pair(base, cb_n);
      const auto found = comb_dark_check(scheme, comb, parse_half(cb_m, "--m"), cb_tol);
      Json j{{"n", cb_n}, {"found", static_cast<bool>(found)}};
      if (found) j["candidate"] = to_json(*found);
      emit_json(j, cb_out);
    } else if (*cmd_pump) {
      const LevelScheme scheme = load_scheme(pump.scheme);
      const BichromaticField field = load_field(pump.field);
      auto [zee, params] = pump.build();
      PumpSimulation sim(scheme, field, zee, params);
      const auto dark =
          reference_dark_candidate(scheme, sim.effective_field(), params.m_target);
      const auto traj =
          sim.evolve(sim.uniform_ground_mixture(), pump.t_final, pump.samples);
      std::ofstream file;
      auto& os = open_output(file, pump.out);
      os << "t,dark_population,ground_purity,excited_population,end_state_population\n";
      for (const auto& row : metrics(traj, sim, dark))
        os << fmt(row.t) << "," << fmt(row.dark_population) << ","
           << fmt(row.ground_purity) << "," << fmt(row.excited_population) << ","
           << fmt(row.end_state_population) << "\n";
    } else if (*cmd_steady) {
      const LevelScheme scheme = load_scheme(steady.scheme);
      const BichromaticField field = load_field(steady.field);
      auto [zee, params] = steady.build();
      PumpSimulation sim(scheme, field, zee, params);
      const auto ss = sim.steady_state(true);
      Json j{{"residual", ss.residual},
             {"degenerate", ss.degenerate},
             {"null_dimension", ss.null_dimension},
             {"ground_purity", sim.ground_purity(ss.rho)},
             {"excited_population", sim.excited_population(ss.rho)},
             {"end_state_population", sim.end_state_population(ss.rho)}};
      try {
        const auto dark =
            reference_dark_candidate(scheme, sim.effective_field(), params.m_target);
        j["dark_candidate"] = to_json(dark);
        j["dark_fidelity"] = sim.fidelity(ss.rho, sim.ground_state_vector(dark));
      } catch (const std::runtime_error&) {
        j["dark_candidate"] = nullptr;
      }
      emit_json(j, steady.out);
    } else if (*cmd_rs) {
      const LevelScheme scheme = load_scheme(rscan.scheme);
      const BichromaticField field = load_field(rscan.field);
      auto [zee, params] = rscan.build();
      std::vector<double> splittings;
      std::stringstream ss(rs_splittings);
      for (std::string tok; std::getline(ss, tok, ',');)
        splittings.push_back(std::stod(tok));
      const auto points = resolution_scan(scheme, field, zee, params, splittings);
      std::ofstream file;
      auto& os = open_output(file, rscan.out);
      os << "splitting,fidelity,line\n";
      const char* line = scheme.line == LineId::d1
                             ? "D1"
                             : (scheme.line == LineId::d2 ? "D2" : "generic");
      for (const auto& p : points)
        os << fmt(p.splitting) << "," << fmt(p.fidelity) << "," << line << "\n";
    } else if (*cmd_is) {
      const auto reports = run_identity_suite(parse_half(is_maxF, "--max-F"));
      bool all = true;
      for (const auto& r : reports) {
        std::printf("%-45s cases=%-6ld failures=%-4ld %s\n", r.name.c_str(),
                    r.cases, r.failures, r.pass() ? "PASS" : "FAIL");
        all = all && r.pass();
      }
      return all ? kExitOk : kExitNumerical;
    }
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) { return run(argc, argv); }
