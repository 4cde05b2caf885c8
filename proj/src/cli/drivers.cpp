#include "drivers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <locale>
#include <numbers>
#include <random>
#include <sstream>

#include "restframe/algebra.hpp"
#include "restframe/csv.hpp"
#include "restframe/dynamics.hpp"
#include "restframe/ehrenfest.hpp"
#include "restframe/entanglement.hpp"
#include "restframe/errors.hpp"
#include "restframe/kinematics.hpp"
#include "restframe/spectrum.hpp"

namespace restframe::cli {

namespace {

const char* relation_name(Relation r) {
  switch (r) {
    case Relation::at_most: return "<=";
    case Relation::greater_than: return ">";
    case Relation::is_true: return "true";
  }
  return "?";
}

std::ostringstream text_stream() {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  return os;
}

void emit(RunReport& report, const RunOptions& opt, const std::string& name, const std::string& contents) {
  csv::write_atomic(opt.out_dir / name, contents);
  report.outputs.push_back(name);
}

}  // namespace

void RunReport::at_most(const std::string& name, double value, double threshold) {
  checks.push_back({name, value, threshold, Relation::at_most, value <= threshold});
}

void RunReport::greater_than(const std::string& name, double value, double threshold) {
  checks.push_back({name, value, threshold, Relation::greater_than, value > threshold});
}

void RunReport::is_true(const std::string& name, bool ok) {
  checks.push_back({name, ok ? 1.0 : 0.0, 1.0, Relation::is_true, ok});
}

bool RunReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string RunReport::to_json() const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment;
  j["seed"] = seed;
  j["pass"] = pass();
  j["exit_code"] = exit_code();
  j["checks"] = nlohmann::ordered_json::array();
  for (const Check& c : checks) {
    nlohmann::ordered_json e;
    e["name"] = c.name;
    e["value"] = c.value;
    e["threshold"] = c.threshold;
    e["relation"] = relation_name(c.relation);
    e["pass"] = c.pass;
    j["checks"].push_back(e);
  }
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

RunReport run_tube(ExperimentConfig& cfg, const RunOptions& opt) {
  ConfigSection& root = cfg.root;
  CollectiveState cs;
  cs.S = root.vec3("S", {0.0, 0.0, 1.0});
  cs.Mc = root.positive("Mc", 1.0);
  cs.z = root.vec3("z", {0.0, 0.0, 0.0});
  cs.c = root.positive("c", 1.0);
  const Vec3 direction = root.vec3("direction", {1.0, 0.0, 0.0});
  const double t_max = root.positive("t_max", 1e4);
  const auto scan_points = root.integer("scan_points", 2001, 2);
  const auto random_points = root.integer("random_points", 200, 0);
  const double random_h_max = root.positive("random_h_max", 10.0);
  Tolerances tol(root.section("tolerances"));
  const double tol_bound = tol.get("bound", 1e-12);
  const double tol_sup = tol.get("sup", 1e-4);
  const double tol_between = tol.get("betweenness", 1e-12);
  tol.finish();
  root.finish();
  cs.validate();
  if (norm(direction) == 0.0) throw ValidationError("direction must be non-zero");

  // t = 0, then geometric spacing from 1e-3 up to t_max along the unit direction.
  const Vec3 u = direction * (1.0 / norm(direction));
  std::vector<Vec3> h;
  h.push_back({0.0, 0.0, 0.0});
  const double t_min = std::min(1e-3, t_max);
  for (std::int64_t i = 0; i + 1 < scan_points; ++i) {
    const double f = scan_points > 2 ? static_cast<double>(i) / static_cast<double>(scan_points - 2) : 1.0;
    h.push_back(u * (t_min * std::pow(t_max / t_min, f)));
  }
  std::mt19937_64 rng(opt.seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  for (std::int64_t i = 0; i < random_points; ++i) {
    const Vec3 d{unit(rng), unit(rng), unit(rng)};
    h.push_back(d * random_h_max);
  }

  const TubeReport tube = tube_scan(cs, h);
  RunReport report{"tube", opt.seed, {}, {}};
  report.at_most("offset_bound_excess", std::max(0.0, tube.sup() - tube.rho), tol_bound * std::max(1.0, tube.rho));
  report.at_most("sup_gap", tube.rho - tube.sup(), tol_sup * std::max(1.0, tube.rho));
  report.at_most("betweenness_residual", tube.betweenness_residual, tol_between * std::max(1.0, tube.rho));
  if (tube.rho > 0.0) report.greater_than("min_strictness", tube.min_strictness, 0.0);

  auto os = text_stream();
  write_tube_csv(os, tube);
  emit(report, opt, "tube.csv", os.str());
  return report;
}

// ---------------------------------------------------------------------------

namespace {

/// max |{ρ_i, π_j} - δ_ij|, |{ρ_i, ρ_j}|, |{π_i, π_j}| for the relative map of the internal layout.
double relative_canonicity(const PhaseSpacePoint& pt, double m1, double m2) {
  const double M = m1 + m2;
  PhaseVectorFunction rel = [m1, m2, M](std::span<const Dual> q, std::span<const Dual> p) {
    std::vector<Dual> out(6);
    for (int i = 0; i < 3; ++i) {
      out[i] = q[i] - q[3 + i];
      out[3 + i] = (m2 / M) * p[i] - (m1 / M) * p[3 + i];
    }
    return out;
  };
  const Gradients g = gradients(rel, pt, DiffMode::dual);
  double worst = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      worst = std::max(worst, std::abs(g.bracket(i, 3 + j) - (i == j ? 1.0 : 0.0)));
      worst = std::max(worst, std::abs(g.bracket(i, j)));
      worst = std::max(worst, std::abs(g.bracket(3 + i, 3 + j)));
    }
  }
  return worst;
}

DiffMode diff_mode_from_string(const std::string& s) {
  if (s == "automatic") return DiffMode::automatic;
  if (s == "dual") return DiffMode::dual;
  if (s == "central") return DiffMode::central;
  throw ValidationError("diff_mode: expected automatic, dual or central, got '" + s + "'");
}

}  // namespace

RunReport run_algebra(ExperimentConfig& cfg, const RunOptions& opt) {
  ConfigSection& root = cfg.root;
  const Layout layout = layout_from_string(root.string("layout", "external"));
  if (layout == Layout::relative) throw ValidationError("layout: closure runs on 'external' or 'internal'");
  const auto samples = root.integer("samples", 50, 1);
  const DiffMode mode = diff_mode_from_string(root.string("diff_mode", "dual"));
  const PotentialSpec pspec = root.potential("potential", "oscillator", {1.0});
  const double m1 = root.positive("m1", 1.0);
  const double m2 = root.positive("m2", 1.0);
  const double c = root.positive("c", 1.0);
  Tolerances tol(root.section("tolerances"));
  const double tol_closure = tol.get("closure", layout == Layout::external ? 1e-8 : 1e-6);
  const double tol_canon = tol.get("canonicity", 1e-12);
  tol.finish();
  root.finish();

  std::mt19937_64 rng(opt.seed);
  RunReport report{"algebra", opt.seed, {}, {}};
  ClosureReport closure;
  if (layout == Layout::external) {
    std::vector<CollectiveState> states;
    for (std::int64_t i = 0; i < samples; ++i) states.push_back(random_collective_state(rng));
    closure = verify_external_closure(states, mode);
  } else {
    const Potential V = pspec.make();
    std::vector<PhaseSpacePoint> points;
    for (std::int64_t i = 0; i < samples; ++i) points.push_back(random_internal_point_on_surface(rng));
    closure = verify_internal_closure(points, V, m1, m2, c, mode);
    double canon = 0.0;
    for (const auto& pt : points) canon = std::max(canon, relative_canonicity(pt, m1, m2));
    report.at_most("relative_canonicity", canon, tol_canon);
  }
  report.at_most("closure_max_residual", closure.max_residual(), tol_closure);
  emit(report, opt, "closure.json", closure_report_json(closure) + "\n");
  return report;
}

// ---------------------------------------------------------------------------

RunReport run_orbit(ExperimentConfig& cfg, const RunOptions& opt) {
  ConfigSection& root = cfg.root;
  const Potential V = root.potential("potential", "oscillator", {1.0}).make();
  const double m1 = root.positive("m1", 1.0);
  const double m2 = root.positive("m2", 1.0);
  const double c = root.positive("c", 1.0);
  RelativeState s0;
  s0.rho = root.vec3("rho", {1.0, 0.0, 0.0});
  s0.pi = root.vec3("pi", {0.0, 1.0, 0.0});
  EvolveConfig ec;
  ec.step = root.positive("step", 1e-3);
  ec.steps = static_cast<std::size_t>(root.integer("steps", 10000, 1));
  ec.record_every = static_cast<std::size_t>(root.integer("record_every", 10, 1));
  CollectiveState cs;
  cs.z = root.vec3("z", {0.0, 0.0, 0.0});
  cs.h = root.vec3("h", {0.0, 0.0, 0.0});
  cs.c = c;
  const Vec3 boost_h = root.vec3("boost_h", {0.6, 0.0, 0.0});
  const std::vector<double> c_list = root.numbers("nonrel_c", {10.0, 100.0, 1000.0, 10000.0});
  Tolerances tol(root.section("tolerances"));
  const double tol_mass = tol.get("mass_drift", 1e-9);
  const double tol_spin = tol.get("spin_drift", 1e-9);
  const double tol_trip = tol.get("round_trip", 1e-9);
  const double tol_shell = tol.get("mass_shell", 1e-10);
  const double tol_equal = tol.get("equal_time", 1e-12);
  const double min_gap = tol.get("boosted_time_gap", 1e-3);
  const double tol_exp = tol.get("nonrel_exponent", 0.1);
  tol.finish();
  root.finish();

  RunReport report{"orbit", opt.seed, {}, {}};
  const Trajectory traj = evolve(s0, V, m1, m2, c, ec);
  report.at_most("mass_drift", traj.max_mass_drift(), tol_mass);
  report.at_most("spin_drift", traj.max_spin_drift(), tol_spin);

  RelativeState back = traj.samples.back();
  back.pi = back.pi * -1.0;
  back.tau = 0.0;
  EvolveConfig bc = ec;
  bc.record_every = ec.steps;
  const RelativeState end = evolve(back, V, m1, m2, c, bc).samples.back();
  double trip = 0.0;
  for (int i = 0; i < 3; ++i) {
    trip = std::max(trip, std::abs(end.rho[i] - s0.rho[i]));
    trip = std::max(trip, std::abs(end.pi[i] + s0.pi[i]));
  }
  report.at_most("round_trip_error", trip, tol_trip);

  const WorldLinePair wl = worldlines(traj, cs, V, m1, m2);
  report.at_most("mass_shell_residual", mass_shell_residual(wl, traj, V, m1, m2), tol_shell);
  if (norm(cs.h) == 0.0) report.at_most("equal_time_gap", equal_time_check(wl, cs.h).max_time_gap, tol_equal);

  CollectiveState boosted = cs;
  boosted.h = boost_h;
  const WorldLinePair wlb = worldlines(traj, boosted, V, m1, m2);
  report.greater_than("boosted_time_gap", equal_time_check(wlb, boost_h).max_time_gap, min_gap);

  const NonrelTable nr = nonrel_limit_check(V, s0, m1, m2, c_list);
  report.at_most("nonrel_exponent_error", std::abs(nr.decay_exponent - 2.0), tol_exp);

  auto os = text_stream();
  write_trajectory_csv(os, traj);
  emit(report, opt, "trajectory.csv", os.str());
  auto ws = text_stream();
  write_worldlines_csv(ws, wl);
  emit(report, opt, "worldlines.csv", ws.str());
  auto ns = text_stream();
  ns << "c,excess,newton,deviation\n";
  for (const auto& r : nr.rows) csv::row(ns, {r.c, r.excess, r.newton, r.deviation});
  emit(report, opt, "nonrel.csv", ns.str());
  return report;
}

// ---------------------------------------------------------------------------

RunReport run_spectrum(ExperimentConfig& cfg, const RunOptions& opt) {
  ConfigSection& root = cfg.root;
  const PotentialSpec pspec = root.potential("potential", "coulomb", {1.0});
  const Potential V = pspec.make();
  const std::vector<std::int64_t> ls = root.integers("l", {0});
  const double m1 = root.positive("m1", 1.0);
  const double m2 = root.positive("m2", 1.0);
  const double c = root.positive("c", 1.0);
  const double r_max = root.positive("r_max", 200.0);
  const auto n_points = root.integer("n_points", 4000, 16);
  const auto levels = root.integer("levels", 3, 1);
  const bool richardson = root.boolean("richardson", true);
  const auto richardson_points = root.integer("richardson_points", 999, 16);
  Tolerances tol(root.section("tolerances"));
  const double tol_level = tol.get("level_relative", 1e-3);
  const double tol_order = tol.get("richardson_order", 0.1);
  tol.finish();
  root.finish();
  if (ls.empty()) throw ValidationError("l: need at least one angular momentum");

  RunReport report{"spectrum", opt.seed, {}, {}};
  const RadialGrid grid = RadialGrid::make(r_max, static_cast<int>(n_points));
  for (std::int64_t l64 : ls) {
    if (l64 < 0) throw ValidationError("l: angular momenta must be >= 0");
    const int l = static_cast<int>(l64);
    const std::vector<double> h = solve_reduced_hamiltonian(V, l, grid, static_cast<int>(levels));
    const MassSpectrum ms = mass_spectrum(h, l, m1, m2, c);
    emit(report, opt, "spectrum_l" + std::to_string(l) + ".json", spectrum_json(ms, l, grid) + "\n");

    double worst = -1.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      double exact = 0.0;
      if (pspec.kind == "coulomb") {
        const double n = static_cast<double>(i) + l + 1;
        const double K = pspec.coefficients[0];
        exact = -K * K / (4.0 * n * n);
      } else if (pspec.kind == "oscillator") {
        exact = std::abs(pspec.coefficients[0]) * (4.0 * static_cast<double>(i) + 2.0 * l + 3.0);
      } else {
        break;
      }
      worst = std::max(worst, std::abs(h[i] - exact) / std::abs(exact));
    }
    if (worst >= 0.0) report.at_most("level_error_l" + std::to_string(l), worst, tol_level);
    if (richardson) {
      const RadialGrid coarse = RadialGrid::make(r_max, static_cast<int>(richardson_points));
      report.at_most("richardson_order_error_l" + std::to_string(l), std::abs(richardson_order(V, l, coarse) - 2.0),
                     tol_order);
    }
  }
  return report;
}

// ---------------------------------------------------------------------------

RunReport run_entangle(ExperimentConfig& cfg, const RunOptions& opt) {
  ConfigSection& root = cfg.root;
  const double m_e = root.positive("m_e", 1.0);
  const double m_p = root.positive("m_p", 1836.15267343);
  const double L = root.positive("box_length", 40.0);
  const auto n = root.integer("grid_points", 128, 8);
  const auto k_index = root.integer("momentum_index", 3, -1000000);
  ConfigSection phi = root.section("phi");
  const std::string phi_kind = phi.string("kind", "exponential");
  const double scale = phi.positive("scale", 1.0);
  phi.finish();
  const double t = root.number("presentation_time", 0.7);
  const Vec3 rel_h = root.vec3("relativistic_h", {0.3, 0.0, 0.0});
  Tolerances tol(root.section("tolerances"));
  const double tol_structure = tol.get("kernel_structure", 1e-10);
  const double tol_flat = tol.get("diagonal_flatness", 1e-10);
  const double tol_schmidt = tol.get("schmidt_symmetry", 1e-8);
  const double tol_pres = tol.get("presentation", 1e-10);
  const double tol_herm = tol.get("hermiticity", 1e-12);
  tol.finish();
  root.finish();

  std::function<cplx(double)> phi_int;
  if (phi_kind == "exponential") {
    phi_int = [scale](double r) { return cplx(std::exp(-std::abs(r) / scale), 0.0); };
  } else if (phi_kind == "gaussian") {
    phi_int = [scale](double r) { return cplx(std::exp(-0.5 * r * r / (scale * scale)), 0.0); };
  } else {
    throw ValidationError("phi.kind: expected exponential or gaussian, got '" + phi_kind + "'");
  }

  const Grid1D grid = Grid1D::periodic_box(L, static_cast<std::size_t>(n));
  const double p = 2.0 * std::numbers::pi * static_cast<double>(k_index) / L;
  const TwoParticleWavefunction psi = hydrogen_state(phi_int, p, m_e, m_p, grid);

  RunReport report{"entangle", opt.seed, {}, {}};
  const ReducedDensityMatrix rho_e = trace_out_particle(psi, Particle::electron);
  const ReducedDensityMatrix rho_p = trace_out_particle(psi, Particle::proton);
  const KernelStructure se = kernel_structure(rho_e, psi, Particle::electron);
  const KernelStructure sp = kernel_structure(rho_p, psi, Particle::proton);
  const double structure = std::max({se.structure_residual, se.modulus_residual, sp.structure_residual, sp.modulus_residual});
  report.at_most("kernel_structure_residual", structure, tol_structure);
  report.at_most("diagonal_flatness", std::max(se.diagonal_flatness, sp.diagonal_flatness), tol_flat);
  report.at_most("hermiticity", std::max(rho_e.hermiticity_residual(), rho_p.hermiticity_residual()), tol_herm);

  const double s_e = entanglement_entropy(rho_e);
  const double s_p = entanglement_entropy(rho_p);
  report.at_most("schmidt_symmetry", std::abs(s_e - s_p), tol_schmidt);

  ReducedDensityMatrix rel_b = trace_out_com(psi, PresentationTag::B);
  ReducedDensityMatrix rel_c = trace_out_com(psi, PresentationTag::C, t);
  rel_b.normalize();
  rel_c.normalize();
  report.at_most("presentation_b_c_entropy", std::abs(entanglement_entropy(rel_b) - entanglement_entropy(rel_c)),
                 tol_pres);

  RelativisticState rs;
  rs.k = rel_h;
  rs.grid = grid;
  for (std::size_t j = 0; j < grid.n; ++j) rs.phi.push_back(phi_int(grid.x(j)));
  const ReducedDensityMatrix rho_rel = relativistic_reduced(rs);
  int refused = 0;
  for (int which : {1, 2}) {
    try {
      trace_out_relativistic_particle(rs, which);
    } catch (const RelativisticNonSeparability&) {
      ++refused;
    }
  }
  report.is_true("relativistic_particle_trace_refused", refused == 2);

  nlohmann::ordered_json scalars;
  scalars["purity"] = rho_e.purity();
  scalars["entropy"] = s_e;
  scalars["kernel_structure_residual"] = structure;
  scalars["proton_entropy"] = s_p;
  scalars["relative_purity"] = rho_rel.purity();
  emit(report, opt, "entangle.json", scalars.dump(2) + "\n");
  auto ke = text_stream();
  write_kernel_csv(ke, rho_e);
  emit(report, opt, "kernel_electron.csv", ke.str());
  auto kr = text_stream();
  write_kernel_csv(kr, rho_rel);
  emit(report, opt, "kernel_relative.csv", kr.str());
  return report;
}

// ---------------------------------------------------------------------------

RunReport run_ehrenfest(ExperimentConfig& cfg, const RunOptions& opt) {
  ConfigSection& root = cfg.root;
  const double m = root.positive("m", 1.0);
  const double c = root.positive("c", 1.0);
  const double k_mean = root.number("k_mean", 1.0);
  const double sigma_k = root.positive("sigma_k", 0.25);
  const double x0 = root.number("x0", 0.0);
  const auto modes = root.integer("modes", 512, 3);
  const double L = root.positive("box_length", 200.0);
  const double tau_max = root.positive("tau_max", 10.0);
  const auto tau_points = root.integer("tau_points", 101, 3);
  const double fd_step = root.positive("fd_step", 1e-3);
  const double dipole_offset = root.number("dipole_offset", 0.5);
  ConfigSection narrow = root.section("narrow");
  const double narrow_sigma_k = narrow.positive("sigma_k", 0.02);
  const double narrow_dk = narrow.positive("dk", 0.002);
  const auto narrow_modes = narrow.integer("modes", 1201, 3);
  narrow.finish();
  Tolerances tol(root.section("tolerances"));
  const double tol_norm = tol.get("norm_drift", 1e-14);
  const double tol_mom = tol.get("momentum_drift", 1e-13);
  const double tol_ehr = tol.get("ehrenfest", 1e-6);
  const double tol_second = tol.get("second_difference", 1e-8);
  const double tol_line = tol.get("straight_line", 1e-10);
  const double tol_dipole = tol.get("engineered_dipole", 1e-12);
  const double tol_narrow = tol.get("narrow_velocity", 1e-3);
  tol.finish();
  root.finish();

  const WavePacket p0 = WavePacket::gaussian(k_mean, sigma_k, x0, m, c, static_cast<std::size_t>(modes), L);
  std::vector<double> taus(static_cast<std::size_t>(tau_points));
  for (std::size_t i = 0; i < taus.size(); ++i) {
    taus[i] = tau_max * static_cast<double>(i) / static_cast<double>(taus.size() - 1);
  }
  const EmergentTrajectory traj = emergent_trajectory(p0, taus, fd_step);

  RunReport report{"ehrenfest", opt.seed, {}, {}};
  report.at_most("norm_drift", traj.max_norm_drift, tol_norm);
  report.at_most("momentum_drift", traj.max_momentum_drift, tol_mom);
  report.at_most("ehrenfest_residual", traj.max_ehrenfest_residual, tol_ehr);
  report.at_most("second_difference", traj.max_second_difference, tol_second);

  double line = 0.0;
  const EhrenfestRow& first = traj.rows.front();
  for (const auto& r : traj.rows) {
    line = std::max(line, std::abs(r.sigma_mean - (first.sigma_mean + (r.tau - first.tau) * first.velocity_mean)));
  }
  report.at_most("straight_line_residual", line, tol_line);
  report.at_most("line_dipole", traj.max_line_dipole, tol_line);

  const double sigma0 = expectations(p0).sigma;
  const Multipoles mp = multipoles_about(p0, sigma0 - dipole_offset);
  report.at_most("engineered_dipole_error", std::abs(mp.dipole - dipole_offset), tol_dipole);

  const double narrow_box = 2.0 * std::numbers::pi / narrow_dk;
  const WavePacket pn =
      WavePacket::gaussian(1.0, narrow_sigma_k, 0.0, 1.0, 1.0, static_cast<std::size_t>(narrow_modes), narrow_box);
  report.at_most("narrow_velocity_error", std::abs(expectations(pn).velocity - 1.0 / std::numbers::sqrt2), tol_narrow);

  auto os = text_stream();
  write_ehrenfest_csv(os, traj);
  emit(report, opt, "ehrenfest.csv", os.str());
  return report;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"tube", "algebra", "orbit", "spectrum", "entangle", "ehrenfest"};
  return names;
}

RunReport run_experiment(const std::string& name, ExperimentConfig& cfg, const RunOptions& opt) {
  std::filesystem::create_directories(opt.out_dir);
  RunReport report;
  if (name == "tube") report = run_tube(cfg, opt);
  else if (name == "algebra") report = run_algebra(cfg, opt);
  else if (name == "orbit") report = run_orbit(cfg, opt);
  else if (name == "spectrum") report = run_spectrum(cfg, opt);
  else if (name == "entangle") report = run_entangle(cfg, opt);
  else if (name == "ehrenfest") report = run_ehrenfest(cfg, opt);
  else throw ValidationError("unknown experiment '" + name + "'");
  report.outputs.push_back("report.json");
  csv::write_atomic(opt.out_dir / "report.json", report.to_json());
  return report;
}

std::filesystem::path resolve_output_dir(const std::string& flag, const ExperimentConfig& cfg) {
  if (!flag.empty()) return flag;
  if (cfg.output_dir) return *cfg.output_dir;
  if (const char* env = std::getenv("RESTFRAME_OUT"); env && *env) return env;
  return "restframe_out";
}

int main_for(const std::string& experiment, const std::filesystem::path& config_path, std::uint64_t seed,
             const std::string& out_flag) {
  try {
    ExperimentConfig cfg = load_config(config_path, experiment);
    RunOptions opt{resolve_output_dir(out_flag, cfg), seed};
    const RunReport report = run_experiment(experiment, cfg, opt);
    for (const Check& c : report.checks) {
      std::cout << (c.pass ? "PASS " : "FAIL ") << c.name << " value=" << csv::format(c.value) << ' '
                << relation_name(c.relation) << ' ' << csv::format(c.threshold) << '\n';
    }
    std::cout << experiment << ": " << (report.pass() ? "all checks passed" : "checks failed") << " (report in "
              << (opt.out_dir / "report.json").string() << ")\n";
    return report.exit_code();
  } catch (const ValidationError& e) {
    std::cerr << "restframe " << experiment << ": invalid input: " << e.what() << '\n';
    return 1;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "restframe " << experiment << ": invalid input: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "restframe " << experiment << ": " << e.what() << '\n';
    return 2;
  }
}

}  // namespace restframe::cli
