#include "restframe/dynamics.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <string>

#include "restframe/csv.hpp"
#include "restframe/errors.hpp"

namespace restframe {

namespace {

using State6 = std::array<double, 6>;

void check_masses(double m1, double m2, double c) {
  if (!(m1 > 0.0) || !(m2 > 0.0)) throw ValidationError("particle masses must be positive");
  if (!(c > 0.0)) throw ValidationError("c must be positive");
}

State6 pack(const RelativeState& s) { return {s.rho.x, s.rho.y, s.rho.z, s.pi.x, s.pi.y, s.pi.z}; }
Vec3 rho_of(const State6& y) { return {y[0], y[1], y[2]}; }
Vec3 pi_of(const State6& y) { return {y[3], y[4], y[5]}; }

struct Roots {
  double H, w1, w2;
};

Roots roots(const Vec3& rho, const Vec3& pi, const Potential& V, double m1, double m2, double c) {
  const double H = dot(pi, pi) + V(dot(rho, rho));
  const double r1 = m1 * m1 * c * c + H;
  const double r2 = m2 * m2 * c * c + H;
  if (!std::isfinite(H)) throw DomainError("non-finite relative energy H");
  if (r1 < 0.0) throw DomainError("negative radicand m1^2 c^2 + H for particle 1");
  if (r2 < 0.0) throw DomainError("negative radicand m2^2 c^2 + H for particle 2");
  return {H, std::sqrt(r1), std::sqrt(r2)};
}

}  // namespace

double reduced_hamiltonian(const RelativeState& s, const Potential& V) { return dot(s.pi, s.pi) + V(dot(s.rho, s.rho)); }

double invariant_mass(const RelativeState& s, const Potential& V, double m1, double m2, double c) {
  check_masses(m1, m2, c);
  const Roots r = roots(s.rho, s.pi, V, m1, m2, c);
  return r.w1 + r.w2;
}

double rest_energy_excess(double H, double m1, double m2, double c) {
  // √(m²c²+H) - mc = H / (√(m²c²+H) + mc)
  auto one = [&](double m) {
    const double r = m * m * c * c + H;
    if (r < 0.0) throw DomainError("negative radicand in rest_energy_excess");
    return c * H / (std::sqrt(r) + m * c);
  };
  return one(m1) + one(m2);
}

State6 relative_vector_field(const State6& y, const Potential& V, double m1, double m2, double c) {
  const Vec3 rho = rho_of(y);
  const Vec3 pi = pi_of(y);
  const Roots r = roots(rho, pi, V, m1, m2, c);
  const double inv = 1.0 / r.w1 + 1.0 / r.w2;
  const Vec3 drho = pi * inv;
  const Vec3 dpi = rho * (-V.derivative(dot(rho, rho)) * inv);
  return {drho.x, drho.y, drho.z, dpi.x, dpi.y, dpi.z};
}

double Trajectory::max_mass_drift() const {
  double worst = 0.0;
  for (double m : Mc) worst = std::max(worst, std::abs(m - Mc.front()) / Mc.front());
  return worst;
}

double Trajectory::max_spin_drift() const {
  const double scale = std::max(norm(S.front()), 1e-300);
  double worst = 0.0;
  for (const Vec3& s : S) {
    for (std::size_t i = 0; i < 3; ++i) worst = std::max(worst, std::abs(s[i] - S.front()[i]) / scale);
  }
  return worst;
}

namespace {

class MidpointStepper {
 public:
  MidpointStepper(const Potential& V, double m1, double m2, double c, const EvolveConfig& cfg)
      : V_(V), m1_(m1), m2_(m2), c_(c), cfg_(cfg),
        guard_(-0.99 * std::min(m1 * m1 * c * c, m2 * m2 * c * c)) {}

  State6 field(const State6& y) const {
    const double H = dot(pi_of(y), pi_of(y)) + V_(dot(rho_of(y), rho_of(y)));
    if (!(H >= guard_)) {
      throw DomainError("radicand guard: H = " + std::to_string(H) + " below -0.99 min(m_i^2 c^2)");
    }
    return relative_vector_field(y, V_, m1_, m2_, c_);
  }

  State6 step(const State6& y0, std::size_t index) const {
    const double dt = cfg_.step;
    const State6 f0 = field(y0);
    State6 y1;
    for (int i = 0; i < 6; ++i) y1[i] = y0[i] + dt * f0[i];

    // Simplified Newton: the Jacobian of the residual y1 - y0 - dt f((y0+y1)/2)
    // is formed once per step at the predictor midpoint.
    const Eigen::PartialPivLU<Eigen::Matrix<double, 6, 6>> lu(residual_jacobian(mid(y0, y1)));
    for (int it = 0; it < cfg_.max_newton_iterations; ++it) {
      const State6 f = field(mid(y0, y1));
      Eigen::Matrix<double, 6, 1> g;
      for (int i = 0; i < 6; ++i) g[i] = y1[i] - y0[i] - dt * f[i];
      const Eigen::Matrix<double, 6, 1> delta = lu.solve(g);
      double size = 0.0;
      for (int i = 0; i < 6; ++i) {
        y1[i] -= delta[i];
        size = std::max(size, std::abs(delta[i]));
      }
      if (!std::isfinite(size)) break;
      if (size <= cfg_.newton_tolerance) return y1;
    }
    throw NumericalError("implicit midpoint: Newton iteration did not converge at step " + std::to_string(index));
  }

 private:
  static State6 mid(const State6& a, const State6& b) {
    State6 m;
    for (int i = 0; i < 6; ++i) m[i] = 0.5 * (a[i] + b[i]);
    return m;
  }

  Eigen::Matrix<double, 6, 6> residual_jacobian(const State6& ym) const {
    Eigen::Matrix<double, 6, 6> J = Eigen::Matrix<double, 6, 6>::Identity();
    for (int j = 0; j < 6; ++j) {
      const double h = 1e-6 * std::max(1.0, std::abs(ym[j]));
      State6 a = ym;
      State6 b = ym;
      a[j] += h;
      b[j] -= h;
      const State6 fa = field(a);
      const State6 fb = field(b);
      for (int i = 0; i < 6; ++i) J(i, j) -= 0.5 * cfg_.step * (fa[i] - fb[i]) / (2.0 * h);
    }
    return J;
  }

  const Potential& V_;
  double m1_, m2_, c_;
  EvolveConfig cfg_;
  double guard_;
};

}  // namespace

Trajectory evolve(const RelativeState& s0, const Potential& V, double m1, double m2, double c,
                  const EvolveConfig& cfg) {
  check_masses(m1, m2, c);
  if (!(cfg.step > 0.0) || !std::isfinite(cfg.step)) throw ValidationError("evolve: step must be positive");
  if (cfg.record_every == 0) throw ValidationError("evolve: record_every must be at least 1");
  if (!(cfg.newton_tolerance > 0.0)) throw ValidationError("evolve: newton tolerance must be positive");
  if (!is_finite(s0.rho) || !is_finite(s0.pi) || !std::isfinite(s0.tau)) {
    throw ValidationError("evolve: non-finite initial state");
  }

  const MidpointStepper stepper(V, m1, m2, c, cfg);
  Trajectory traj;
  traj.step = cfg.step;
  traj.c = c;
  auto record = [&](const RelativeState& s) {
    traj.samples.push_back(s);
    traj.Mc.push_back(invariant_mass(s, V, m1, m2, c));
    traj.S.push_back(cross(s.rho, s.pi));
  };

  stepper.field(pack(s0));  // radicand guard on the initial state
  record(s0);
  State6 y = pack(s0);
  for (std::size_t n = 1; n <= cfg.steps; ++n) {
    y = stepper.step(y, n - 1);
    if (n % cfg.record_every == 0 || n == cfg.steps) {
      record({rho_of(y), pi_of(y), s0.tau + static_cast<double>(n) * cfg.step});
    }
  }
  return traj;
}

WorldLinePair worldlines(const Trajectory& traj, const CollectiveState& cs, const Potential& V, double m1, double m2) {
  cs.validate();
  check_masses(m1, m2, cs.c);
  if (traj.samples.empty()) throw ValidationError("worldlines: empty trajectory");
  if (std::abs(cs.c - traj.c) > 1e-12 * traj.c) throw ValidationError("worldlines: c differs from the trajectory's");

  const Tetrad tet = wigner_tetrad(cs.h);
  WorldLinePair wl;
  for (const RelativeState& s : traj.samples) {
    const Roots r = roots(s.rho, s.pi, V, m1, m2, cs.c);
    const double Mc = r.w1 + r.w2;
    CollectiveState ext = cs;
    ext.Mc = Mc;
    ext.S = cross(s.rho, s.pi);
    const FourVector Y = fokker_pryce(ext, s.tau);

    FourVector rho_mu{};
    FourVector pi_mu{};
    for (std::size_t k = 0; k < 3; ++k) {
      rho_mu = rho_mu + s.rho[k] * tet.eps[k];
      pi_mu = pi_mu + s.pi[k] * tet.eps[k];
    }
    wl.tau.push_back(s.tau);
    wl.x1.push_back(Y + (r.w2 / Mc) * rho_mu);
    wl.x2.push_back(Y - (r.w1 / Mc) * rho_mu);
    wl.p1.push_back(r.w1 * tet.h_mu - pi_mu);
    wl.p2.push_back(r.w2 * tet.h_mu + pi_mu);
  }
  return wl;
}

double mass_shell_residual(const WorldLinePair& wl, const Trajectory& traj, const Potential& V, double m1,
                           double m2) {
  if (wl.tau.size() != traj.samples.size()) throw ValidationError("mass_shell_residual: size mismatch");
  const double c2 = traj.c * traj.c;
  double worst = 0.0;
  for (std::size_t i = 0; i < wl.tau.size(); ++i) {
    const double v = V(dot(traj.samples[i].rho, traj.samples[i].rho));
    worst = std::max(worst, std::abs(minkowski_dot(wl.p1[i], wl.p1[i]) - (m1 * m1 * c2 + v)));
    worst = std::max(worst, std::abs(minkowski_dot(wl.p2[i], wl.p2[i]) - (m2 * m2 * c2 + v)));
  }
  return worst;
}

EqualTimeReport equal_time_check(const WorldLinePair& wl, const Vec3& h) {
  EqualTimeReport rep;
  rep.h = h;
  for (std::size_t i = 0; i < wl.x1.size(); ++i) {
    rep.max_time_gap = std::max(rep.max_time_gap, std::abs(wl.x1[i].t - wl.x2[i].t));
  }
  return rep;
}

NonrelTable nonrel_limit_check(const Potential& V, const RelativeState& s0, double m1, double m2,
                               std::span<const double> c_list) {
  if (c_list.empty()) throw ValidationError("nonrel_limit_check: empty c list");
  const double H = reduced_hamiltonian(s0, V);
  const double mu = m1 * m2 / (m1 + m2);
  NonrelTable table;
  std::vector<double> lx;
  std::vector<double> ly;
  for (double c : c_list) {
    check_masses(m1, m2, c);
    NonrelRow row;
    row.c = c;
    row.excess = rest_energy_excess(H, m1, m2, c);
    row.newton = H / (2.0 * mu);
    row.deviation = std::abs(row.excess - row.newton);
    table.rows.push_back(row);
    if (row.deviation > 0.0) {
      lx.push_back(std::log(c));
      ly.push_back(std::log(row.deviation));
    }
  }
  if (lx.size() < 2) {
    table.decay_exponent = std::numeric_limits<double>::quiet_NaN();
    return table;
  }
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= static_cast<double>(lx.size());
  my /= static_cast<double>(lx.size());
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxy += (lx[i] - mx) * (ly[i] - my);
    sxx += (lx[i] - mx) * (lx[i] - mx);
  }
  table.decay_exponent = -sxy / sxx;
  return table;
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  os << "tau,rho_x,rho_y,rho_z,pi_x,pi_y,pi_z,Mc,Sx,Sy,Sz\n";
  for (std::size_t i = 0; i < traj.samples.size(); ++i) {
    const RelativeState& s = traj.samples[i];
    csv::row(os, {s.tau, s.rho.x, s.rho.y, s.rho.z, s.pi.x, s.pi.y, s.pi.z, traj.Mc[i], traj.S[i].x, traj.S[i].y,
                  traj.S[i].z});
  }
}

void write_worldlines_csv(std::ostream& os, const WorldLinePair& wl) {
  os << "tau";
  for (const char* name : {"x1", "x2", "p1", "p2"}) {
    for (int mu = 0; mu < 4; ++mu) os << ',' << name << '_' << mu;
  }
  os << '\n';
  for (std::size_t i = 0; i < wl.tau.size(); ++i) {
    std::vector<double> row{wl.tau[i]};
    for (const FourVector* v : {&wl.x1[i], &wl.x2[i], &wl.p1[i], &wl.p2[i]}) {
      row.insert(row.end(), {v->t, v->s.x, v->s.y, v->s.z});
    }
    csv::row(os, row);
  }
}

}  // namespace restframe
