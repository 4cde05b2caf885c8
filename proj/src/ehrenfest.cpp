#include "restframe/ehrenfest.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "restframe/csv.hpp"
#include "restframe/errors.hpp"
#include "restframe/kernels.hpp"

namespace restframe {

using cplx = std::complex<double>;

double WavePacket::dk() const { return 2.0 * std::numbers::pi / box_length; }

double WavePacket::k(std::size_t n) const {
  return (static_cast<double>(n) - 0.5 * static_cast<double>(size() - 1)) * dk();
}

double WavePacket::omega(std::size_t n) const {
  const double kn = k(n);
  return std::sqrt(kn * kn + m * m * c * c);
}

std::vector<double> WavePacket::k_grid() const {
  std::vector<double> out(size());
  for (std::size_t n = 0; n < size(); ++n) out[n] = k(n);
  return out;
}

std::vector<double> WavePacket::x_grid() const {
  std::vector<double> out(size());
  const double dx = box_length / static_cast<double>(size());
  for (std::size_t j = 0; j < size(); ++j) out[j] = -0.5 * box_length + static_cast<double>(j) * dx;
  return out;
}

double WavePacket::norm2() const {
  double acc = 0.0;
  for (const cplx& a : amplitudes) acc += std::norm(a);
  return acc * dk();
}

void WavePacket::validate() const {
  if (size() < 3) throw ValidationError("wave packet needs at least 3 modes");
  if (!(m > 0.0) || !(c > 0.0)) throw ValidationError("wave packet needs m > 0 and c > 0");
  if (!(box_length > 0.0) || !std::isfinite(box_length)) throw ValidationError("wave packet needs a positive box");
  for (const cplx& a : amplitudes) {
    if (!std::isfinite(a.real()) || !std::isfinite(a.imag())) throw ValidationError("non-finite packet amplitude");
  }
}

WavePacket WavePacket::gaussian(double k_mean, double sigma_k, double x0, double m, double c, std::size_t n_modes,
                                double box_length) {
  if (!(sigma_k > 0.0)) throw ValidationError("gaussian packet needs sigma_k > 0");
  WavePacket p;
  p.m = m;
  p.c = c;
  p.box_length = box_length;
  p.amplitudes.resize(n_modes);
  p.validate();
  for (std::size_t n = 0; n < n_modes; ++n) {
    const double kn = p.k(n);
    const double u = (kn - k_mean) / sigma_k;
    p.amplitudes[n] = std::polar(std::exp(-0.25 * u * u), -kn * x0);
  }
  const double scale = 1.0 / std::sqrt(p.norm2());
  for (cplx& a : p.amplitudes) a *= scale;
  return p;
}

WavePacket propagate_free(const WavePacket& packet, double tau) {
  packet.validate();
  WavePacket out = packet;
  for (std::size_t n = 0; n < out.size(); ++n) out.amplitudes[n] *= std::polar(1.0, -packet.omega(n) * tau);
  return out;
}

std::vector<cplx> position_amplitudes(const WavePacket& packet) {
  packet.validate();
  const std::vector<double> k = packet.k_grid();
  const std::vector<double> x = packet.x_grid();
  return kernels::omp::fourier_synthesis(packet.amplitudes, k, x, packet.dk() / std::sqrt(2.0 * std::numbers::pi));
}

namespace {

struct PositionMoments {
  double norm{0.0};
  double mean{0.0};
  double second{0.0};  // about the supplied reference
};

PositionMoments position_moments(const WavePacket& packet, double reference) {
  const std::vector<cplx> psi = position_amplitudes(packet);
  const std::vector<double> x = packet.x_grid();
  const double dx = packet.box_length / static_cast<double>(packet.size());
  PositionMoments m;
  for (std::size_t j = 0; j < psi.size(); ++j) {
    const double rho = std::norm(psi[j]) * dx;
    m.norm += rho;
    m.mean += x[j] * rho;
    m.second += (x[j] - reference) * (x[j] - reference) * rho;
  }
  m.mean /= m.norm;
  m.second /= m.norm;
  return m;
}

double mean_position(const WavePacket& packet) { return position_moments(packet, 0.0).mean; }

}  // namespace

Expectations expectations(const WavePacket& packet) {
  packet.validate();
  Expectations e;
  double norm = 0.0;
  const double mc2 = packet.m * packet.m * packet.c * packet.c;
  for (std::size_t n = 0; n < packet.size(); ++n) {
    const double w = std::norm(packet.amplitudes[n]);
    const double kn = packet.k(n);
    norm += w;
    e.pi += kn * w;
    e.velocity += kn / std::sqrt(mc2 + kn * kn) * w;
  }
  e.pi /= norm;
  e.velocity /= norm;
  e.sigma = mean_position(packet);
  return e;
}

Multipoles multipoles_about(const WavePacket& packet, double sigma0) {
  const PositionMoments m = position_moments(packet, sigma0);
  return {m.norm, m.mean - sigma0, m.second, sigma0};
}

EmergentTrajectory emergent_trajectory(const WavePacket& p0, std::span<const double> tau_grid, double fd_step) {
  p0.validate();
  if (tau_grid.size() < 3) throw ValidationError("emergent_trajectory needs at least 3 tau points");
  for (std::size_t i = 1; i < tau_grid.size(); ++i) {
    if (!(tau_grid[i] > tau_grid[i - 1])) throw ValidationError("emergent_trajectory: tau grid must increase");
  }
  if (!(fd_step > 0.0)) throw ValidationError("emergent_trajectory: fd_step must be positive");

  const std::size_t n = tau_grid.size();
  EmergentTrajectory out;
  out.rows.resize(n);
  const double norm0 = p0.norm2();
  const double pi0 = expectations(p0).pi;
  auto sigma_at = [&p0](double tau) { return mean_position(propagate_free(p0, tau)); };

  for (std::size_t i = 0; i < n; ++i) {
    const double tau = tau_grid[i];
    const WavePacket pk = propagate_free(p0, tau);
    const Expectations e = expectations(pk);
    const double d1 = (sigma_at(tau + fd_step) - sigma_at(tau - fd_step)) / (2.0 * fd_step);
    const double d2 = (sigma_at(tau + 0.5 * fd_step) - sigma_at(tau - 0.5 * fd_step)) / fd_step;
    const double deriv = (4.0 * d2 - d1) / 3.0;

    EhrenfestRow& row = out.rows[i];
    row.tau = tau;
    row.sigma_mean = e.sigma;
    row.pi_mean = e.pi;
    row.velocity_mean = e.velocity;
    row.ehrenfest_residual = std::abs(deriv - e.velocity);
    out.max_ehrenfest_residual = std::max(out.max_ehrenfest_residual, row.ehrenfest_residual);
    out.max_norm_drift = std::max(out.max_norm_drift, std::abs(pk.norm2() - norm0));
    out.max_momentum_drift = std::max(out.max_momentum_drift, std::abs(e.pi - pi0));
  }

  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double h1 = tau_grid[i] - tau_grid[i - 1];
    const double h2 = tau_grid[i + 1] - tau_grid[i];
    const double s0 = out.rows[i - 1].sigma_mean;
    const double s1 = out.rows[i].sigma_mean;
    const double s2 = out.rows[i + 1].sigma_mean;
    // Second divided difference scaled by h1·h2, which reduces to s2 - 2 s1 + s0 on uniform grids.
    const double second = 2.0 * ((s2 - s1) / h2 - (s1 - s0) / h1) / (h1 + h2) * h1 * h2;
    out.max_second_difference = std::max(out.max_second_difference, std::abs(second));
  }

  // Least-squares straight line through σ_cl(τ).
  double mt = 0.0;
  double ms = 0.0;
  for (const auto& r : out.rows) {
    mt += r.tau;
    ms += r.sigma_mean;
  }
  mt /= static_cast<double>(n);
  ms /= static_cast<double>(n);
  double sts = 0.0;
  double stt = 0.0;
  for (const auto& r : out.rows) {
    sts += (r.tau - mt) * (r.sigma_mean - ms);
    stt += (r.tau - mt) * (r.tau - mt);
  }
  out.line_slope = sts / stt;
  out.line_intercept = ms - out.line_slope * mt;

  for (std::size_t i = 0; i < n; ++i) {
    EhrenfestRow& row = out.rows[i];
    const Multipoles mp = multipoles_about(propagate_free(p0, row.tau), out.line_intercept + out.line_slope * row.tau);
    row.dipole = mp.dipole;
    row.quadrupole = mp.quadrupole;
    out.max_line_dipole = std::max(out.max_line_dipole, std::abs(mp.dipole));
  }
  return out;
}

void write_ehrenfest_csv(std::ostream& os, const EmergentTrajectory& traj) {
  os << "tau,sigma_mean,pi_mean,velocity_mean,dipole,quadrupole,ehrenfest_residual\n";
  for (const auto& r : traj.rows) {
    csv::row(os, {r.tau, r.sigma_mean, r.pi_mean, r.velocity_mean, r.dipole, r.quadrupole, r.ehrenfest_residual});
  }
}

}  // namespace restframe
