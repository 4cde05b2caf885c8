#pragma once

/**
 * @file ehrenfest.hpp
 * @brief Positive-energy wave packets, i ∂_τ g = √(m²c² - ∂²) g, in one dimension.
 *
 * The packet lives in momentum space on a k-grid symmetric about zero,
 * k_n = (n - (N-1)/2)·Δk, which is the reciprocal lattice of a periodic box of
 * length L = 2π/Δk. Free evolution is a phase exp(-i ω_k τ) per mode with
 * ω_k = √(k² + m²c²). Position-space quantities come from a discrete Fourier
 * synthesis on N points of the box.
 */

#include <complex>
#include <iosfwd>
#include <span>
#include <vector>

namespace restframe {

struct WavePacket {
  std::vector<std::complex<double>> amplitudes;  // a(k_n), Σ|a|²Δk = 1
  double m{1.0};
  double c{1.0};
  double box_length{1.0};

  std::size_t size() const { return amplitudes.size(); }
  double dk() const;
  double k(std::size_t n) const;
  double omega(std::size_t n) const;
  std::vector<double> k_grid() const;
  /// x_j = -L/2 + j L/N.
  std::vector<double> x_grid() const;
  double norm2() const;
  void validate() const;

  /// Normalized Gaussian a(k) ∝ exp(-(k-k̄)²/(4σ_k²) - i k x₀); position width 1/(2σ_k).
  static WavePacket gaussian(double k_mean, double sigma_k, double x0, double m, double c, std::size_t n_modes,
                             double box_length);
};

WavePacket propagate_free(const WavePacket& packet, double tau);

/// ψ(x_j) = (2π)^(-½) Δk Σ_n a_n exp(i k_n x_j), so that Σ|ψ_j|² Δx = Σ|a_n|² Δk.
std::vector<std::complex<double>> position_amplitudes(const WavePacket& packet);

struct Expectations {
  double sigma{0.0};     // ⟨σ⟩
  double pi{0.0};        // ⟨π⟩
  double velocity{0.0};  // ⟨π/√(m²c²+π²)⟩
};

Expectations expectations(const WavePacket& packet);

struct Multipoles {
  double monopole{0.0};    // norm
  double dipole{0.0};      // ⟨σ⟩ - σ₀
  double quadrupole{0.0};  // ⟨(σ - σ₀)²⟩
  double reference{0.0};   // σ₀
};

Multipoles multipoles_about(const WavePacket& packet, double sigma0);

struct EhrenfestRow {
  double tau{0.0};
  double sigma_mean{0.0};
  double pi_mean{0.0};
  double velocity_mean{0.0};
  double dipole{0.0};      // about the fitted straight line
  double quadrupole{0.0};  // about the fitted straight line
  double ehrenfest_residual{0.0};
};

struct EmergentTrajectory {
  std::vector<EhrenfestRow> rows;
  double line_intercept{0.0};  // σ_cl(τ) ≈ intercept + slope·τ
  double line_slope{0.0};
  /// max |Richardson d⟨σ⟩/dτ - ⟨π/√(m²c²+π²)⟩|
  double max_ehrenfest_residual{0.0};
  /// max |σ_{i+1} - 2σ_i + σ_{i-1}| (weighted for non-uniform grids)
  double max_second_difference{0.0};
  double max_line_dipole{0.0};
  double max_norm_drift{0.0};
  double max_momentum_drift{0.0};
};

/// Follows ⟨σ⟩(τ) over the grid. Derivatives use central differences with
/// steps fd_step and fd_step/2 combined by Richardson extrapolation.
/// Throws ValidationError for fewer than 3 grid points or a non-increasing grid.
EmergentTrajectory emergent_trajectory(const WavePacket& p0, std::span<const double> tau_grid, double fd_step = 1e-3);

/// Columns tau,sigma_mean,pi_mean,velocity_mean,dipole,quadrupole,ehrenfest_residual.
void write_ehrenfest_csv(std::ostream& os, const EmergentTrajectory& traj);

}  // namespace restframe
