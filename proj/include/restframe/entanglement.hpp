#pragma once

/**
 * @file entanglement.hpp
 * @brief Two-particle states on 1-D grids and their reduced density matrices.
 *
 * Non-relativistically the two-body Hilbert space factorizes three ways:
 *   A  particle ⊗ particle          (x_e, x_p)
 *   B  center of mass ⊗ relative     (x, r), x = (m_e x_e + m_p x_p)/M, r = x_e - x_p
 *   C  frozen Jacobi datum ⊗ relative (x₀, r), x₀ = x - p t/M
 * After the rest-frame conditions only C survives, and asking for a single
 * particle subsystem raises RelativisticNonSeparability.
 *
 * Kernels are stored on the grid square together with quadrature weights;
 * all spectral quantities use the weighted kernel W^½ ρ W^½.
 */

#include <array>
#include <complex>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "restframe/vec.hpp"

namespace restframe {

using cplx = std::complex<double>;

/// Uniform grid x_i = x0 + i·spacing. Periodic grids use equal weights and
/// length n·spacing; open grids use trapezoid weights.
struct Grid1D {
  double x0{0.0};
  double spacing{1.0};
  std::size_t n{0};
  bool periodic{false};

  /// Periodic grid on [-L/2, L/2).
  static Grid1D periodic_box(double length, std::size_t n);
  /// Open grid with both endpoints included.
  static Grid1D open(double a, double b, std::size_t n);

  double x(std::size_t i) const { return x0 + static_cast<double>(i) * spacing; }
  double length() const { return periodic ? static_cast<double>(n) * spacing : static_cast<double>(n - 1) * spacing; }
  std::vector<double> weights() const;
  std::vector<double> points() const;
  /// Maps a separation into [-L/2, L/2) on periodic grids; identity otherwise.
  double wrap(double dx) const;
  void validate() const;
};

struct TwoParticleWavefunction {
  Grid1D grid;
  std::vector<cplx> amp;  // ψ(x_e = x_a, x_p = x_b) at a·n + b
  double m_e{1.0};
  double m_p{1.0};
  double p{0.0};
  /// φ_int on the relative grid r_j = (j - n/2)·spacing, present when the state
  /// factors as φ_int(r)·exp(i p x).
  std::optional<std::vector<cplx>> relative;

  cplx operator()(std::size_t a, std::size_t b) const { return amp[a * grid.n + b]; }
  double total_mass() const { return m_e + m_p; }
  /// ∫∫ |ψ|² by quadrature.
  double norm2() const;

  /// Samples an arbitrary amplitude ψ(x_e, x_p) on the grid square.
  static TwoParticleWavefunction sample(const Grid1D& grid, const std::function<cplx(double, double)>& psi,
                                        double m_e, double m_p);
};

/// ψ(x_e, x_p) = φ_int(x_e - x_p)·exp(i p (m_e x_e + m_p x_p)/M) on a periodic
/// box, with separations wrapped into the box. p must be a multiple of 2π/L.
/// Throws ValidationError for open grids, unquantized p, or φ_int that is not
/// square-integrable on the grid.
TwoParticleWavefunction hydrogen_state(const std::function<cplx(double)>& phi_int, double p, double m_e, double m_p,
                                       const Grid1D& grid);

struct ReducedDensityMatrix {
  std::vector<double> x;        // grid positions of the kept factor
  std::vector<double> weights;  // quadrature weights
  std::vector<cplx> kernel;     // ρ(x_i, x_j) at i·n + j
  bool normalized{false};

  std::size_t size() const { return x.size(); }
  cplx operator()(std::size_t i, std::size_t j) const { return kernel[i * size() + j]; }

  double trace() const;
  double purity() const;
  /// max |ρ(i,j) - ρ*(j,i)|.
  double hermiticity_residual() const;
  /// Eigenvalues of the symmetrized W^½ ρ W^½, ascending.
  std::vector<double> spectrum() const;
  /// Rescales to unit trace.
  void normalize();
};

enum class PresentationTag { A, B, C };

const char* to_string(PresentationTag tag);
/// Accepts "A", "B", "C"; throws ValidationError otherwise.
PresentationTag presentation_from_string(const std::string& tag);

/// Affine point map (x_e, x_p) -> (u, v) = J·(x_e, x_p) + offset.
struct PresentationMap {
  PresentationTag tag{PresentationTag::A};
  std::string first_factor;
  std::string second_factor;
  std::array<std::array<double, 2>, 2> jacobian{};
  std::array<double, 2> offset{};

  std::array<double, 2> forward(double x_e, double x_p) const;
  std::array<double, 2> inverse(double u, double v) const;
  double jacobian_determinant() const;
};

/// t is the time used for the frozen Jacobi datum of presentation C.
PresentationMap presentation_map(PresentationTag tag, double m_e, double m_p, double p = 0.0, double t = 0.0);
PresentationMap presentation_map(const TwoParticleWavefunction& psi, PresentationTag tag, double t = 0.0);

/// Traces out the center-of-mass factor of presentation B or C, leaving
/// ρ_rel(r, r') on the relative grid. Needs a factored state (see hydrogen_state).
ReducedDensityMatrix trace_out_com(const TwoParticleWavefunction& psi, PresentationTag tag = PresentationTag::B,
                                   double t = 0.0);

enum class Particle { electron, proton };

/// Keeps `keep` and integrates over the other particle; normalized to unit trace.
ReducedDensityMatrix trace_out_particle(const TwoParticleWavefunction& psi, Particle keep);

/// Residuals of ρ_kept(x,x') = exp(i (m_kept/M) p (x-x')) ρ_int(x-x').
struct KernelStructure {
  double structure_residual{0.0};  // dephased kernel depends only on x - x'
  double modulus_residual{0.0};    // |ρ| depends only on x - x'
  double diagonal_flatness{0.0};   // max |ρ(x,x) - mean diagonal|
};

KernelStructure kernel_structure(const ReducedDensityMatrix& rho, const TwoParticleWavefunction& psi, Particle keep);

/// Rest-frame state: external momentum fixed at h = k, relative wavefunction on a ρ-grid.
struct RelativisticState {
  Vec3 k{};
  Grid1D grid;
  std::vector<cplx> phi;
};

/// ρ_rel(ρ, ρ') = φ(ρ) φ*(ρ'), unit trace.
ReducedDensityMatrix relativistic_reduced(const RelativisticState& state);

/// Always throws RelativisticNonSeparability for which ∈ {1, 2}; ValidationError otherwise.
[[noreturn]] void trace_out_relativistic_particle(const RelativisticState& state, int which);

/// -Σ λ log λ over eigenvalues λ > 1e-12 of the weighted kernel.
/// Throws ValidationError when the kernel is not Hermitian within 1e-12 (relative to max |ρ|).
double entanglement_entropy(const ReducedDensityMatrix& rho);

/// Rows x,x_prime,re,im.
void write_kernel_csv(std::ostream& os, const ReducedDensityMatrix& rho);

}  // namespace restframe
