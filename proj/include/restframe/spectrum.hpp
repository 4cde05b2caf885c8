#pragma once

/**
 * @file spectrum.hpp
 * @brief Bound-state spectrum of the invariant-mass operator.
 *
 * The reduced Hamiltonian H = π² + V is quantized as -∇² + V (ħ = 1, no 1/2μ)
 * and solved in the reduced radial form -u'' + [l(l+1)/r² + V(r²)] u = h u
 * with u(0) = u(r_max) = 0 on a uniform grid of interior nodes. The
 * invariant mass acts by functional calculus on H, so each level h_n maps to
 * ε_n = √(m₁²c² + h_n) + √(m₂²c² + h_n).
 */

#include <span>
#include <string>
#include <vector>

#include "restframe/potential.hpp"
#include "restframe/vec.hpp"

namespace restframe {

struct RadialGrid {
  double r_max{0.0};
  int n_points{0};

  /// Throws ValidationError unless n_points ≥ 16 and r_max > 0.
  static RadialGrid make(double r_max, int n_points);

  double spacing() const { return r_max / (n_points + 1); }
  /// r_i = (i+1)·spacing, i = 0..n_points-1.
  double node(int i) const { return (i + 1) * spacing(); }
};

/// Eigenvalues of a symmetric tridiagonal matrix by implicit QL with Wilkinson
/// shifts, sorted ascending. `off` holds the n-1 sub-diagonal entries.
/// Throws NumericalError after 60 iterations without deflation.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> diag, std::vector<double> off);

/// Lowest `count` eigenvalues of the discretized reduced radial operator.
/// Throws ValidationError for l < 0, non-finite V on the grid, or V more singular than 1/r.
std::vector<double> solve_reduced_hamiltonian(const Potential& V, int l, const RadialGrid& grid, int count);

struct MassLevel {
  int n{0};  // principal index n = n_r + l + 1
  int l{0};
  int multiplicity{1};  // 2l+1 values of m share the level
  double h{0.0};
  double epsilon{0.0};
};

struct MassSpectrum {
  std::vector<MassLevel> levels;
};

/// Throws DomainError when m_i²c² + h_n < 0.
MassSpectrum mass_spectrum(std::span<const double> h_levels, int l, double m1, double m2, double c);

/// P^μ_n = (ε_n √(1+k²); ε_n k) / c.
FourVector external_momentum(double epsilon, const Vec3& k, double c);

/// Observed convergence order log2((e1-e2)/(e2-e3)) of the lowest level on grids
/// with spacing Δ, Δ/2, Δ/4 (n, 2n+1, 4n+3 nodes).
double richardson_order(const Potential& V, int l, const RadialGrid& coarse);

/// {l, levels:[{n, h, epsilon, multiplicity}], grid:{r_max, n_points}}.
std::string spectrum_json(const MassSpectrum& spectrum, int l, const RadialGrid& grid);

}  // namespace restframe
