#pragma once

/**
 * @file kinematics.hpp
 * @brief Wigner tetrad, rest-frame embedding and the three collective variables.
 *
 * The external center of mass is described by frozen Jacobi data (z, h) and
 * the Casimirs Mc, S. From these we rebuild the Fokker-Pryce center of inertia
 * Y(τ), the canonical center of mass x̃(τ) and the Møller center of energy
 * R(τ). Scanning h sweeps x̃ and R over a world-tube of radius |S|/Mc around Y.
 */

#include <array>
#include <iosfwd>
#include <span>
#include <vector>

#include "restframe/vec.hpp"

namespace restframe {

struct CollectiveState {
  Vec3 z{};         // Jacobi position datum, z = Mc·x_NW(0)
  Vec3 h{};         // P/Mc
  double Mc{1.0};   // invariant mass times c
  Vec3 S{};         // rest spin
  double c{1.0};

  /// Throws ValidationError unless Mc > 0, c > 0 and all entries are finite.
  void validate() const;
};

struct Tetrad {
  FourVector h_mu{};                // (√(1+h²); h)
  std::array<FourVector, 3> eps{};  // ε^μ_r, r = 1..3

  /// max over the orthonormality relations h·h=1, h·ε_r=0, ε_r·ε_s=-δ_rs.
  double orthonormality_residual() const;
};

/// ε^0_r = h_r, ε^i_r = δ^i_r + h^i h_r / (1 + √(1+h²)).
Tetrad wigner_tetrad(const Vec3& h);

inline double gamma_of(const Vec3& h) { return std::sqrt(1.0 + dot(h, h)); }

/// Y^μ(τ), the covariant non-canonical center of inertia.
FourVector fokker_pryce(const CollectiveState& cs, double tau);

/// x̃^μ(τ) = Y^μ + (0; -S×h / (Mc(1+γ))).
FourVector canonical_cm(const CollectiveState& cs, double tau);

/// R^μ(τ) = Y^μ + (0; -S×h / (Mc γ)).
FourVector moller_center(const CollectiveState& cs, double tau);

/// z_W^μ(τ, σ) = Y^μ(τ) + ε^μ_r(h) σ^r.
FourVector embed(const CollectiveState& cs, double tau, const Vec3& sigma);

/// ρ = |S|/Mc. Throws ValidationError for Mc ≤ 0.
double moller_radius(double Mc, const Vec3& S);

struct TubeRow {
  Vec3 h{};
  double offset_xtilde{0.0};
  double offset_R{0.0};
};

struct TubeReport {
  double rho{0.0};
  std::vector<TubeRow> rows;
  double sup_xtilde{0.0};
  double sup_R{0.0};
  /// Largest |x̃-Y - λ(R-Y)| over rows with λ = γ/(1+γ); zero when x̃ sits on the Y-R segment.
  double betweenness_residual{0.0};
  /// Smallest λ(1-λ) over rows with R ≠ Y; positive iff x̃ is strictly between.
  double min_strictness{0.0};

  double sup() const { return sup_xtilde > sup_R ? sup_xtilde : sup_R; }
};

/// Offsets |x̃-Y| and |R-Y| for every boost sample. Rows keep input order.
/// Throws ValidationError on an empty sample list.
TubeReport tube_scan(const CollectiveState& cs, std::span<const Vec3> h_samples);

/// Columns hx,hy,hz,offset_xtilde,offset_R,rho.
void write_tube_csv(std::ostream& os, const TubeReport& report);

}  // namespace restframe
