#pragma once

/**
 * @file dynamics.hpp
 * @brief Relative motion generated by the invariant mass, world-line
 *        reconstruction and the non-relativistic limit.
 *
 * The Hamiltonian is Mc(ρ, π) = √(m₁²c² + H) + √(m₂²c² + H) with
 * H = π² + V(ρ²). It is not separable, so the flow is integrated with the
 * implicit midpoint rule (symplectic, symmetric, conserves the quadratic
 * invariant S = ρ×π exactly).
 */

#include <iosfwd>
#include <span>
#include <vector>

#include "restframe/kinematics.hpp"
#include "restframe/potential.hpp"
#include "restframe/vec.hpp"

namespace restframe {

struct RelativeState {
  Vec3 rho{};
  Vec3 pi{};
  double tau{0.0};
};

/// H = π² + V(ρ²).
double reduced_hamiltonian(const RelativeState& s, const Potential& V);

/// Throws DomainError when a radicand m_i²c² + H is negative.
double invariant_mass(const RelativeState& s, const Potential& V, double m1, double m2, double c);

/// c·(Mc - (m₁+m₂)c), evaluated without cancellation.
double rest_energy_excess(double H, double m1, double m2, double c);

struct EvolveConfig {
  double step{1e-3};
  std::size_t steps{1000};
  std::size_t record_every{1};  // keep every n-th state (the last one is always kept)
  double newton_tolerance{1e-12};
  int max_newton_iterations{50};
};

struct Trajectory {
  std::vector<RelativeState> samples;
  double step{0.0};
  double c{1.0};
  std::vector<double> Mc;  // per sample
  std::vector<Vec3> S;     // per sample

  /// max |Mc(τ) - Mc(0)| / Mc(0).
  double max_mass_drift() const;
  /// max over samples and components of |S_i(τ) - S_i(0)| / max(|S(0)|, 1e-300).
  double max_spin_drift() const;
};

/// Implicit-midpoint trajectory. Throws NumericalError (with the step index)
/// when Newton fails to converge and DomainError when the radicand guard
/// H < -0.99·min(m_i²c²) trips.
Trajectory evolve(const RelativeState& s0, const Potential& V, double m1, double m2, double c,
                  const EvolveConfig& cfg);

/// dρ/dτ = ∂Mc/∂π, dπ/dτ = -∂Mc/∂ρ, stacked as (ρ, π).
std::array<double, 6> relative_vector_field(const std::array<double, 6>& y, const Potential& V, double m1, double m2,
                                            double c);

struct WorldLinePair {
  std::vector<double> tau;
  std::vector<FourVector> x1, x2;
  std::vector<FourVector> p1, p2;
};

/// Rebuilds x_i^μ(τ) and p_i^μ(τ) from the relative trajectory with κ₁ = -κ₂ = π.
/// The external data z, h come from `cs`; its Mc and S are replaced by the
/// trajectory's own invariant mass and spin. cs.c must match the trajectory.
WorldLinePair worldlines(const Trajectory& traj, const CollectiveState& cs, const Potential& V, double m1, double m2);

/// max over samples of |p_i·p_i - (m_i²c² + V(ρ²))| for both particles.
double mass_shell_residual(const WorldLinePair& wl, const Trajectory& traj, const Potential& V, double m1, double m2);

struct EqualTimeReport {
  Vec3 h{};
  double max_time_gap{0.0};  // max |x₁⁰ - x₂⁰|
};

EqualTimeReport equal_time_check(const WorldLinePair& wl, const Vec3& h);

struct NonrelRow {
  double c{0.0};
  double excess{0.0};     // c·(Mc - (m₁+m₂)c)
  double newton{0.0};     // H/(2μ)
  double deviation{0.0};  // |excess - newton|
};

struct NonrelTable {
  std::vector<NonrelRow> rows;
  /// p in deviation ∝ c^(-p) from a log-log least-squares fit; NaN when every deviation is zero.
  double decay_exponent{0.0};
};

NonrelTable nonrel_limit_check(const Potential& V, const RelativeState& s0, double m1, double m2,
                               std::span<const double> c_list);

/// Columns tau,rho_x,rho_y,rho_z,pi_x,pi_y,pi_z,Mc,Sx,Sy,Sz.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj);
/// Columns tau, x1_0..x1_3, x2_0..x2_3, p1_0..p1_3, p2_0..p2_3.
void write_worldlines_csv(std::ostream& os, const WorldLinePair& wl);

}  // namespace restframe
