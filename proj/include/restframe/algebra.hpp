#pragma once

/**
 * @file algebra.hpp
 * @brief Poisson brackets over canonical pairs and the two realizations of
 *        the Poincaré algebra (external center of mass, internal rest-frame).
 *
 * Bracket convention: {f, g} = Σ (∂f/∂q ∂g/∂p - ∂f/∂p ∂g/∂q), so {q_i, p_j} = δ_ij.
 * With it the generators close as
 *
 *   {J^i,J^j} =  ε^ijk J^k     {J^i,K^j} = ε^ijk K^k     {J^i,P^j} = ε^ijk P^k
 *   {K^i,K^j} = -ε^ijk J^k     {K^i,P^j} = -δ^ij P^0     {K^i,P^0} = -P^i
 *   {P^μ,P^ν} = 0              {J^i,P^0} = 0
 *
 * For the internal realization P^0 → Mc, P → 𝒫, J → S, K → 𝒦.
 */

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "restframe/dual.hpp"
#include "restframe/errors.hpp"
#include "restframe/kinematics.hpp"
#include "restframe/potential.hpp"
#include "restframe/vec.hpp"

namespace restframe {

/// external: (z, h) followed by a spin carrier (s_q, s_p) with S = s_q × s_p.
/// internal: (η₁, κ₁), (η₂, κ₂).   relative: (ρ, π).
enum class Layout { external, internal, relative };

const char* to_string(Layout layout);
/// Throws ValidationError on an unknown name.
Layout layout_from_string(const std::string& name);

struct PhaseSpacePoint {
  Layout layout{Layout::relative};
  std::vector<double> q;  // 3 per pair, pair-major
  std::vector<double> p;

  std::size_t pairs() const { return q.size() / 3; }
  Vec3 coord(std::size_t pair) const { return {q[3 * pair], q[3 * pair + 1], q[3 * pair + 2]}; }
  Vec3 momentum(std::size_t pair) const { return {p[3 * pair], p[3 * pair + 1], p[3 * pair + 2]}; }

  static PhaseSpacePoint make(Layout layout, std::span<const Vec3> coords, std::span<const Vec3> momenta);
  static PhaseSpacePoint internal(const Vec3& eta1, const Vec3& kappa1, const Vec3& eta2, const Vec3& kappa2);
  static PhaseSpacePoint relative(const Vec3& rho, const Vec3& pi);
  /// Picks a spin carrier with s_q ⊥ S, |s_q| = 1, rotated in the plane ⊥ S by `angle`.
  static PhaseSpacePoint external(const CollectiveState& cs, double angle = 0.0);

  /// Throws ValidationError on non-finite entries or a pair count that does not match the layout.
  void validate() const;
};

// ---------------------------------------------------------------------------
// Bracket engine

enum class DiffMode {
  automatic,  ///< dual numbers; central differences when a derivative comes out non-finite
  dual,       ///< dual numbers only; non-finite derivatives raise NumericalError
  central,    ///< central differences, step 1e-6·max(1,|x|)
};

/// Phase-space scalar (or vector) function evaluated on dual numbers.
using PhaseFunction = std::function<Dual(std::span<const Dual> q, std::span<const Dual> p)>;
using PhaseVectorFunction = std::function<std::vector<Dual>(std::span<const Dual> q, std::span<const Dual> p)>;

/// ∂f/∂q and ∂f/∂p for each output component of a vector function.
struct Gradients {
  std::vector<double> values;
  std::vector<std::vector<double>> dq;  // [component][dof]
  std::vector<std::vector<double>> dp;
  bool used_fallback{false};

  double bracket(std::size_t f, std::size_t g) const;
};

Gradients gradients(const PhaseVectorFunction& f, const PhaseSpacePoint& pt, DiffMode mode = DiffMode::automatic);

double poisson_bracket(const PhaseFunction& f, const PhaseFunction& g, const PhaseSpacePoint& pt,
                       DiffMode mode = DiffMode::automatic);

// ---------------------------------------------------------------------------
// Generators

struct GeneratorSet {
  FourVector P{};
  Vec3 J{};  // J^ij packed as the axial vector J^k = ½ ε^kij J^ij
  Vec3 K{};
};

struct InternalGeneratorSet {
  double Mc{0.0};
  Vec3 P_int{};
  Vec3 S{};
  Vec3 K_int{};
};

GeneratorSet external_generators(const CollectiveState& cs);

InternalGeneratorSet internal_generators(const PhaseSpacePoint& pt, const Potential& V, double m1, double m2,
                                         double c);

/// W^0 = J·P, W = P^0 J - P×K. For the external realization W·W = -(Mc)²|S|².
FourVector pauli_lubanski(const GeneratorSet& g);

/// The ten generators as dual-number functions, ordered P^0, P^1..3, J^1..3, K^1..3.
/// External: Mc is a Casimir constant; S comes from the spin carrier pair.
PhaseVectorFunction external_generator_function(double Mc);
/// Internal: P^0 → Mc, P → 𝒫, J → S, K → 𝒦.
PhaseVectorFunction internal_generator_function(const Potential& V, double m1, double m2, double c);

// ---------------------------------------------------------------------------
// Closure

struct ClosureEntry {
  std::string relation;
  double max_residual{0.0};
  std::size_t worst_sample{0};
  std::vector<double> worst_point;  // q then p of the worst sample
};

struct ClosureReport {
  Layout layout{Layout::external};
  std::vector<ClosureEntry> entries;
  std::size_t samples{0};
  std::size_t fallback_samples{0};

  double max_residual() const;
};

/// JSON array of {relation, max_residual, worst_point} objects.
std::string closure_report_json(const ClosureReport& report);

/// Evaluates every structure relation at every point. Sample points are
/// processed in parallel; per-sample results are merged in index order.
ClosureReport verify_closure(const PhaseVectorFunction& generators, std::span<const PhaseSpacePoint> points,
                             DiffMode mode = DiffMode::automatic);

ClosureReport verify_external_closure(std::span<const CollectiveState> states, DiffMode mode = DiffMode::automatic);

/// The internal realization closes only weakly (on 𝒫 ≈ 0); callers sample points there.
ClosureReport verify_internal_closure(std::span<const PhaseSpacePoint> points, const Potential& V, double m1,
                                      double m2, double c, DiffMode mode = DiffMode::automatic);

/// Random external state: |z| ≤ 2, |h| ≤ 2, Mc ∈ [0.5, 3], |S| ≤ 2.
CollectiveState random_collective_state(std::mt19937_64& rng);
/// Random internal point with κ₂ = -κ₁ (𝒫 = 0); coordinates and momenta in [-1, 1].
PhaseSpacePoint random_internal_point_on_surface(std::mt19937_64& rng);

// ---------------------------------------------------------------------------
// Rest-frame reduction

struct ConstraintResiduals {
  double momentum{0.0};  // |𝒫|
  double boost{0.0};     // |𝒦|
};

ConstraintResiduals restframe_residuals(const PhaseSpacePoint& pt, const Potential& V, double m1, double m2, double c);

struct RelativeVariables {
  Vec3 rho{};
  Vec3 pi{};
};

/// ρ = η₁ - η₂, π = (m₂/M) κ₁ - (m₁/M) κ₂.
RelativeVariables to_relative(const Vec3& eta1, const Vec3& eta2, const Vec3& kappa1, const Vec3& kappa2, double m1,
                              double m2);

/// Internal center of mass η fixed by 𝒦 ≈ 0 with κ₁ = -κ₂ = π.
Vec3 internal_cm(const Vec3& rho, const Vec3& pi, double m1, double m2, const Potential& V, double c);

/// Inverse reduction: κ₁ = -κ₂ = π, η₁ = η + (m₂/M) ρ, η₂ = η - (m₁/M) ρ with η from internal_cm().
PhaseSpacePoint from_relative(const Vec3& rho, const Vec3& pi, double m1, double m2, const Potential& V, double c);

}  // namespace restframe
