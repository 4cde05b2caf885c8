#pragma once

/**
 * @file potential.hpp
 * @brief Central potentials V(ρ²) of the relative distance squared.
 *
 * A Potential carries V and its derivative dV/d(ρ²). The derivative is what
 * lifts V to dual numbers, so both must agree; check_consistency() compares
 * them against central differences.
 */

#include <functional>
#include <string>
#include <vector>

#include "restframe/dual.hpp"

namespace restframe {

class Potential {
 public:
  using Fn = std::function<double(double)>;

  /// V ≡ 0.
  Potential();
  Potential(std::string name, Fn value, Fn derivative);

  static Potential free();
  /// V(ρ²) = -K/ρ.
  static Potential coulomb(double strength);
  /// V(ρ²) = ω²ρ².
  static Potential oscillator(double omega);
  /// V(s) = Σ_k c_k s^k with s = ρ².
  static Potential polynomial(std::vector<double> coefficients);

  const std::string& name() const noexcept { return name_; }

  double operator()(double rho2) const { return value_(rho2); }
  double derivative(double rho2) const { return derivative_(rho2); }

  Dual operator()(const Dual& rho2) const {
    return {value_(rho2.v), derivative_(rho2.v) * rho2.d};
  }

  /// Max |V' - central difference of V| over the samples, relative to max(1, |V'|).
  double consistency_residual(const std::vector<double>& rho2_samples) const;

 private:
  std::string name_;
  Fn value_;
  Fn derivative_;
};

}  // namespace restframe
