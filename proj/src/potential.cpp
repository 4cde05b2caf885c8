#include "restframe/potential.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "restframe/errors.hpp"

namespace restframe {

Potential::Potential() : Potential(free()) {}

Potential::Potential(std::string name, Fn value, Fn derivative)
    : name_(std::move(name)), value_(std::move(value)), derivative_(std::move(derivative)) {
  if (!value_ || !derivative_) {
    throw ValidationError("potential '" + name_ + "' needs both V and dV/d(rho^2)");
  }
}

Potential Potential::free() {
  return Potential("free", [](double) { return 0.0; }, [](double) { return 0.0; });
}

Potential Potential::coulomb(double strength) {
  if (!std::isfinite(strength)) throw ValidationError("coulomb strength must be finite");
  return Potential(
      "coulomb", [strength](double s) { return -strength / std::sqrt(s); },
      [strength](double s) { return 0.5 * strength / (s * std::sqrt(s)); });
}

Potential Potential::oscillator(double omega) {
  if (!std::isfinite(omega)) throw ValidationError("oscillator omega must be finite");
  const double w2 = omega * omega;
  return Potential(
      "oscillator", [w2](double s) { return w2 * s; }, [w2](double) { return w2; });
}

Potential Potential::polynomial(std::vector<double> coefficients) {
  for (double c : coefficients) {
    if (!std::isfinite(c)) throw ValidationError("polynomial coefficients must be finite");
  }
  auto value = [c = coefficients](double s) {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * s + *it;
    return acc;
  };
  auto deriv = [c = std::move(coefficients)](double s) {
    double acc = 0.0;
    for (std::size_t k = c.size(); k-- > 1;) acc = acc * s + static_cast<double>(k) * c[k];
    return acc;
  };
  return Potential("polynomial", std::move(value), std::move(deriv));
}

double Potential::consistency_residual(const std::vector<double>& rho2_samples) const {
  double worst = 0.0;
  for (double s : rho2_samples) {
    const double step = 1e-5 * std::max(1.0, std::abs(s));
    const double fd = (value_(s + step) - value_(s - step)) / (2.0 * step);
    const double d = derivative_(s);
    worst = std::max(worst, std::abs(fd - d) / std::max(1.0, std::abs(d)));
  }
  return worst;
}

}  // namespace restframe
