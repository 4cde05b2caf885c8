#include "restframe/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "json.hpp"
#include "restframe/errors.hpp"

namespace restframe {

RadialGrid RadialGrid::make(double r_max, int n_points) {
  if (!(r_max > 0.0) || !std::isfinite(r_max)) throw ValidationError("radial grid: r_max must be positive");
  if (n_points < 16) throw ValidationError("radial grid: need at least 16 points");
  return {r_max, n_points};
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> off) {
  const std::size_t n = d.size();
  if (n == 0) return d;
  if (off.size() + 1 != n) throw ValidationError("tridiagonal_eigenvalues: need n-1 off-diagonal entries");
  // e[i] couples rows i and i+1; e[n-1] is a zero sentinel.
  std::vector<double> e(std::move(off));
  e.push_back(0.0);
  constexpr double eps = std::numeric_limits<double>::epsilon();

  for (std::size_t l = 0; l < n; ++l) {
    int iter = 0;
    std::size_t m = l;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= eps * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw NumericalError("tridiagonal_eigenvalues: QL iteration did not converge");

      // Wilkinson shift from the leading 2x2 block.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      bool underflow = false;
      for (std::size_t i = m; i-- > l;) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

namespace {

void check_singularity(const Potential& V, double r0) {
  auto weighted = [&V](double r) { return r * std::abs(V(r * r)); };
  const double near = weighted(0.25 * r0);
  const double far = weighted(r0);
  if (!std::isfinite(near) || !std::isfinite(far)) throw ValidationError("potential is not finite near the origin");
  if (near > 2.0 * far + 1e-12) {
    throw ValidationError("potential is more singular than 1/r at the origin");
  }
}

}  // namespace

std::vector<double> solve_reduced_hamiltonian(const Potential& V, int l, const RadialGrid& grid, int count) {
  if (l < 0) throw ValidationError("angular momentum l must be non-negative");
  if (count < 1) throw ValidationError("need at least one level");
  const RadialGrid g = RadialGrid::make(grid.r_max, grid.n_points);
  check_singularity(V, g.node(0));

  const double dr = g.spacing();
  const double kin = 1.0 / (dr * dr);
  const double ll = static_cast<double>(l) * (l + 1);
  std::vector<double> diag(static_cast<std::size_t>(g.n_points));
  for (int i = 0; i < g.n_points; ++i) {
    const double r = g.node(i);
    const double v = V(r * r);
    if (!std::isfinite(v)) throw ValidationError("potential is not finite at r = " + std::to_string(r));
    diag[static_cast<std::size_t>(i)] = 2.0 * kin + ll / (r * r) + v;
  }
  std::vector<double> off(diag.size() - 1, -kin);
  std::vector<double> ev = tridiagonal_eigenvalues(std::move(diag), std::move(off));
  ev.resize(std::min<std::size_t>(ev.size(), static_cast<std::size_t>(count)));
  return ev;
}

MassSpectrum mass_spectrum(std::span<const double> h_levels, int l, double m1, double m2, double c) {
  if (!(m1 > 0.0) || !(m2 > 0.0) || !(c > 0.0)) throw ValidationError("mass_spectrum: masses and c must be positive");
  MassSpectrum out;
  int n = l + 1;
  for (double h : h_levels) {
    const double r1 = m1 * m1 * c * c + h;
    const double r2 = m2 * m2 * c * c + h;
    if (r1 < 0.0 || r2 < 0.0) {
      throw DomainError("level h = " + std::to_string(h) + " lies below the mass gap -min(m_i^2 c^2)");
    }
    out.levels.push_back({n, l, 2 * l + 1, h, std::sqrt(r1) + std::sqrt(r2)});
    ++n;
  }
  return out;
}

FourVector external_momentum(double epsilon, const Vec3& k, double c) {
  if (!(c > 0.0)) throw ValidationError("external_momentum: c must be positive");
  return {epsilon * std::sqrt(1.0 + dot(k, k)) / c, k * (epsilon / c)};
}

double richardson_order(const Potential& V, int l, const RadialGrid& coarse) {
  const double e1 = solve_reduced_hamiltonian(V, l, coarse, 1).front();
  const double e2 = solve_reduced_hamiltonian(V, l, {coarse.r_max, 2 * coarse.n_points + 1}, 1).front();
  const double e3 = solve_reduced_hamiltonian(V, l, {coarse.r_max, 4 * coarse.n_points + 3}, 1).front();
  return std::log2((e1 - e2) / (e2 - e3));
}

std::string spectrum_json(const MassSpectrum& spectrum, int l, const RadialGrid& grid) {
  nlohmann::ordered_json j;
  j["l"] = l;
  j["levels"] = nlohmann::ordered_json::array();
  for (const MassLevel& lv : spectrum.levels) {
    j["levels"].push_back({{"n", lv.n}, {"h", lv.h}, {"epsilon", lv.epsilon}, {"multiplicity", lv.multiplicity}});
  }
  j["grid"] = {{"r_max", grid.r_max}, {"n_points", grid.n_points}};
  return j.dump(2);
}

}  // namespace restframe
