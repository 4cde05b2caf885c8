#include "restframe/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "restframe/csv.hpp"
#include "restframe/errors.hpp"
#include "restframe/kernels.hpp"

namespace restframe {

void CollectiveState::validate() const {
  if (!is_finite(z) || !is_finite(h) || !is_finite(S) || !std::isfinite(Mc) || !std::isfinite(c)) {
    throw ValidationError("collective state has non-finite entries");
  }
  if (Mc <= 0.0) throw ValidationError("collective state needs Mc > 0");
  if (c <= 0.0) throw ValidationError("collective state needs c > 0");
}

Tetrad wigner_tetrad(const Vec3& h) {
  if (!is_finite(h)) throw ValidationError("wigner_tetrad: h must be finite");
  const double gamma = gamma_of(h);
  Tetrad t;
  t.h_mu = {gamma, h};
  for (std::size_t r = 0; r < 3; ++r) {
    Vec3 col = h * (h[r] / (1.0 + gamma));
    col[r] += 1.0;
    t.eps[r] = {h[r], col};
  }
  return t;
}

double Tetrad::orthonormality_residual() const {
  double worst = std::abs(minkowski_dot(h_mu, h_mu) - 1.0);
  for (std::size_t r = 0; r < 3; ++r) {
    worst = std::max(worst, std::abs(minkowski_dot(h_mu, eps[r])));
    for (std::size_t s = 0; s < 3; ++s) {
      const double target = r == s ? -1.0 : 0.0;
      worst = std::max(worst, std::abs(minkowski_dot(eps[r], eps[s]) - target));
    }
  }
  return worst;
}

namespace {

// Common time parameter τ + h·z/Mc of the Fokker-Pryce world-line.
double shifted_time(const CollectiveState& cs, double tau) { return tau + dot(cs.h, cs.z) / cs.Mc; }

}  // namespace

FourVector fokker_pryce(const CollectiveState& cs, double tau) {
  cs.validate();
  const double gamma = gamma_of(cs.h);
  const double ts = shifted_time(cs, tau);
  return {gamma * ts, cs.z / cs.Mc + cs.h * ts + cross(cs.S, cs.h) / (cs.Mc * (1.0 + gamma))};
}

FourVector canonical_cm(const CollectiveState& cs, double tau) {
  const FourVector y = fokker_pryce(cs, tau);
  const double gamma = gamma_of(cs.h);
  return {y.t, y.s - cross(cs.S, cs.h) / (cs.Mc * (1.0 + gamma))};
}

FourVector moller_center(const CollectiveState& cs, double tau) {
  const FourVector y = fokker_pryce(cs, tau);
  const double gamma = gamma_of(cs.h);
  return {y.t, y.s - cross(cs.S, cs.h) / (cs.Mc * gamma)};
}

FourVector embed(const CollectiveState& cs, double tau, const Vec3& sigma) {
  if (!is_finite(sigma)) throw ValidationError("embed: sigma must be finite");
  const Tetrad t = wigner_tetrad(cs.h);
  FourVector x = fokker_pryce(cs, tau);
  for (std::size_t r = 0; r < 3; ++r) x = x + sigma[r] * t.eps[r];
  return x;
}

double moller_radius(double Mc, const Vec3& S) {
  if (!(Mc > 0.0)) throw ValidationError("moller_radius: Mc must be positive");
  if (!is_finite(S)) throw ValidationError("moller_radius: S must be finite");
  return norm(S) / Mc;
}

TubeReport tube_scan(const CollectiveState& cs, std::span<const Vec3> h_samples) {
  cs.validate();
  if (h_samples.empty()) throw ValidationError("tube_scan: empty boost sample list");
  for (const Vec3& h : h_samples) {
    if (!is_finite(h)) throw ValidationError("tube_scan: non-finite boost sample");
  }

  TubeReport rep;
  rep.rho = moller_radius(cs.Mc, cs.S);
  const std::vector<double> off = kernels::omp::tube_offsets(cs.S, cs.Mc, h_samples);
  rep.rows.reserve(h_samples.size());
  rep.min_strictness = 0.25;
  for (std::size_t i = 0; i < h_samples.size(); ++i) {
    const Vec3& h = h_samples[i];
    rep.rows.push_back({h, off[2 * i], off[2 * i + 1]});
    rep.sup_xtilde = std::max(rep.sup_xtilde, off[2 * i]);
    rep.sup_R = std::max(rep.sup_R, off[2 * i + 1]);

    // Vector check of betweenness: x̃ - Y = λ (R - Y) with λ = γ/(1+γ).
    const double gamma = gamma_of(h);
    const Vec3 sxh = cross(cs.S, h);
    const Vec3 dx = -sxh / (cs.Mc * (1.0 + gamma));
    const Vec3 dr = -sxh / (cs.Mc * gamma);
    const double lambda = gamma / (1.0 + gamma);
    rep.betweenness_residual = std::max(rep.betweenness_residual, norm(dx - dr * lambda));
    if (norm(dr) > 0.0) rep.min_strictness = std::min(rep.min_strictness, lambda * (1.0 - lambda));
  }
  return rep;
}

void write_tube_csv(std::ostream& os, const TubeReport& report) {
  os << "hx,hy,hz,offset_xtilde,offset_R,rho\n";
  for (const TubeRow& r : report.rows) {
    csv::row(os, {r.h.x, r.h.y, r.h.z, r.offset_xtilde, r.offset_R, report.rho});
  }
}

}  // namespace restframe
