#include "restframe/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "json.hpp"

namespace restframe {

const char* to_string(Layout layout) {
  switch (layout) {
    case Layout::external: return "external";
    case Layout::internal: return "internal";
    case Layout::relative: return "relative";
  }
  return "unknown";
}

Layout layout_from_string(const std::string& name) {
  if (name == "external") return Layout::external;
  if (name == "internal") return Layout::internal;
  if (name == "relative") return Layout::relative;
  throw ValidationError("unknown phase-space layout '" + name + "'");
}

namespace {

std::size_t expected_pairs(Layout layout) { return layout == Layout::relative ? 1 : 2; }

template <class T>
Vec3T<T> pair_vec(std::span<const T> v, std::size_t pair) {
  return {v[3 * pair], v[3 * pair + 1], v[3 * pair + 2]};
}

void put(std::vector<double>& out, const Vec3& v) {
  out.push_back(v.x);
  out.push_back(v.y);
  out.push_back(v.z);
}

}  // namespace

PhaseSpacePoint PhaseSpacePoint::make(Layout layout, std::span<const Vec3> coords, std::span<const Vec3> momenta) {
  if (coords.size() != momenta.size()) throw ValidationError("phase-space point: unpaired coordinates");
  PhaseSpacePoint pt;
  pt.layout = layout;
  for (const Vec3& c : coords) put(pt.q, c);
  for (const Vec3& m : momenta) put(pt.p, m);
  pt.validate();
  return pt;
}

PhaseSpacePoint PhaseSpacePoint::internal(const Vec3& eta1, const Vec3& kappa1, const Vec3& eta2, const Vec3& kappa2) {
  const std::array<Vec3, 2> q{eta1, eta2};
  const std::array<Vec3, 2> p{kappa1, kappa2};
  return make(Layout::internal, q, p);
}

PhaseSpacePoint PhaseSpacePoint::relative(const Vec3& rho, const Vec3& pi) {
  const std::array<Vec3, 1> q{rho};
  const std::array<Vec3, 1> p{pi};
  return make(Layout::relative, q, p);
}

PhaseSpacePoint PhaseSpacePoint::external(const CollectiveState& cs, double angle) {
  cs.validate();
  Vec3 e1{1.0, 0.0, 0.0};
  Vec3 e2{0.0, 1.0, 0.0};
  const double s = norm(cs.S);
  if (s > 0.0) {
    const Vec3 n = cs.S / s;
    // Cross with the coordinate axis least aligned with S.
    Vec3 axis{1.0, 0.0, 0.0};
    if (std::abs(n.y) < std::abs(n.x) && std::abs(n.y) <= std::abs(n.z)) {
      axis = {0.0, 1.0, 0.0};
    } else if (std::abs(n.z) < std::abs(n.x)) {
      axis = {0.0, 0.0, 1.0};
    }
    e1 = cross(n, axis);
    e1 = e1 / norm(e1);
    e2 = cross(n, e1);
  }
  const Vec3 sq = e1 * std::cos(angle) + e2 * std::sin(angle);
  const Vec3 sp = cross(cs.S, sq);  // sq × (S × sq) = S for unit sq ⊥ S
  const std::array<Vec3, 2> q{cs.z, sq};
  const std::array<Vec3, 2> p{cs.h, sp};
  return make(Layout::external, q, p);
}

void PhaseSpacePoint::validate() const {
  if (q.size() != p.size() || q.size() % 3 != 0) throw ValidationError("phase-space point: ragged coordinates");
  if (pairs() != expected_pairs(layout)) {
    throw ValidationError(std::string("phase-space point: wrong pair count for layout ") + to_string(layout));
  }
  for (double v : q) {
    if (!std::isfinite(v)) throw ValidationError("phase-space point: non-finite coordinate");
  }
  for (double v : p) {
    if (!std::isfinite(v)) throw ValidationError("phase-space point: non-finite momentum");
  }
}

// ---------------------------------------------------------------------------
// Bracket engine

double Gradients::bracket(std::size_t f, std::size_t g) const {
  double acc = 0.0;
  const auto& fq = dq[f];
  const auto& fp = dp[f];
  const auto& gq = dq[g];
  const auto& gp = dp[g];
  for (std::size_t i = 0; i < fq.size(); ++i) acc += fq[i] * gp[i] - fp[i] * gq[i];
  return acc;
}

namespace {

std::vector<Dual> lift(const std::vector<double>& v) {
  std::vector<Dual> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = Dual::constant(v[i]);
  return out;
}

std::vector<double> eval_values(const PhaseVectorFunction& f, const std::vector<double>& q,
                                const std::vector<double>& p) {
  const std::vector<Dual> qd = lift(q);
  const std::vector<Dual> pd = lift(p);
  const std::vector<Dual> r = f(qd, pd);
  std::vector<double> out(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i].v;
  return out;
}

bool all_finite(const Gradients& g) {
  for (const auto& row : g.dq) {
    for (double v : row) {
      if (!std::isfinite(v)) return false;
    }
  }
  for (const auto& row : g.dp) {
    for (double v : row) {
      if (!std::isfinite(v)) return false;
    }
  }
  return true;
}

void central_differences(const PhaseVectorFunction& f, const PhaseSpacePoint& pt, Gradients& g) {
  const std::size_t n = pt.q.size();
  for (std::size_t d = 0; d < 2 * n; ++d) {
    std::vector<double> q = pt.q;
    std::vector<double> p = pt.p;
    double& x = d < n ? q[d] : p[d - n];
    const double x0 = x;
    const double step = 1e-6 * std::max(1.0, std::abs(x0));
    std::vector<double> plus;
    std::vector<double> minus;
    try {
      x = x0 + step;
      plus = eval_values(f, q, p);
      x = x0 - step;
      minus = eval_values(f, q, p);
    } catch (const std::exception& e) {
      throw NumericalError(std::string("bracket engine: evaluation failed at perturbed point: ") + e.what());
    }
    for (std::size_t c = 0; c < g.values.size(); ++c) {
      const double der = (plus[c] - minus[c]) / (2.0 * step);
      if (!std::isfinite(der)) throw NumericalError("bracket engine: non-finite central difference");
      (d < n ? g.dq[c][d] : g.dp[c][d - n]) = der;
    }
  }
  g.used_fallback = true;
}

}  // namespace

Gradients gradients(const PhaseVectorFunction& f, const PhaseSpacePoint& pt, DiffMode mode) {
  pt.validate();
  const std::size_t n = pt.q.size();
  Gradients g;
  g.values = eval_values(f, pt.q, pt.p);
  const std::size_t m = g.values.size();
  g.dq.assign(m, std::vector<double>(n));
  g.dp.assign(m, std::vector<double>(n));

  if (mode != DiffMode::central) {
    std::vector<Dual> q = lift(pt.q);
    std::vector<Dual> p = lift(pt.p);
    for (std::size_t d = 0; d < 2 * n; ++d) {
      Dual& seed = d < n ? q[d] : p[d - n];
      seed.d = 1.0;
      const std::vector<Dual> r = f(q, p);
      seed.d = 0.0;
      for (std::size_t c = 0; c < m; ++c) (d < n ? g.dq[c][d] : g.dp[c][d - n]) = r[c].d;
    }
    if (all_finite(g)) return g;
    if (mode == DiffMode::dual) throw NumericalError("bracket engine: non-finite dual derivative");
  }
  central_differences(f, pt, g);
  return g;
}

double poisson_bracket(const PhaseFunction& f, const PhaseFunction& g, const PhaseSpacePoint& pt, DiffMode mode) {
  const PhaseVectorFunction both = [&](std::span<const Dual> q, std::span<const Dual> p) {
    return std::vector<Dual>{f(q, p), g(q, p)};
  };
  return gradients(both, pt, mode).bracket(0, 1);
}

// ---------------------------------------------------------------------------
// Generators

namespace {

template <class T>
void store(std::vector<T>& out, std::size_t at, const Vec3T<T>& v) {
  out[at] = v.x;
  out[at + 1] = v.y;
  out[at + 2] = v.z;
}

template <class T>
std::vector<T> external_components(const Vec3T<T>& z, const Vec3T<T>& h, const T& Mc, const Vec3T<T>& S) {
  using std::sqrt;
  const T gamma = sqrt(T(1.0) + dot(h, h));
  std::vector<T> out(10);
  out[0] = Mc * gamma;
  store(out, 1, h * Mc);
  store(out, 4, cross(z, h) + S);
  store(out, 7, cross(S, h) / (T(1.0) + gamma) - z * gamma);
  return out;
}

template <class T>
T energy_root(const T& mass_term, const Vec3T<T>& kappa, const T& v, int particle) {
  using std::sqrt;
  const T radicand = mass_term + dot(kappa, kappa) + v;
  if (value_of(radicand) < 0.0) {
    throw DomainError("negative mass-shell radicand m^2 c^2 + kappa^2 + V for particle " + std::to_string(particle));
  }
  return sqrt(radicand);
}

template <class T>
std::vector<T> internal_components(const Vec3T<T>& eta1, const Vec3T<T>& k1, const Vec3T<T>& eta2,
                                   const Vec3T<T>& k2, const Potential& V, double m1, double m2, double c) {
  const Vec3T<T> rho = eta1 - eta2;
  const T v = V(dot(rho, rho));
  const T w1 = energy_root(T(m1 * m1 * c * c), k1, v, 1);
  const T w2 = energy_root(T(m2 * m2 * c * c), k2, v, 2);
  std::vector<T> out(10);
  out[0] = w1 + w2;
  store(out, 1, k1 + k2);
  store(out, 4, cross(eta1, k1) + cross(eta2, k2));
  store(out, 7, -(eta1 * w1 + eta2 * w2));
  return out;
}

}  // namespace

GeneratorSet external_generators(const CollectiveState& cs) {
  cs.validate();
  const std::vector<double> g = external_components(cs.z, cs.h, cs.Mc, cs.S);
  return {{g[0], {g[1], g[2], g[3]}}, {g[4], g[5], g[6]}, {g[7], g[8], g[9]}};
}

InternalGeneratorSet internal_generators(const PhaseSpacePoint& pt, const Potential& V, double m1, double m2,
                                         double c) {
  pt.validate();
  if (pt.layout != Layout::internal) throw ValidationError("internal_generators needs the internal layout");
  const std::vector<double> g =
      internal_components(pt.coord(0), pt.momentum(0), pt.coord(1), pt.momentum(1), V, m1, m2, c);
  return {g[0], {g[1], g[2], g[3]}, {g[4], g[5], g[6]}, {g[7], g[8], g[9]}};
}

FourVector pauli_lubanski(const GeneratorSet& g) {
  return {dot(g.J, g.P.s), g.J * g.P.t - cross(g.P.s, g.K)};
}

PhaseVectorFunction external_generator_function(double Mc) {
  return [Mc](std::span<const Dual> q, std::span<const Dual> p) {
    const Vec3T<Dual> spin = cross(pair_vec(q, 1), pair_vec(p, 1));
    return external_components(pair_vec(q, 0), pair_vec(p, 0), Dual::constant(Mc), spin);
  };
}

PhaseVectorFunction internal_generator_function(const Potential& V, double m1, double m2, double c) {
  return [V, m1, m2, c](std::span<const Dual> q, std::span<const Dual> p) {
    return internal_components(pair_vec(q, 0), pair_vec(p, 0), pair_vec(q, 1), pair_vec(p, 1), V, m1, m2, c);
  };
}

// ---------------------------------------------------------------------------
// Closure

namespace {

constexpr std::size_t kP0 = 0;
constexpr std::size_t kP = 1;
constexpr std::size_t kJ = 4;
constexpr std::size_t kK = 7;

const std::array<const char*, 8> kRelations = {
    "{P^mu,P^nu}=0",           "{J^i,P^0}=0",
    "{J^i,J^j}=eps^ijk J^k",   "{J^i,P^j}=eps^ijk P^k",
    "{J^i,K^j}=eps^ijk K^k",   "{K^i,K^j}=-eps^ijk J^k",
    "{K^i,P^j}=-delta^ij P^0", "{K^i,P^0}=-P^i",
};

double levi_civita(std::size_t i, std::size_t j, std::size_t k) {
  if (i == j || j == k || i == k) return 0.0;
  return ((i + 1) % 3 == j) ? 1.0 : -1.0;
}

std::array<double, kRelations.size()> relation_residuals(const Gradients& g) {
  std::array<double, kRelations.size()> r{};
  const auto& val = g.values;
  auto upd = [&r](std::size_t which, double residual) {
    const double a = std::isnan(residual) ? std::numeric_limits<double>::infinity() : std::abs(residual);
    r[which] = std::max(r[which], a);
  };

  for (std::size_t a = 0; a < 4; ++a) {
    for (std::size_t b = a + 1; b < 4; ++b) upd(0, g.bracket(kP0 + a, kP0 + b));
  }
  for (std::size_t i = 0; i < 3; ++i) {
    upd(1, g.bracket(kJ + i, kP0));
    upd(7, g.bracket(kK + i, kP0) + val[kP + i]);
    for (std::size_t j = 0; j < 3; ++j) {
      double jj = 0.0;
      double jp = 0.0;
      double jk = 0.0;
      double kk = 0.0;
      for (std::size_t k = 0; k < 3; ++k) {
        const double e = levi_civita(i, j, k);
        jj += e * val[kJ + k];
        jp += e * val[kP + k];
        jk += e * val[kK + k];
        kk -= e * val[kJ + k];
      }
      upd(2, g.bracket(kJ + i, kJ + j) - jj);
      upd(3, g.bracket(kJ + i, kP + j) - jp);
      upd(4, g.bracket(kJ + i, kK + j) - jk);
      upd(5, g.bracket(kK + i, kK + j) - kk);
      upd(6, g.bracket(kK + i, kP + j) + (i == j ? val[kP0] : 0.0));
    }
  }
  return r;
}

}  // namespace

double ClosureReport::max_residual() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.max_residual);
  return m;
}

namespace {

using GeneratorFor = std::function<const PhaseVectorFunction&(std::size_t)>;

ClosureReport closure_impl(const GeneratorFor& generators_for, std::span<const PhaseSpacePoint> points,
                           DiffMode mode) {
  if (points.empty()) throw ValidationError("closure check needs at least one sample point");
  using Row = std::array<double, kRelations.size()>;
  std::vector<Row> per_sample(points.size());
  std::vector<char> fallback(points.size(), 0);
  std::vector<std::string> failure(points.size());

  const auto n = static_cast<std::ptrdiff_t>(points.size());
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t s = 0; s < n; ++s) {
    const auto i = static_cast<std::size_t>(s);
    try {
      const Gradients g = gradients(generators_for(i), points[i], mode);
      per_sample[i] = relation_residuals(g);
      fallback[i] = g.used_fallback ? 1 : 0;
    } catch (const std::exception& e) {
      failure[i] = e.what();
    }
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (!failure[i].empty()) throw NumericalError("closure sample " + std::to_string(i) + ": " + failure[i]);
  }

  ClosureReport rep;
  rep.layout = points.front().layout;
  rep.samples = points.size();
  for (std::size_t r = 0; r < kRelations.size(); ++r) {
    ClosureEntry e;
    e.relation = kRelations[r];
    for (std::size_t i = 0; i < points.size(); ++i) {
      if (i == 0 || per_sample[i][r] > e.max_residual) {
        e.max_residual = per_sample[i][r];
        e.worst_sample = i;
      }
    }
    const PhaseSpacePoint& worst = points[e.worst_sample];
    e.worst_point = worst.q;
    e.worst_point.insert(e.worst_point.end(), worst.p.begin(), worst.p.end());
    rep.entries.push_back(std::move(e));
  }
  rep.fallback_samples = static_cast<std::size_t>(std::count(fallback.begin(), fallback.end(), 1));
  return rep;
}

}  // namespace

ClosureReport verify_closure(const PhaseVectorFunction& generators, std::span<const PhaseSpacePoint> points,
                             DiffMode mode) {
  return closure_impl([&generators](std::size_t) -> const PhaseVectorFunction& { return generators; }, points, mode);
}

ClosureReport verify_external_closure(std::span<const CollectiveState> states, DiffMode mode) {
  // Mc is a Casimir and enters each sample's generators as a constant.
  std::vector<PhaseSpacePoint> points;
  std::vector<PhaseVectorFunction> generators;
  points.reserve(states.size());
  generators.reserve(states.size());
  for (std::size_t i = 0; i < states.size(); ++i) {
    points.push_back(PhaseSpacePoint::external(states[i], 0.37 * static_cast<double>(i)));
    generators.push_back(external_generator_function(states[i].Mc));
  }
  return closure_impl([&generators](std::size_t i) -> const PhaseVectorFunction& { return generators[i]; }, points,
                      mode);
}

ClosureReport verify_internal_closure(std::span<const PhaseSpacePoint> points, const Potential& V, double m1,
                                      double m2, double c, DiffMode mode) {
  for (const auto& pt : points) {
    if (pt.layout != Layout::internal) throw ValidationError("internal closure needs internal-layout points");
  }
  return verify_closure(internal_generator_function(V, m1, m2, c), points, mode);
}

std::string closure_report_json(const ClosureReport& report) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& e : report.entries) {
    arr.push_back({{"relation", e.relation},
                   {"max_residual", e.max_residual},
                   {"worst_point", {{"sample", e.worst_sample}, {"coordinates", e.worst_point}}}});
  }
  return arr.dump(2);
}

CollectiveState random_collective_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> mass(0.5, 3.0);
  auto vec = [&](double scale) {
    const double x = u(rng);
    const double y = u(rng);
    const double z = u(rng);
    return Vec3{x, y, z} * (scale / std::sqrt(3.0));
  };
  CollectiveState cs;
  cs.z = vec(2.0);
  cs.h = vec(2.0);
  cs.Mc = mass(rng);
  cs.S = vec(2.0);
  return cs;
}

PhaseSpacePoint random_internal_point_on_surface(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto vec = [&] {
    const double x = u(rng);
    const double y = u(rng);
    const double z = u(rng);
    return Vec3{x, y, z};
  };
  const Vec3 eta1 = vec();
  const Vec3 eta2 = vec();
  const Vec3 kappa = vec();
  return PhaseSpacePoint::internal(eta1, kappa, eta2, -kappa);
}

// ---------------------------------------------------------------------------
// Rest-frame reduction

ConstraintResiduals restframe_residuals(const PhaseSpacePoint& pt, const Potential& V, double m1, double m2, double c) {
  const InternalGeneratorSet g = internal_generators(pt, V, m1, m2, c);
  return {norm(g.P_int), norm(g.K_int)};
}

RelativeVariables to_relative(const Vec3& eta1, const Vec3& eta2, const Vec3& kappa1, const Vec3& kappa2, double m1,
                              double m2) {
  const double M = m1 + m2;
  if (!(M > 0.0)) throw ValidationError("to_relative: total mass must be positive");
  return {eta1 - eta2, kappa1 * (m2 / M) - kappa2 * (m1 / M)};
}

Vec3 internal_cm(const Vec3& rho, const Vec3& pi, double m1, double m2, const Potential& V, double c) {
  const double M = m1 + m2;
  if (!(M > 0.0)) throw ValidationError("internal_cm: total mass must be positive");
  const double H = dot(pi, pi) + V(dot(rho, rho));
  const double r1 = m1 * m1 * c * c + H;
  const double r2 = m2 * m2 * c * c + H;
  if (r1 < 0.0) throw DomainError("internal_cm: negative radicand m1^2 c^2 + H for particle 1");
  if (r2 < 0.0) throw DomainError("internal_cm: negative radicand m2^2 c^2 + H for particle 2");
  const double w1 = std::sqrt(r1);
  const double w2 = std::sqrt(r2);
  return rho * ((m1 * w2 - m2 * w1) / (M * (w1 + w2)));
}

PhaseSpacePoint from_relative(const Vec3& rho, const Vec3& pi, double m1, double m2, const Potential& V, double c) {
  const double M = m1 + m2;
  const Vec3 eta = internal_cm(rho, pi, m1, m2, V, c);
  return PhaseSpacePoint::internal(eta + rho * (m2 / M), pi, eta - rho * (m1 / M), -pi);
}

}  // namespace restframe
