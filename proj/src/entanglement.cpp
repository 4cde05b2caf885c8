#include "restframe/entanglement.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "restframe/csv.hpp"
#include "restframe/errors.hpp"
#include "restframe/kernels.hpp"

namespace restframe {

// ---------------------------------------------------------------------------
// Grid1D

Grid1D Grid1D::periodic_box(double length, std::size_t n) {
  if (!(length > 0.0) || n < 2) throw ValidationError("periodic box needs L > 0 and n >= 2");
  const double dx = length / static_cast<double>(n);
  return {-0.5 * length, dx, n, true};
}

Grid1D Grid1D::open(double a, double b, std::size_t n) {
  if (!(b > a) || n < 2) throw ValidationError("open grid needs b > a and n >= 2");
  return {a, (b - a) / static_cast<double>(n - 1), n, false};
}

std::vector<double> Grid1D::weights() const {
  std::vector<double> w(n, spacing);
  if (!periodic) {
    w.front() *= 0.5;
    w.back() *= 0.5;
  }
  return w;
}

std::vector<double> Grid1D::points() const {
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i) p[i] = x(i);
  return p;
}

double Grid1D::wrap(double dx) const {
  if (!periodic) return dx;
  const double L = length();
  return dx - L * std::floor((dx + 0.5 * L) / L);
}

void Grid1D::validate() const {
  if (n < 2 || !(spacing > 0.0) || !std::isfinite(x0)) throw ValidationError("invalid 1-D grid");
}

// ---------------------------------------------------------------------------
// States

double TwoParticleWavefunction::norm2() const {
  const std::vector<double> w = grid.weights();
  double acc = 0.0;
  for (std::size_t a = 0; a < grid.n; ++a) {
    for (std::size_t b = 0; b < grid.n; ++b) acc += w[a] * w[b] * std::norm((*this)(a, b));
  }
  return acc;
}

TwoParticleWavefunction TwoParticleWavefunction::sample(const Grid1D& grid,
                                                        const std::function<cplx(double, double)>& psi, double m_e,
                                                        double m_p) {
  grid.validate();
  if (!(m_e > 0.0) || !(m_p > 0.0)) throw ValidationError("particle masses must be positive");
  TwoParticleWavefunction out;
  out.grid = grid;
  out.m_e = m_e;
  out.m_p = m_p;
  out.amp.resize(grid.n * grid.n);
  for (std::size_t a = 0; a < grid.n; ++a) {
    for (std::size_t b = 0; b < grid.n; ++b) out.amp[a * grid.n + b] = psi(grid.x(a), grid.x(b));
  }
  return out;
}

namespace {

// Relative grid index of the separation x_a - x_b on a periodic grid.
std::size_t relative_index(const Grid1D& g, std::size_t a, std::size_t b) {
  const auto n = static_cast<std::ptrdiff_t>(g.n);
  std::ptrdiff_t k = static_cast<std::ptrdiff_t>(a) - static_cast<std::ptrdiff_t>(b);
  k = ((k % n) + n) % n;  // 0..n-1
  if (k >= n - n / 2) k -= n;  // -(n/2)..n-1-n/2
  return static_cast<std::size_t>(k + n / 2);
}

double relative_point(const Grid1D& g, std::size_t j) {
  return (static_cast<double>(j) - static_cast<double>(g.n / 2)) * g.spacing;
}

cplx com_phase(double p, double m_e, double m_p, double x_e, double x_p) {
  return std::polar(1.0, p * (m_e * x_e + m_p * x_p) / (m_e + m_p));
}

}  // namespace

TwoParticleWavefunction hydrogen_state(const std::function<cplx(double)>& phi_int, double p, double m_e, double m_p,
                                       const Grid1D& grid) {
  grid.validate();
  if (!grid.periodic) throw ValidationError("hydrogen_state: the plane-wave factor needs a periodic box");
  if (!(m_e > 0.0) || !(m_p > 0.0)) throw ValidationError("particle masses must be positive");
  const double mode = p * grid.length() / (2.0 * std::numbers::pi);
  if (!std::isfinite(mode) || std::abs(mode - std::round(mode)) > 1e-9) {
    throw ValidationError("hydrogen_state: total momentum must be a multiple of 2*pi/L on the box");
  }

  std::vector<cplx> rel(grid.n);
  double norm = 0.0;
  for (std::size_t j = 0; j < grid.n; ++j) {
    rel[j] = phi_int(relative_point(grid, j));
    norm += grid.spacing * std::norm(rel[j]);
  }
  if (!std::isfinite(norm) || !(norm > 0.0)) {
    throw ValidationError("hydrogen_state: relative wavefunction is not square-integrable on the grid");
  }

  TwoParticleWavefunction out;
  out.grid = grid;
  out.m_e = m_e;
  out.m_p = m_p;
  out.p = p;
  out.amp.resize(grid.n * grid.n);
  for (std::size_t a = 0; a < grid.n; ++a) {
    for (std::size_t b = 0; b < grid.n; ++b) {
      out.amp[a * grid.n + b] = rel[relative_index(grid, a, b)] * com_phase(p, m_e, m_p, grid.x(a), grid.x(b));
    }
  }
  out.relative = std::move(rel);
  return out;
}

// ---------------------------------------------------------------------------
// Reduced density matrices

double ReducedDensityMatrix::trace() const {
  double t = 0.0;
  for (std::size_t i = 0; i < size(); ++i) t += weights[i] * (*this)(i, i).real();
  return t;
}

double ReducedDensityMatrix::purity() const {
  const std::size_t n = size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) acc += weights[i] * weights[j] * ((*this)(i, j) * (*this)(j, i)).real();
  }
  return acc;
}

double ReducedDensityMatrix::hermiticity_residual() const {
  const std::size_t n = size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) worst = std::max(worst, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
  }
  return worst;
}

std::vector<double> ReducedDensityMatrix::spectrum() const {
  const auto n = static_cast<Eigen::Index>(size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      const cplx sym = 0.5 * ((*this)(ui, uj) + std::conj((*this)(uj, ui)));
      m(i, j) = std::sqrt(weights[ui] * weights[uj]) * sym;
    }
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) throw NumericalError("density-matrix eigensolver failed");
  const Eigen::VectorXd ev = es.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

void ReducedDensityMatrix::normalize() {
  const double t = trace();
  if (!(t > 0.0) || !std::isfinite(t)) throw NumericalError("density matrix has non-positive trace");
  for (cplx& v : kernel) v /= t;
  normalized = true;
}

// ---------------------------------------------------------------------------
// Presentations

const char* to_string(PresentationTag tag) {
  switch (tag) {
    case PresentationTag::A: return "A";
    case PresentationTag::B: return "B";
    case PresentationTag::C: return "C";
  }
  return "?";
}

PresentationTag presentation_from_string(const std::string& tag) {
  if (tag == "A") return PresentationTag::A;
  if (tag == "B") return PresentationTag::B;
  if (tag == "C") return PresentationTag::C;
  throw ValidationError("unknown presentation tag '" + tag + "' (expected A, B or C)");
}

std::array<double, 2> PresentationMap::forward(double x_e, double x_p) const {
  return {jacobian[0][0] * x_e + jacobian[0][1] * x_p + offset[0],
          jacobian[1][0] * x_e + jacobian[1][1] * x_p + offset[1]};
}

std::array<double, 2> PresentationMap::inverse(double u, double v) const {
  const double det = jacobian_determinant();
  const double a = u - offset[0];
  const double b = v - offset[1];
  return {(jacobian[1][1] * a - jacobian[0][1] * b) / det, (-jacobian[1][0] * a + jacobian[0][0] * b) / det};
}

double PresentationMap::jacobian_determinant() const {
  return jacobian[0][0] * jacobian[1][1] - jacobian[0][1] * jacobian[1][0];
}

PresentationMap presentation_map(PresentationTag tag, double m_e, double m_p, double p, double t) {
  if (!(m_e > 0.0) || !(m_p > 0.0)) throw ValidationError("particle masses must be positive");
  const double M = m_e + m_p;
  PresentationMap map;
  map.tag = tag;
  switch (tag) {
    case PresentationTag::A:
      map.first_factor = "electron x_e";
      map.second_factor = "proton x_p";
      map.jacobian = {{{1.0, 0.0}, {0.0, 1.0}}};
      break;
    case PresentationTag::B:
      map.first_factor = "center of mass x";
      map.second_factor = "relative r";
      map.jacobian = {{{m_e / M, m_p / M}, {1.0, -1.0}}};
      break;
    case PresentationTag::C:
      map.first_factor = "frozen Jacobi center of mass x0";
      map.second_factor = "relative r";
      map.jacobian = {{{m_e / M, m_p / M}, {1.0, -1.0}}};
      map.offset = {-p * t / M, 0.0};
      break;
  }
  const double det = std::abs(map.jacobian_determinant());
  if (std::abs(det - 1.0) > 1e-12) throw NumericalError("presentation map is not measure preserving");
  return map;
}

PresentationMap presentation_map(const TwoParticleWavefunction& psi, PresentationTag tag, double t) {
  return presentation_map(tag, psi.m_e, psi.m_p, psi.p, t);
}

ReducedDensityMatrix trace_out_com(const TwoParticleWavefunction& psi, PresentationTag tag, double t) {
  if (tag == PresentationTag::A) {
    throw ValidationError("trace_out_com: presentation A has no center-of-mass factor");
  }
  if (!psi.relative) throw ValidationError("trace_out_com: state does not factor into center of mass and relative");
  const Grid1D& g = psi.grid;
  const std::vector<cplx>& rel = *psi.relative;
  const PresentationMap map = presentation_map(psi, tag, t);

  // The stored amplitudes must agree with the factored form.
  double mismatch = 0.0;
  double scale = 0.0;
  for (std::size_t a = 0; a < g.n; ++a) {
    for (std::size_t b = 0; b < g.n; ++b) {
      const cplx expect = rel[relative_index(g, a, b)] * com_phase(psi.p, psi.m_e, psi.m_p, g.x(a), g.x(b));
      mismatch = std::max(mismatch, std::abs(psi(a, b) - expect));
      scale = std::max(scale, std::abs(expect));
    }
  }
  if (mismatch > 1e-12 * std::max(scale, 1.0)) {
    throw ValidationError("trace_out_com: amplitudes do not match the stored relative factor");
  }

  // ψ(u, r) on the (center-of-mass factor, relative) grid square; u is x for B and x0 for C.
  std::vector<cplx> factored(g.n * g.n);
  for (std::size_t i = 0; i < g.n; ++i) {
    const double x_com = g.x(i) - map.offset[0];
    const cplx plane = std::polar(1.0, psi.p * x_com);
    for (std::size_t j = 0; j < g.n; ++j) factored[i * g.n + j] = plane * rel[j];
  }
  const std::vector<double> w = g.weights();
  ReducedDensityMatrix out;
  out.kernel = kernels::omp::partial_trace(factored, g.n, g.n, w, /*keep_first=*/false);
  out.weights = w;
  out.x.resize(g.n);
  for (std::size_t j = 0; j < g.n; ++j) out.x[j] = relative_point(g, j);
  out.normalize();
  return out;
}

ReducedDensityMatrix trace_out_particle(const TwoParticleWavefunction& psi, Particle keep) {
  const Grid1D& g = psi.grid;
  const std::vector<double> w = g.weights();
  ReducedDensityMatrix out;
  out.kernel = kernels::omp::partial_trace(psi.amp, g.n, g.n, w, keep == Particle::electron);
  out.weights = w;
  out.x = g.points();
  out.normalize();
  return out;
}

KernelStructure kernel_structure(const ReducedDensityMatrix& rho, const TwoParticleWavefunction& psi, Particle keep) {
  const std::size_t n = rho.size();
  const double fraction = (keep == Particle::electron ? psi.m_e : psi.m_p) / psi.total_mass();
  auto dephased = [&](std::size_t a, std::size_t b) {
    return rho(a, b) * std::polar(1.0, -fraction * psi.p * (rho.x[a] - rho.x[b]));
  };
  KernelStructure out;
  double mean = 0.0;
  for (std::size_t a = 0; a < n; ++a) mean += rho(a, a).real();
  mean /= static_cast<double>(n);
  for (std::size_t a = 0; a < n; ++a) {
    out.diagonal_flatness = std::max(out.diagonal_flatness, std::abs(rho(a, a) - cplx(mean, 0.0)));
    for (std::size_t b = 0; b < n; ++b) {
      // Reference pair with the same separation, anchored at index 0.
      const std::size_t ra = a >= b ? a - b : 0;
      const std::size_t rb = a >= b ? 0 : b - a;
      out.structure_residual = std::max(out.structure_residual, std::abs(dephased(a, b) - dephased(ra, rb)));
      out.modulus_residual = std::max(out.modulus_residual, std::abs(std::abs(rho(a, b)) - std::abs(rho(ra, rb))));
    }
  }
  return out;
}

ReducedDensityMatrix relativistic_reduced(const RelativisticState& state) {
  state.grid.validate();
  if (state.phi.size() != state.grid.n) throw ValidationError("relativistic_reduced: wavefunction/grid size mismatch");
  const std::size_t n = state.grid.n;
  ReducedDensityMatrix out;
  out.x = state.grid.points();
  out.weights = state.grid.weights();
  out.kernel.resize(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.kernel[i * n + j] = state.phi[i] * std::conj(state.phi[j]);
  }
  out.normalize();
  return out;
}

void trace_out_relativistic_particle(const RelativisticState&, int which) {
  if (which != 1 && which != 2) throw ValidationError("particle index must be 1 or 2");
  throw RelativisticNonSeparability(which);
}

double entanglement_entropy(const ReducedDensityMatrix& rho) {
  double scale = 0.0;
  for (const cplx& v : rho.kernel) scale = std::max(scale, std::abs(v));
  if (rho.hermiticity_residual() > 1e-12 * std::max(scale, 1.0)) {
    throw ValidationError("entanglement_entropy: kernel is not Hermitian");
  }
  double s = 0.0;
  for (double lambda : rho.spectrum()) {
    if (lambda > 1e-12) s -= lambda * std::log(lambda);
  }
  return s;
}

void write_kernel_csv(std::ostream& os, const ReducedDensityMatrix& rho) {
  os << "x,x_prime,re,im\n";
  for (std::size_t i = 0; i < rho.size(); ++i) {
    for (std::size_t j = 0; j < rho.size(); ++j) csv::row(os, {rho.x[i], rho.x[j], rho(i, j).real(), rho(i, j).imag()});
  }
}

}  // namespace restframe
