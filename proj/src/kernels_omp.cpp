#include <cmath>

#include "restframe/kernels.hpp"

namespace restframe::kernels::omp {

std::vector<double> tube_offsets(const Vec3& S, double Mc, std::span<const Vec3> h) {
  const auto n = static_cast<std::ptrdiff_t>(h.size());
  std::vector<double> out(2 * h.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const Vec3& hv = h[static_cast<std::size_t>(i)];
    const double gamma = std::sqrt(1.0 + dot(hv, hv));
    const double sxh = norm(cross(S, hv));
    out[2 * i] = sxh / (Mc * (1.0 + gamma));
    out[2 * i + 1] = sxh / (Mc * gamma);
  }
  return out;
}

// Rows are distributed across threads; each row computes the upper triangle
// j >= i and mirrors it, so element (j, i) is written only by the owner of row i.
std::vector<cplx> partial_trace(std::span<const cplx> psi, std::size_t n_a, std::size_t n_b,
                                std::span<const double> w, bool keep_first) {
  const std::size_t n = keep_first ? n_a : n_b;
  const std::size_t m = keep_first ? n_b : n_a;
  // Gather the kept index as contiguous rows of length m so the inner loop is unit-stride.
  std::vector<cplx> rows(n * m);
  for (std::size_t a = 0; a < n_a; ++a) {
    for (std::size_t b = 0; b < n_b; ++b) {
      const cplx v = psi[a * n_b + b];
      if (keep_first) {
        rows[a * m + b] = v;
      } else {
        rows[b * m + a] = v;
      }
    }
  }
  std::vector<cplx> rho(n * n);
  const auto nn = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t ii = 0; ii < nn; ++ii) {
    const auto i = static_cast<std::size_t>(ii);
    const cplx* ri = rows.data() + i * m;
    for (std::size_t j = i; j < n; ++j) {
      const cplx* rj = rows.data() + j * m;
      cplx acc{};
      for (std::size_t t = 0; t < m; ++t) acc += w[t] * ri[t] * std::conj(rj[t]);
      if (i == j) acc.imag(0.0);
      rho[i * n + j] = acc;
      rho[j * n + i] = std::conj(acc);
    }
  }
  return rho;
}

std::vector<cplx> fourier_synthesis(std::span<const cplx> a, std::span<const double> k,
                                    std::span<const double> x, double scale) {
  std::vector<cplx> out(x.size());
  const auto nx = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t jj = 0; jj < nx; ++jj) {
    const auto j = static_cast<std::size_t>(jj);
    cplx acc{};
    for (std::size_t n = 0; n < k.size(); ++n) acc += a[n] * std::polar(1.0, k[n] * x[j]);
    out[j] = scale * acc;
  }
  return out;
}

}  // namespace restframe::kernels::omp
