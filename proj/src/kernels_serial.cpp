// Serial reference versions of the data-parallel kernels. Tests compare the
// OpenMP versions against these.

#include <cmath>

#include "restframe/kernels.hpp"

namespace restframe::kernels::serial {

std::vector<double> tube_offsets(const Vec3& S, double Mc, std::span<const Vec3> h) {
  std::vector<double> out;
  out.reserve(2 * h.size());
  for (const Vec3& hv : h) {
    const double gamma = std::sqrt(1.0 + dot(hv, hv));
    const double sxh = norm(cross(S, hv));
    out.push_back(sxh / (Mc * (1.0 + gamma)));
    out.push_back(sxh / (Mc * gamma));
  }
  return out;
}

std::vector<cplx> partial_trace(std::span<const cplx> psi, std::size_t n_a, std::size_t n_b,
                                std::span<const double> w, bool keep_first) {
  const std::size_t n = keep_first ? n_a : n_b;
  std::vector<cplx> rho(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      cplx acc{};
      if (keep_first) {
        for (std::size_t b = 0; b < n_b; ++b) acc += w[b] * psi[i * n_b + b] * std::conj(psi[j * n_b + b]);
      } else {
        for (std::size_t a = 0; a < n_a; ++a) acc += w[a] * psi[a * n_b + i] * std::conj(psi[a * n_b + j]);
      }
      if (i == j) acc.imag(0.0);
      rho[i * n + j] = acc;
    }
  }
  return rho;
}

std::vector<cplx> fourier_synthesis(std::span<const cplx> a, std::span<const double> k,
                                    std::span<const double> x, double scale) {
  std::vector<cplx> out(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    cplx acc{};
    for (std::size_t n = 0; n < k.size(); ++n) acc += a[n] * std::polar(1.0, k[n] * x[j]);
    out[j] = scale * acc;
  }
  return out;
}

}  // namespace restframe::kernels::serial
