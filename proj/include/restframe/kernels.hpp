#pragma once

/**
 * @file kernels.hpp
 * @brief Data-parallel inner loops.
 *
 * Each kernel exists twice: a plain serial reference (namespace serial) and an
 * OpenMP version (namespace omp) used by the library. Tests compare the two;
 * bench/ times them. Outputs are written into per-index slots so the OpenMP
 * results do not depend on thread count or scheduling.
 */

#include <complex>
#include <span>
#include <vector>

#include "restframe/vec.hpp"

namespace restframe::kernels {

using cplx = std::complex<double>;

/// |S×h|/(Mc(1+γ)) and |S×h|/(Mc γ) per sample, packed as [x̃0, R0, x̃1, R1, ...].
namespace serial {
std::vector<double> tube_offsets(const Vec3& S, double Mc, std::span<const Vec3> h);
}
namespace omp {
std::vector<double> tube_offsets(const Vec3& S, double Mc, std::span<const Vec3> h);
}

/// Partial trace of a row-major n_a×n_b amplitude array ψ(a, b).
/// keep_first: ρ(a,a') = Σ_b w_b ψ(a,b) ψ*(a',b); otherwise ρ(b,b') = Σ_a w_a ψ(a,b) ψ*(a,b').
/// The result is row-major, size n_kept².
namespace serial {
std::vector<cplx> partial_trace(std::span<const cplx> psi, std::size_t n_a, std::size_t n_b,
                                std::span<const double> traced_weights, bool keep_first);
}
namespace omp {
std::vector<cplx> partial_trace(std::span<const cplx> psi, std::size_t n_a, std::size_t n_b,
                                std::span<const double> traced_weights, bool keep_first);
}

/// ψ(x_j) = scale · Σ_n a_n exp(i k_n x_j).
namespace serial {
std::vector<cplx> fourier_synthesis(std::span<const cplx> amplitudes, std::span<const double> k,
                                    std::span<const double> x, double scale);
}
namespace omp {
std::vector<cplx> fourier_synthesis(std::span<const cplx> amplitudes, std::span<const double> k,
                                    std::span<const double> x, double scale);
}

}  // namespace restframe::kernels
