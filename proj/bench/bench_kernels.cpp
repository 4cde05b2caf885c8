#include <benchmark/benchmark.h>

#include <cmath>
#include <random>
#include <vector>

#include "restframe/kernels.hpp"

using namespace restframe;
namespace k = restframe::kernels;

namespace {

std::vector<Vec3> boosts(std::size_t n) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  std::vector<Vec3> h(n);
  for (auto& v : h) v = {u(rng), u(rng), u(rng)};
  return h;
}

std::vector<k::cplx> amplitudes(std::size_t n) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> g;
  std::vector<k::cplx> a(n);
  for (auto& v : a) v = {g(rng), g(rng)};
  return a;
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return v;
}

template <bool Omp>
void BM_tube_offsets(benchmark::State& state) {
  const auto h = boosts(static_cast<std::size_t>(state.range(0)));
  const Vec3 S{0.2, -0.4, 1.0};
  for (auto _ : state) {
    auto out = Omp ? k::omp::tube_offsets(S, 1.3, h) : k::serial::tube_offsets(S, 1.3, h);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

template <bool Omp>
void BM_partial_trace(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto psi = amplitudes(n * n);
  const std::vector<double> w(n, 1.0 / static_cast<double>(n));
  for (auto _ : state) {
    auto rho = Omp ? k::omp::partial_trace(psi, n, n, w, true) : k::serial::partial_trace(psi, n, n, w, true);
    benchmark::DoNotOptimize(rho.data());
  }
}

template <bool Omp>
void BM_fourier_synthesis(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = amplitudes(n);
  const auto kk = linspace(-3.0, 3.0, n);
  const auto x = linspace(-100.0, 100.0, n);
  for (auto _ : state) {
    auto psi = Omp ? k::omp::fourier_synthesis(a, kk, x, 0.1) : k::serial::fourier_synthesis(a, kk, x, 0.1);
    benchmark::DoNotOptimize(psi.data());
  }
}

}  // namespace

BENCHMARK(BM_tube_offsets<false>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_tube_offsets<true>)->Arg(1 << 12)->Arg(1 << 16);
BENCHMARK(BM_partial_trace<false>)->Arg(64)->Arg(256);
BENCHMARK(BM_partial_trace<true>)->Arg(64)->Arg(256);
BENCHMARK(BM_fourier_synthesis<false>)->Arg(256)->Arg(1024);
BENCHMARK(BM_fourier_synthesis<true>)->Arg(256)->Arg(1024);

BENCHMARK_MAIN();
