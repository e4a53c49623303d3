#include <benchmark/benchmark.h>

#include "toric/degeneration.hpp"
#include "toric/geodesic.hpp"
#include "toric/rh.hpp"

using namespace toric;

namespace {

std::shared_ptr<const Polytope> interval(long long a, long long b) {
  return std::make_shared<Polytope>(
      1, std::vector<Facet>{{{1}, Rational(-a)}, {{-1}, Rational(b)}});
}

std::shared_ptr<const PiecewiseLinearFn> hinge(long long c) {
  return std::make_shared<PiecewiseLinearFn>(std::vector<AffinePiece>{
      {{Rational(0)}, Rational(0)}, {{Rational(1)}, Rational(-c)}});
}

void BM_LatticeEnumeration(benchmark::State& state) {
  auto P = interval(0, 2);
  Polytope hat = build_hat_polytope(*P, *hinge(1), 1);
  const int k = int(state.range(0));
  for (auto _ : state) {
    auto pts = lattice_points(hat, k);
    benchmark::DoNotOptimize(pts);
  }
}
BENCHMARK(BM_LatticeEnumeration)->Arg(8)->Arg(32)->Arg(128);

void BM_HilbertData(benchmark::State& state) {
  auto P = interval(0, 2);
  auto f = hinge(1);
  const int k_max = int(state.range(0));
  for (auto _ : state) {
    HilbertData data = hilbert_data(*P, *f, 1, k_max);
    benchmark::DoNotOptimize(data);
  }
}
BENCHMARK(BM_HilbertData)->Arg(4)->Arg(8)->Arg(16);

void BM_LegendreDual(benchmark::State& state) {
  auto u = guillemin_potential(interval(0, 2)).plus_ray(hinge(1), 5.0);
  const int samples = int(state.range(0));
  for (auto _ : state) {
    ComplexPotential h = legendre_dual(u);
    double acc = 0;
    for (int i = 0; i < samples; ++i)
      acc += h.value({-5.0 + 15.0 * i / samples});
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_LegendreDual)->Arg(16)->Arg(256);

void BM_RHSolve(benchmark::State& state) {
  RHProblem prob;
  prob.n = 2;
  Eigen::MatrixXcd B(2, 2);
  B << 0.1, std::complex<double>(0.0, 0.05), 0.05, -0.1;
  prob.A_modes = {{0, 2.0 * Eigen::MatrixXcd::Identity(2, 2)},
                  {1, B},
                  {-1, B.adjoint()}};
  Eigen::MatrixXcd S(2, 2);
  S << 0.2, 0.1, 0.1, std::complex<double>(0.0, 0.3);
  prob.S_modes = {{0, S}};
  const int N = int(state.range(0));
  for (auto _ : state) {
    RHSolution sol = rh_solve(prob, N);
    benchmark::DoNotOptimize(sol);
  }
}
BENCHMARK(BM_RHSolve)->Arg(8)->Arg(16)->Arg(32);

}  // namespace

BENCHMARK_MAIN();
