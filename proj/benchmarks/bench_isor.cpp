#include "isor/cmc.hpp"
#include "isor/geometry.hpp"
#include "isor/minimal.hpp"
#include "isor/untwisted.hpp"

#include <benchmark/benchmark.h>

#include <numbers>

using namespace isor;

namespace {

const double kPi = std::numbers::pi;

void BM_EnneperMesh(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SurfaceMap map = minimal_surface({1, 1, 1}, {-1, 1}, {0, 2 * kPi});
  for (auto _ : state) benchmark::DoNotOptimize(sample_mesh(map, n, 3 * n));
  state.SetItemsProcessed(state.iterations() * 3 * n * n);
}
BENCHMARK(BM_EnneperMesh)->Arg(80)->Arg(160);

void BM_PrincipalAt(benchmark::State& state) {
  const SurfaceMap map = minimal_surface({1, 1, 1}, {-1, 1}, {0, 2 * kPi});
  double u = -0.5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(principal_at(map, u, 1.0, 1e-4));
    u = u > 0.5 ? -0.5 : u + 1e-3;
  }
}
BENCHMARK(BM_PrincipalAt);

void BM_SolveRhoHalfH(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(solve_rho(0.5, 1, 4.2625, 2, 2, {-1, 1}));
}
BENCHMARK(BM_SolveRhoHalfH)->Unit(benchmark::kMillisecond);

void BM_IntegrateSurfaceHalfH(benchmark::State& state) {
  const OdeSolution sol = solve_rho(0.5, 1, 4.2625, 2, 2, {-1, 1});
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state)
    benchmark::DoNotOptimize(integrate_surface(sol.profile(), 0.5, 1, 4.2625, {-1, 1}, {-kPi / 2, kPi / 2}, n, n));
}
BENCHMARK(BM_IntegrateSurfaceHalfH)->Arg(81)->Arg(161)->Unit(benchmark::kMillisecond);

void BM_WeierstrassIntegrate(benchmark::State& state) {
  const MinimalParams p{0.7, 2.0, 1.5};
  const int steps = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(weierstrass_integrate(p, {0, 0}, {0.4, 1.3}, steps));
}
BENCHMARK(BM_WeierstrassIntegrate)->Arg(16)->Arg(64);

void BM_BuildRevolve(benchmark::State& state) {
  const MetricProfile prof = minimal_profile({1, 1, 1}, {-5, 5});
  for (auto _ : state) benchmark::DoNotOptimize(build_revolve(prof.scaled(0.5), 3.0, {-5, 5}));
}
BENCHMARK(BM_BuildRevolve)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
