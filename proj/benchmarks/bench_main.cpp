#include <benchmark/benchmark.h>

#include <cmath>

#include "hypflow/elastica.hpp"
#include "hypflow/ellip.hpp"
#include "hypflow/flow.hpp"
#include "hypflow/geomcheck.hpp"
#include "hypflow/hyp2.hpp"
#include "hypflow/scenarios.hpp"

using namespace hypflow;

static void BM_CompleteK(benchmark::State& state) {
  double p = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ellip::complete_K(p));
    p = p < 0.99 ? p + 1e-3 : 0.1;
  }
}
BENCHMARK(BM_CompleteK);

static void BM_JacobiSnCnDn(benchmark::State& state) {
  double x = 0.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(ellip::jacobi_sn_cn_dn(x, 0.7));
    x += 0.01;
  }
}
BENCHMARK(BM_JacobiSnCnDn);

static void BM_ElasticEnergy(benchmark::State& state) {
  const auto c = scenarios::catenary(0.5, 1.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hyp2::elastic_energy(c));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ElasticEnergy)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

static void BM_Velocity(benchmark::State& state) {
  const auto c = scenarios::perturbed_geodesic(0.3, 1.5, static_cast<std::size_t>(state.range(0)));
  const auto w = flow::WeightFunction::willmore();
  for (auto _ : state) benchmark::DoNotOptimize(flow::velocity(c, w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Velocity)->RangeMultiplier(4)->Range(64, 4096)->Complexity();

static void BM_ImexStep(benchmark::State& state) {
  const auto c = scenarios::perturbed_geodesic(0.3, 1.5, static_cast<std::size_t>(state.range(0)));
  const auto w = flow::WeightFunction::willmore();
  const double dt = flow::default_dt(c, w);
  for (auto _ : state) benchmark::DoNotOptimize(flow::imex_step(c, dt, w));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_ImexStep)->RangeMultiplier(2)->Range(101, 1601)->Complexity();

static void BM_Reparametrize(benchmark::State& state) {
  const auto c = scenarios::perturbed_geodesic(0.3, 1.5, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(flow::reparametrize_constant_speed(c));
}
BENCHMARK(BM_Reparametrize)->Arg(201)->Arg(801);

static void BM_FigureEightSolve(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(elastica::figure_eight_solve(0.05));
}
BENCHMARK(BM_FigureEightSolve);

static void BM_SelfIntersections(benchmark::State& state) {
  const auto c = scenarios::clifford_circle(0.0, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(geomcheck::self_intersections(c));
}
BENCHMARK(BM_SelfIntersections)->Arg(256)->Arg(1024);
BENCHMARK_MAIN();
