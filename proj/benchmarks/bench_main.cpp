#include <benchmark/benchmark.h>

#include <cmath>

#include "coopsim/dbpc.hpp"
#include "coopsim/epidemic.hpp"
#include "coopsim/rgg.hpp"
#include "coopsim/spatial_index.hpp"

using namespace coopsim;

namespace {

void BM_build_rgg(benchmark::State& state) {
  const double n = static_cast<double>(state.range(0));
  RandomStream rng(1);
  for (auto _ : state) {
    GeometricGraph g = build_rgg(SpaceSpec::cube(1), n, 0.7, rng);
    benchmark::DoNotOptimize(g.vertex_count());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_build_rgg)->Arg(10'000)->Arg(100'000)->Unit(benchmark::kMillisecond);

void BM_neighbor_query(benchmark::State& state) {
  RandomStream rng(2);
  const SpaceSpec space = SpaceSpec::cube(static_cast<int>(state.range(0)));
  const PointSet ps = sample_point_set(space, 100'000, rng);
  const double radius = 0.5 * std::pow(1e5, (0.7 - 1.0) / static_cast<double>(state.range(0)));
  const GridIndex index = build_index(ps, radius);
  std::uint32_t id = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.count_within(id, radius));
    id = (id + 7919) % static_cast<std::uint32_t>(ps.size());
  }
}
BENCHMARK(BM_neighbor_query)->Arg(1)->Arg(2)->Arg(3);

void BM_epidemic_run(benchmark::State& state) {
  RandomStream rng(3);
  const GeometricGraph g = build_rgg(SpaceSpec::cube(1), 1e5, 0.7, rng);
  EpidemicParams params;
  params.parasites_per_infection = static_cast<std::uint32_t>(state.range(0));
  std::uint64_t hosts = 0;
  for (auto _ : state) {
    EpidemicState s = init_epidemic(g, params);
    const RunResult r = run_to_absorption(g, s, params, DestinationTape(rng()));
    hosts += r.reports.back().cumulative;
  }
  state.counters["hosts_per_run"] = benchmark::Counter(static_cast<double>(hosts), benchmark::Counter::kAvgIterations);
}
BENCHMARK(BM_epidemic_run)->Arg(112)->Arg(647)->Unit(benchmark::kMillisecond);

void BM_dbpc_survival(benchmark::State& state) {
  SurvivalOptions o;
  o.threshold = 100'000;
  o.replicates = 1000;
  for (auto _ : state) benchmark::DoNotOptimize(estimate_survival(poisson_dbpc(2.0), o, RandomStream(4)).pi_hat);
  state.SetItemsProcessed(state.iterations() * 1000);
}
BENCHMARK(BM_dbpc_survival)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
