#include <benchmark/benchmark.h>

#include <random>

#include "inflap/fixtures.hpp"
#include "inflap/graph.hpp"
#include "inflap/inf_spectral.hpp"
#include "inflap/operators.hpp"
#include "inflap/p_spectral.hpp"
#include "inflap/packing.hpp"

namespace {

// Ladder graph with n interior rungs, boundary at both rails' ends.
inflap::Graph ladder(int n) {
  inflap::GraphData data;
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> digit(1, 9);
  for (int i = 0; i < n; ++i) {
    data.nodes.push_back({"a" + std::to_string(i), false});
    data.nodes.push_back({"c" + std::to_string(i), false});
  }
  data.nodes.push_back({"bL", true});
  data.nodes.push_back({"bR", true});
  auto w = [&] { return static_cast<double>(digit(rng)) / digit(rng); };
  for (int i = 0; i + 1 < n; ++i) {
    data.edges.push_back({"a" + std::to_string(i), "a" + std::to_string(i + 1), w()});
    data.edges.push_back({"c" + std::to_string(i), "c" + std::to_string(i + 1), w()});
  }
  for (int i = 0; i < n; ++i)
    data.edges.push_back({"a" + std::to_string(i), "c" + std::to_string(i), w()});
  data.edges.push_back({"bL", "a0", w()});
  data.edges.push_back({"bR", "c" + std::to_string(n - 1), w()});
  return inflap::validate_graph(data);
}

void BM_AllPairsDistances(benchmark::State& state) {
  for (auto _ : state) {
    auto g = ladder(static_cast<int>(state.range(0)));
    g.precompute_distances();
    benchmark::DoNotOptimize(g.distance(0, g.node_count() - 1));
  }
}
BENCHMARK(BM_AllPairsDistances)->Arg(8)->Arg(32)->Arg(128);

void BM_PackingRadius(benchmark::State& state) {
  auto g = ladder(static_cast<int>(state.range(0)));
  g.precompute_distances();
  for (auto _ : state) {
    auto result = inflap::packing_radius(g, 3);
    benchmark::DoNotOptimize(result.radius);
  }
}
BENCHMARK(BM_PackingRadius)->Arg(6)->Arg(10);

void BM_DeltaP(benchmark::State& state) {
  auto g = ladder(64);
  auto f = g.boundary_distance_function();
  for (auto _ : state) {
    auto lap = inflap::delta_p(g, f, static_cast<double>(state.range(0)));
    benchmark::DoNotOptimize(lap[0]);
  }
}
BENCHMARK(BM_DeltaP)->Arg(2)->Arg(8)->Arg(32);

void BM_SweepFixture(benchmark::State& state) {
  auto g = inflap::validate_graph(inflap::fixture("g3").graph);
  for (auto _ : state) {
    auto records = inflap::p_sweep(g, inflap::doubling_schedule(static_cast<double>(state.range(0))),
                                   inflap::SweepMode::first);
    benchmark::DoNotOptimize(records.back().lambda_root);
  }
}
BENCHMARK(BM_SweepFixture)->Arg(16)->Arg(128);

void BM_CheckLimit(benchmark::State& state) {
  auto g = ladder(static_cast<int>(state.range(0)));
  auto f = g.boundary_distance_function();
  for (auto _ : state) {
    auto report = inflap::check_limit_equation(g, f, 2.0);
    benchmark::DoNotOptimize(report.overall);
  }
}
BENCHMARK(BM_CheckLimit)->Arg(32)->Arg(128);

}  // namespace

BENCHMARK_MAIN();
