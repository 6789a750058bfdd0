#include <benchmark/benchmark.h>

#include "dcliques/clique.hpp"
#include "dcliques/mixing.hpp"
#include "dcliques/topology.hpp"

namespace {

using namespace dcliques;

std::vector<LabelDistribution> one_class_per_node(int n, int classes) {
  std::vector<LabelDistribution> dists;
  for (int i = 0; i < n; ++i) {
    LabelDistribution d;
    d.probs.assign(classes, 0.0);
    d.probs[i % classes] = 1.0;
    dists.push_back(d);
  }
  return dists;
}

void BM_GreedySwap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  auto dists = one_class_per_node(n, 10);
  uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(greedy_swap(dists, 10, 1000, seed++));
  }
}
BENCHMARK(BM_GreedySwap)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

void BM_InterScheme(benchmark::State& state) {
  const auto scheme = static_cast<InterScheme>(state.range(0));
  CliqueAssignment cliques = chunked_cliques(1000, 10);
  for (auto _ : state) {
    benchmark::DoNotOptimize(inter_edges(cliques, scheme));
  }
}
BENCHMARK(BM_InterScheme)
    ->Arg(static_cast<int>(InterScheme::ring))
    ->Arg(static_cast<int>(InterScheme::fractal))
    ->Arg(static_cast<int>(InterScheme::smallworld))
    ->Arg(static_cast<int>(InterScheme::fully));

void BM_MetropolisHastings(benchmark::State& state) {
  Topology topology =
      build_dcliques_topology(chunked_cliques(static_cast<int>(state.range(0)), 10),
                              InterScheme::fully);
  for (auto _ : state) {
    benchmark::DoNotOptimize(metropolis_hastings(topology));
  }
}
BENCHMARK(BM_MetropolisHastings)->Arg(100)->Arg(1000);

void BM_GraphStatsDiameter(benchmark::State& state) {
  Topology topology = build_dcliques_topology(chunked_cliques(1000, 10), InterScheme::fully);
  for (auto _ : state) {
    benchmark::DoNotOptimize(graph_stats(topology));
  }
}
BENCHMARK(BM_GraphStatsDiameter)->Unit(benchmark::kMillisecond);

void BM_RandomRegular(benchmark::State& state) {
  uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(baseline_random_regular(100, 10, seed++));
  }
}
BENCHMARK(BM_RandomRegular);

}  // namespace
