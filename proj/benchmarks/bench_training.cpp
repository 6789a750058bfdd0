#include <benchmark/benchmark.h>

#include "dcliques/mixing.hpp"
#include "dcliques/partition.hpp"
#include "dcliques/training.hpp"

namespace {

using namespace dcliques;

struct TrainingFixture {
  Dataset train = synthetic_dataset(10, 500, 50, 2.0, 1);
  Partition partition = partition_shards(train.labels, 100, 2, 2);
  CliqueAssignment cliques =
      greedy_swap(node_distributions(partition, train), 10, 1000, 3);
  Topology topology = build_dcliques_topology(cliques, InterScheme::fully);
  MixingMatrix mixing = metropolis_hastings(topology);
  SoftmaxModel model{10, 50};
};

TrainConfig round_config(bool clique_averaging, int threads) {
  TrainConfig config;
  config.batch_size = 13;
  config.clique_averaging = clique_averaging;
  config.threads = threads;
  return config;
}

void BM_DsgdRound(benchmark::State& state) {
  TrainingFixture fx;
  Simulation sim(fx.train, fx.partition, fx.mixing, std::nullopt, nullptr, fx.model,
                 round_config(false, static_cast<int>(state.range(0))), 7);
  for (auto _ : state) {
    sim.step();
  }
}
BENCHMARK(BM_DsgdRound)->Arg(1)->Arg(2);

void BM_CliqueAvgRound(benchmark::State& state) {
  TrainingFixture fx;
  Simulation sim(fx.train, fx.partition, fx.mixing, fx.cliques, &fx.topology, fx.model,
                 round_config(true, static_cast<int>(state.range(0))), 7);
  for (auto _ : state) {
    sim.step();
  }
}
BENCHMARK(BM_CliqueAvgRound)->Arg(1)->Arg(2);

void BM_Evaluate(benchmark::State& state) {
  TrainingFixture fx;
  Dataset test = synthetic_dataset(10, 100, 50, 2.0, 8, Split::test);
  Simulation sim(fx.train, fx.partition, fx.mixing, std::nullopt, nullptr, fx.model,
                 round_config(false, 2), 7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sim.evaluate(test));
  }
}
BENCHMARK(BM_Evaluate)->Unit(benchmark::kMillisecond);

}  // namespace
