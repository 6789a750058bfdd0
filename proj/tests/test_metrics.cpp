#include <doctest.h>

#include <cmath>
#include <vector>

#include "dcliques/metrics.hpp"

using namespace dcliques;

namespace {

LabelDistribution one_hot(int classes, int hot) {
  LabelDistribution dist;
  dist.probs.assign(classes, 0.0);
  dist.probs[hot] = 1.0;
  return dist;
}

LabelDistribution uniform(int classes) {
  LabelDistribution dist;
  dist.probs.assign(classes, 1.0 / classes);
  return dist;
}

std::vector<LabelDistribution> single_class_nodes(int n, int classes) {
  std::vector<LabelDistribution> dists;
  for (int i = 0; i < n; ++i) dists.push_back(one_hot(classes, i % classes));
  return dists;
}

}  // namespace

TEST_CASE("trace rows aggregate min, max and mean") {
  TraceRow row = make_trace_row(1.5, {0.2, 0.8, 0.5});
  CHECK(row.min == 0.2);
  CHECK(row.max == 0.8);
  CHECK(row.mean == doctest::Approx(0.5));
  CHECK(row.min <= row.mean);
  CHECK(row.mean <= row.max);
  CHECK_THROWS_AS(make_trace_row(0.0, {}), std::invalid_argument);
}

TEST_CASE("skew stats: ideal assignments score zero") {
  auto dists = single_class_nodes(100, 10);
  LabelDistribution global = uniform(10);

  // Node i holds class i % 10, so consecutive blocks of ten hold one node of
  // every class.
  CliqueAssignment ideal = chunked_cliques(100, 10);
  SkewStats stats = skew_stats(ideal, dists, global);
  CHECK(stats.mean <= 1e-12);
  CHECK(stats.max <= 1e-12);
  REQUIRE(stats.per_clique.size() == 10);

  // One clique holding every node also has zero skew.
  CliqueAssignment everyone = chunked_cliques(100, 100);
  stats = skew_stats(everyone, dists, global);
  CHECK(stats.max <= 1e-12);
}

TEST_CASE("random cliques on a single-class partition have high skew") {
  auto dists = single_class_nodes(100, 10);
  LabelDistribution global = uniform(10);
  int high = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    CliqueAssignment random = greedy_swap(dists, 10, 0, seed);
    if (skew_stats(random, dists, global).mean > 0.5) ++high;
  }
  CHECK(high >= 95);
}

TEST_CASE("greedy swap beats random cliques on mean skew, paired by seed") {
  auto dists = single_class_nodes(100, 10);
  LabelDistribution global = uniform(10);
  int violations = 0;
  for (uint64_t seed = 0; seed < 100; ++seed) {
    double random_mean = skew_stats(greedy_swap(dists, 10, 0, seed), dists, global).mean;
    double greedy_mean = skew_stats(greedy_swap(dists, 10, 1000, seed), dists, global).mean;
    if (greedy_mean > random_mean) ++violations;
  }
  CHECK(violations <= 2);
}

TEST_CASE("skew histogram bins cover [0,2] with the top edge inclusive") {
  auto bins = skew_histogram({0.0, 0.049, 1.99, 2.0}, 40);
  REQUIRE(bins.size() == 40);
  CHECK(bins[0].lo == 0.0);
  CHECK(bins[0].count == 2);
  CHECK(bins[39].hi == doctest::Approx(2.0));
  CHECK(bins[39].count == 2);
  int total = 0;
  for (const auto& bin : bins) total += bin.count;
  CHECK(total == 4);
}

TEST_CASE("cost report: thousand-node golden values") {
  Topology dcliques = build_dcliques_topology(chunked_cliques(1000, 10), InterScheme::fully);
  CostReport with_ca = cost_report(dcliques, true);
  CHECK(with_ca.average_degree == 18.9);
  CHECK(with_ca.messages_per_round_per_node == 37.8);

  CostReport full = cost_report(baseline_full(1000), false);
  CHECK(full.messages_per_round_per_node == 999.0);

  CostReport empty = cost_report(Topology(4), false);
  CHECK(empty.messages_per_round_per_node == 0.0);
}

TEST_CASE("clique averaging always doubles the message count") {
  std::vector<Topology> topologies;
  topologies.push_back(baseline_ring(12));
  topologies.push_back(baseline_grid(12));
  topologies.push_back(build_dcliques_topology(chunked_cliques(30, 5), InterScheme::smallworld));
  topologies.push_back(Topology(3));
  for (const Topology& topology : topologies) {
    CHECK(cost_report(topology, true).messages_per_round_per_node ==
          2.0 * cost_report(topology, false).messages_per_round_per_node);
  }
}
