#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "dcliques/partition.hpp"

using namespace dcliques;

namespace {

std::vector<int> balanced_labels(int classes, int per_class) {
  std::vector<int> labels;
  for (int c = 1; c <= classes; ++c) labels.insert(labels.end(), per_class, c);
  return labels;
}

// Class counts with the same unevenness as the MNIST training set, scaled to
// 50k examples.
const std::vector<int> kMnistLikeCounts = {4936, 5618, 4965, 5109, 4868,
                                           4518, 4932, 5221, 4876, 4957};

std::vector<int> mnist_like_labels() {
  std::vector<int> labels;
  for (int c = 0; c < 10; ++c) labels.insert(labels.end(), kMnistLikeCounts[c], c + 1);
  // Interleave a little so original order does not equal class order.
  std::reverse(labels.begin(), labels.begin() + 20000);
  return labels;
}

Dataset labels_only_dataset(std::vector<int> labels, int classes) {
  Dataset data;
  data.num_classes = classes;
  data.features = FeatureMatrix::Zero(labels.size(), 1);
  data.labels = std::move(labels);
  return data;
}

}  // namespace

TEST_CASE("shard partitioning: 50k examples over 100 nodes, 2 shards each") {
  auto labels = balanced_labels(10, 5000);
  Partition partition = partition_shards(labels, 100, 2, 17);

  CHECK(partition.num_nodes() == 100);
  for (const auto& list : partition.node_examples) CHECK(list.size() == 500);  // 2 x 250
  CHECK_NOTHROW(partition.check(50000, true));
}

TEST_CASE("shard partitioning: degenerate single node keeps class-sorted order") {
  std::vector<int> labels = {2, 1, 2, 1, 3};
  Partition partition = partition_shards(labels, 1, 1, 5);
  REQUIRE(partition.num_nodes() == 1);
  const auto& list = partition.node_examples[0];
  REQUIRE(list.size() == 5);
  // Stable sort by class: indices 1,3 (class 1), 0,2 (class 2), 4 (class 3).
  CHECK(list == std::vector<int>{1, 3, 0, 2, 4});
}

TEST_CASE("shard partitioning properties: disjoint cover and near-equal shards") {
  std::mt19937_64 seeds(404);
  for (int trial = 0; trial < 30; ++trial) {
    int classes = 2 + trial % 5;
    int per_class = 50 + (trial * 13) % 160;
    auto labels = balanced_labels(classes, per_class);
    int count = static_cast<int>(labels.size());
    int nodes = 1 + static_cast<int>(seeds() % 20);
    int per_node = 1 + static_cast<int>(seeds() % 3);
    if (nodes * per_node > count) continue;

    Partition partition = partition_shards(labels, nodes, per_node, seeds());
    CHECK_NOTHROW(partition.check(count, true));

    // Every node holds per_node shards whose sizes differ from
    // count/(nodes*per_node) by at most 1 each.
    int shards = nodes * per_node;
    int base = count / shards;
    for (const auto& list : partition.node_examples) {
      CHECK(static_cast<int>(list.size()) >= per_node * base);
      CHECK(static_cast<int>(list.size()) <= per_node * (base + 1));
    }
  }
}

TEST_CASE("shard partitioning rejects more shards than examples") {
  auto labels = balanced_labels(2, 5);
  CHECK_THROWS_WITH_AS(partition_shards(labels, 11, 1, 1), "more shards than examples",
                       std::invalid_argument);
  CHECK_THROWS_AS(partition_shards({}, 1, 1, 1), std::invalid_argument);
}

TEST_CASE("shard partitioning on MNIST-like counts: at most 4 classes per node, mode 2") {
  auto labels = mnist_like_labels();
  Dataset data = labels_only_dataset(labels, 10);

  for (uint64_t seed = 0; seed < 100; ++seed) {
    Partition partition = partition_shards(labels, 100, 2, seed);
    std::map<int, int> histogram;  // distinct-class count -> node count
    for (int node = 0; node < 100; ++node) {
      std::set<int> classes;
      for (int idx : partition.node_examples[node]) classes.insert(labels[idx]);
      ++histogram[static_cast<int>(classes.size())];
    }
    int max_distinct = histogram.rbegin()->first;
    CHECK(max_distinct <= 4);
    int mode = std::max_element(histogram.begin(), histogram.end(), [](auto& a, auto& b) {
                 return a.second < b.second;
               })->first;
    CHECK(mode == 2);
  }
}

TEST_CASE("single-class partitioning: counting and defining property") {
  auto labels = balanced_labels(10, 1000);
  Partition partition = partition_single_class(labels, 10, 100, 3);

  CHECK(partition.num_nodes() == 100);
  std::map<int, int> nodes_per_class;
  for (int node = 0; node < 100; ++node) {
    const auto& list = partition.node_examples[node];
    CHECK(list.size() == 100);  // class count * L / n = 1000*10/100
    std::set<int> classes;
    for (int idx : list) classes.insert(labels[idx]);
    REQUIRE(classes.size() == 1);  // defining property
    ++nodes_per_class[*classes.begin()];
  }
  for (const auto& [cls, count] : nodes_per_class) CHECK(count == 10);
  CHECK_NOTHROW(partition.check(10000, false));
}

TEST_CASE("single-class partitioning: one node per class when n == L") {
  auto labels = balanced_labels(10, 30);
  Partition partition = partition_single_class(labels, 10, 10, 1);
  CHECK(partition.num_nodes() == 10);
  for (const auto& list : partition.node_examples) CHECK(list.size() == 30);
}

TEST_CASE("single-class partitioning errors") {
  auto labels = balanced_labels(10, 30);
  CHECK_THROWS_AS(partition_single_class(labels, 10, 15, 1), std::invalid_argument);
  std::vector<int> missing = balanced_labels(9, 30);  // class 10 has zero examples
  CHECK_THROWS_AS(partition_single_class(missing, 10, 10, 1), std::invalid_argument);
}

TEST_CASE("node distribution: direct frequencies") {
  Dataset data = labels_only_dataset({1, 1, 2, 2}, 2);
  Partition partition;
  partition.node_examples = {{0, 1, 2, 3}};
  LabelDistribution dist = node_distribution(partition, data, 0);
  CHECK(dist.probs == std::vector<double>{0.5, 0.5});

  Dataset ten = labels_only_dataset({7, 7, 7}, 10);
  Partition single;
  single.node_examples = {{0, 1, 2}};
  LabelDistribution one_hot = node_distribution(single, ten, 0);
  for (int l = 0; l < 10; ++l) CHECK(one_hot.probs[l] == (l == 6 ? 1.0 : 0.0));

  Partition empty;
  empty.node_examples = {{}};
  CHECK_THROWS_AS(node_distribution(empty, data, 0), std::invalid_argument);
}

TEST_CASE("node distributions sum to one and match a brute-force tally") {
  auto labels = mnist_like_labels();
  Dataset data = labels_only_dataset(labels, 10);
  Partition partition = partition_shards(labels, 100, 2, 11);

  bool found_three_class_node = false;
  for (int node = 0; node < 100; ++node) {
    LabelDistribution dist = node_distribution(partition, data, node);
    CHECK(std::abs(dist.sum() - 1.0) <= 1e-9);

    std::vector<int> tally(10, 0);
    for (int idx : partition.node_examples[node]) ++tally[labels[idx] - 1];
    int nonzero = 0;
    for (int l = 0; l < 10; ++l) {
      CHECK(dist.probs[l] ==
            doctest::Approx(double(tally[l]) / partition.node_examples[node].size()));
      nonzero += tally[l] > 0;
    }
    // A 2-shard node whose shards both cross a class boundary (or share one
    // class) has 3 nonzero entries.
    if (nonzero == 3) found_three_class_node = true;
  }
  CHECK(found_three_class_node);
}

TEST_CASE("global distribution: means of node distributions") {
  Dataset data = labels_only_dataset({1, 2, 1, 2}, 2);
  Partition partition;
  partition.node_examples = {{0, 1}, {2, 3}};  // both nodes (0.5, 0.5)
  LabelDistribution global = global_distribution(partition, data);
  CHECK(global.probs[0] == doctest::Approx(0.5));
  CHECK(global.probs[1] == doctest::Approx(0.5));

  Partition split;
  split.node_examples = {{0, 2}, {1, 3}};  // (1,0) and (0,1)
  global = global_distribution(split, data);
  CHECK(global.probs[0] == doctest::Approx(0.5));
  CHECK(global.probs[1] == doctest::Approx(0.5));
}

TEST_CASE("global distribution equals empirical frequency under equal node sizes") {
  auto labels = balanced_labels(5, 200);
  Dataset data = labels_only_dataset(labels, 5);
  Partition partition = partition_shards(labels, 20, 2, 23);

  LabelDistribution global = global_distribution(partition, data);
  std::vector<int> tally(5, 0);
  for (int label : labels) ++tally[label - 1];
  for (int l = 0; l < 5; ++l) {
    CHECK(global.probs[l] == doctest::Approx(double(tally[l]) / labels.size()).epsilon(1e-12));
  }
}

TEST_CASE("global distribution of a balanced single-class partition is uniform") {
  auto labels = balanced_labels(10, 100);
  Dataset data = labels_only_dataset(labels, 10);
  Partition partition = partition_single_class(labels, 10, 20, 9);
  LabelDistribution global = global_distribution(partition, data);
  for (int l = 0; l < 10; ++l) CHECK(std::abs(global.probs[l] - 0.1) <= 1e-12);
}
