#include "dcliques/partition.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace dcliques {

int Partition::total_examples() const {
  int total = 0;
  for (const auto& list : node_examples) total += static_cast<int>(list.size());
  return total;
}

void Partition::check(int example_count, bool require_full_cover) const {
  std::vector<char> seen(example_count, 0);
  for (const auto& list : node_examples) {
    for (int idx : list) {
      if (idx < 0 || idx >= example_count) {
        throw std::runtime_error("partition: example index out of range");
      }
      if (seen[idx]) throw std::runtime_error("partition: example assigned twice");
      seen[idx] = 1;
    }
  }
  if (require_full_cover) {
    for (int i = 0; i < example_count; ++i) {
      if (!seen[i]) throw std::runtime_error("partition: example " + std::to_string(i) +
                                             " unassigned");
    }
  }
}

double LabelDistribution::sum() const {
  double total = 0.0;
  for (double p : probs) total += p;
  return total;
}

Partition partition_shards(const std::vector<int>& labels, int nodes, int shards_per_node,
                           uint64_t seed) {
  if (labels.empty()) throw std::invalid_argument("partition_shards: empty labels");
  if (nodes < 1 || shards_per_node < 1) {
    throw std::invalid_argument("partition_shards: nodes and shards_per_node must be positive");
  }
  const int count = static_cast<int>(labels.size());
  const long long shard_count = static_cast<long long>(nodes) * shards_per_node;
  if (shard_count > count) throw std::invalid_argument("more shards than examples");
  const int shards = static_cast<int>(shard_count);

  std::vector<int> by_class(count);
  std::iota(by_class.begin(), by_class.end(), 0);
  std::stable_sort(by_class.begin(), by_class.end(),
                   [&](int a, int b) { return labels[a] < labels[b]; });

  // Contiguous shards over the class-sorted order; the last `remainder`
  // shards take one extra example each.
  const int base = count / shards;
  const int remainder = count % shards;
  std::vector<std::pair<int, int>> shard_bounds(shards);  // [begin, end)
  int pos = 0;
  for (int s = 0; s < shards; ++s) {
    int size = base + (s >= shards - remainder ? 1 : 0);
    shard_bounds[s] = {pos, pos + size};
    pos += size;
  }

  std::vector<int> shard_order(shards);
  std::iota(shard_order.begin(), shard_order.end(), 0);
  std::mt19937_64 rng(seed);
  std::shuffle(shard_order.begin(), shard_order.end(), rng);

  Partition partition;
  partition.node_examples.resize(nodes);
  for (int node = 0; node < nodes; ++node) {
    auto& list = partition.node_examples[node];
    for (int k = 0; k < shards_per_node; ++k) {
      auto [begin, end] = shard_bounds[shard_order[node * shards_per_node + k]];
      for (int i = begin; i < end; ++i) list.push_back(by_class[i]);
    }
  }
  return partition;
}

Partition partition_single_class(const std::vector<int>& labels, int num_classes, int nodes,
                                 uint64_t seed) {
  if (num_classes < 1) throw std::invalid_argument("partition_single_class: bad class count");
  if (nodes < 1 || nodes % num_classes != 0) {
    throw std::invalid_argument("partition_single_class: nodes not divisible by class count");
  }

  std::vector<std::vector<int>> by_class(num_classes);
  for (size_t i = 0; i < labels.size(); ++i) {
    int label = labels[i];
    if (label < 1 || label > num_classes) {
      throw std::invalid_argument("partition_single_class: label out of range");
    }
    by_class[label - 1].push_back(static_cast<int>(i));
  }

  size_t min_count = SIZE_MAX;
  for (const auto& list : by_class) min_count = std::min(min_count, list.size());
  if (min_count == 0) throw std::invalid_argument("partition_single_class: class with zero examples");

  const int nodes_per_class = nodes / num_classes;
  const int per_node = static_cast<int>(min_count) / nodes_per_class;
  if (per_node == 0) {
    throw std::invalid_argument("partition_single_class: not enough examples per class");
  }

  std::mt19937_64 rng(seed);
  Partition partition;
  partition.node_examples.resize(nodes);
  for (int c = 0; c < num_classes; ++c) {
    std::shuffle(by_class[c].begin(), by_class[c].end(), rng);
    for (int k = 0; k < nodes_per_class; ++k) {
      int node = c * nodes_per_class + k;
      auto& list = partition.node_examples[node];
      list.assign(by_class[c].begin() + static_cast<long>(k) * per_node,
                  by_class[c].begin() + static_cast<long>(k + 1) * per_node);
    }
  }
  return partition;
}

LabelDistribution node_distribution(const Partition& partition, const Dataset& dataset,
                                    int node) {
  if (node < 0 || node >= partition.num_nodes()) {
    throw std::invalid_argument("node_distribution: node id out of range");
  }
  const auto& list = partition.node_examples[node];
  if (list.empty()) throw std::invalid_argument("node_distribution: empty node");

  LabelDistribution dist;
  dist.probs.assign(dataset.num_classes, 0.0);
  for (int idx : list) dist.probs[dataset.labels[idx] - 1] += 1.0;
  for (double& p : dist.probs) p /= static_cast<double>(list.size());
  return dist;
}

std::vector<LabelDistribution> node_distributions(const Partition& partition,
                                                  const Dataset& dataset) {
  std::vector<LabelDistribution> dists;
  dists.reserve(partition.num_nodes());
  for (int node = 0; node < partition.num_nodes(); ++node) {
    dists.push_back(node_distribution(partition, dataset, node));
  }
  return dists;
}

LabelDistribution global_distribution(const Partition& partition, const Dataset& dataset) {
  LabelDistribution global;
  global.probs.assign(dataset.num_classes, 0.0);
  for (int node = 0; node < partition.num_nodes(); ++node) {
    LabelDistribution dist = node_distribution(partition, dataset, node);
    for (int l = 0; l < dataset.num_classes; ++l) global.probs[l] += dist.probs[l];
  }
  for (double& p : global.probs) p /= static_cast<double>(partition.num_nodes());
  return global;
}

}  // namespace dcliques
