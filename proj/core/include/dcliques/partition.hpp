#pragma once

#include <cstdint>
#include <vector>

#include "dcliques/dataset.hpp"

namespace dcliques {

/// Assignment of training-example indices to nodes.
struct Partition {
  std::vector<std::vector<int>> node_examples;

  int num_nodes() const { return static_cast<int>(node_examples.size()); }
  int total_examples() const;

  // Disjointness always; full coverage of {0..example_count-1} only when
  // require_full_cover is set (shard scheme). Throws on violation.
  void check(int example_count, bool require_full_cover) const;
};

/// Empirical probability vector over classes.
struct LabelDistribution {
  std::vector<double> probs;

  int classes() const { return static_cast<int>(probs.size()); }
  double sum() const;
};

/// McMahan-style shard partitioning: examples stable-sorted by class, split
/// into nodes*shards_per_node contiguous shards (the last `remainder` shards
/// absorb one extra example each), shards dealt to nodes uniformly at random
/// without replacement.
Partition partition_shards(const std::vector<int>& labels, int nodes, int shards_per_node,
                           uint64_t seed);

/// Extreme-skew partitioning: each node receives examples of exactly one
/// class, nodes/num_classes nodes per class, all nodes the same size (each
/// class truncated to the minimum class count, then to a multiple of the
/// per-class node count). Requires nodes divisible by num_classes.
Partition partition_single_class(const std::vector<int>& labels, int num_classes, int nodes,
                                 uint64_t seed);

/// Empirical label frequency of one node's local set. Throws on empty node.
LabelDistribution node_distribution(const Partition& partition, const Dataset& dataset,
                                    int node);

std::vector<LabelDistribution> node_distributions(const Partition& partition,
                                                  const Dataset& dataset);

/// Unweighted mean of the node distributions (coincides with the empirical
/// class frequency when all nodes have equal size).
LabelDistribution global_distribution(const Partition& partition, const Dataset& dataset);

}  // namespace dcliques
