#pragma once

#include <cstdint>
#include <vector>

#include "dcliques/partition.hpp"

namespace dcliques {

/// Disjoint cover of nodes {0..n-1} by cliques of size <= max_size.
struct CliqueAssignment {
  std::vector<std::vector<int>> cliques;  // member ids, each clique sorted ascending
  int max_size = 0;

  int num_cliques() const { return static_cast<int>(cliques.size()); }
  int num_nodes() const;

  // node id -> clique index
  std::vector<int> clique_index(int n) const;

  // Throws unless cliques are disjoint, cover {0..n-1} and respect max_size.
  void check(int n) const;
};

/// L1 distance between the clique's mean label distribution and the global
/// one. Lies in [0, 2]. Throws on an empty clique or mismatched class counts.
double skew(const std::vector<int>& clique, const std::vector<LabelDistribution>& node_dists,
            const LabelDistribution& global_dist);

/// Randomized greedy clique construction: initialize cliques by a uniform
/// shuffle chunked into groups of max_clique_size (the last group may be
/// smaller), then for `steps` iterations pick two cliques at random, enumerate
/// all cross pairs (i, j), and apply one uniformly chosen swap among those
/// that strictly decrease the sum of the two cliques' skews.
///
/// steps == 0 returns the random initialization ("Random Cliques" baseline).
/// If total_skew_trace is non-null it receives steps+1 entries: the total skew
/// over all cliques at initialization and after each step.
CliqueAssignment greedy_swap(const std::vector<LabelDistribution>& node_dists,
                             int max_clique_size, int steps, uint64_t seed,
                             std::vector<double>* total_skew_trace = nullptr);

/// Sequential builder for single-class partitions in which every class sits
/// on exactly n/num_classes nodes: grows the current clique by a random
/// remaining node whose class is not yet present, closing it once all classes
/// are. Every output clique has exactly num_classes members, one per class.
CliqueAssignment greedy_single_class(const std::vector<int>& node_classes, int num_classes,
                                     uint64_t seed);

/// Contiguous chunks {0..M-1}, {M..2M-1}, ... (no randomness). Handy where
/// only clique sizes matter, e.g. edge-count accounting.
CliqueAssignment chunked_cliques(int n, int max_clique_size);

}  // namespace dcliques
