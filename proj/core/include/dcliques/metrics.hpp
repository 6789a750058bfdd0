#pragma once

#include <array>
#include <vector>

#include "dcliques/clique.hpp"
#include "dcliques/topology.hpp"

namespace dcliques {

/// One evaluation point of an experiment.
struct TraceRow {
  double epoch = 0.0;
  std::vector<double> node_accuracy;
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
};

TraceRow make_trace_row(double epoch, std::vector<double> node_accuracy);

struct SkewStats {
  std::vector<double> per_clique;
  double mean = 0.0;
  double min = 0.0;
  double max = 0.0;
};

SkewStats skew_stats(const CliqueAssignment& assignment,
                     const std::vector<LabelDistribution>& node_dists,
                     const LabelDistribution& global_dist);

struct HistogramBin {
  double lo, hi;
  int count;
};

/// Fixed-width bins over [0, 2]; the upper edge of the last bin is inclusive.
std::vector<HistogramBin> skew_histogram(const std::vector<double>& skews, int bins = 40);

struct CostReport {
  int edges = 0;
  double average_degree = 0.0;
  double messages_per_round_per_node = 0.0;
};

/// Messages count directed sends: each undirected edge carries two sends per
/// exchanged object per round, and Clique Averaging exchanges gradients and
/// models separately.
CostReport cost_report(const Topology& topology, bool clique_averaging);

}  // namespace dcliques
