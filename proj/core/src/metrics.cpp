#include "dcliques/metrics.hpp"

#include <algorithm>
#include <stdexcept>

namespace dcliques {

TraceRow make_trace_row(double epoch, std::vector<double> node_accuracy) {
  if (node_accuracy.empty()) throw std::invalid_argument("trace row: no nodes");
  TraceRow row;
  row.epoch = epoch;
  row.min = node_accuracy[0];
  row.max = node_accuracy[0];
  double total = 0.0;
  for (double acc : node_accuracy) {
    row.min = std::min(row.min, acc);
    row.max = std::max(row.max, acc);
    total += acc;
  }
  row.mean = total / node_accuracy.size();
  row.node_accuracy = std::move(node_accuracy);
  return row;
}

SkewStats skew_stats(const CliqueAssignment& assignment,
                     const std::vector<LabelDistribution>& node_dists,
                     const LabelDistribution& global_dist) {
  SkewStats stats;
  stats.per_clique.reserve(assignment.num_cliques());
  for (const auto& clique : assignment.cliques) {
    stats.per_clique.push_back(skew(clique, node_dists, global_dist));
  }
  if (stats.per_clique.empty()) return stats;
  stats.min = stats.per_clique[0];
  stats.max = stats.per_clique[0];
  double total = 0.0;
  for (double value : stats.per_clique) {
    stats.min = std::min(stats.min, value);
    stats.max = std::max(stats.max, value);
    total += value;
  }
  stats.mean = total / stats.per_clique.size();
  return stats;
}

std::vector<HistogramBin> skew_histogram(const std::vector<double>& skews, int bins) {
  if (bins < 1) throw std::invalid_argument("skew_histogram: need at least one bin");
  const double width = 2.0 / bins;
  std::vector<HistogramBin> histogram(bins);
  for (int b = 0; b < bins; ++b) histogram[b] = {b * width, (b + 1) * width, 0};
  for (double value : skews) {
    int b = std::min(bins - 1, std::max(0, static_cast<int>(value / width)));
    ++histogram[b].count;
  }
  return histogram;
}

CostReport cost_report(const Topology& topology, bool clique_averaging) {
  CostReport report;
  report.edges = topology.num_edges();
  report.average_degree = topology.average_degree();
  report.messages_per_round_per_node = report.average_degree * (clique_averaging ? 2.0 : 1.0);
  return report;
}

}  // namespace dcliques
