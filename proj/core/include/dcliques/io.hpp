#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dcliques/metrics.hpp"
#include "dcliques/mixing.hpp"
#include "dcliques/partition.hpp"
#include "dcliques/topology.hpp"
#include "dcliques/training.hpp"

namespace dcliques {

// Partition: header `nodes=<n> examples=<total>`, then one line of
// space-separated example indices per node.
void write_partition(std::ostream& out, const Partition& partition);
Partition read_partition(std::istream& in);

// Topology: header `n=<n>`, then `<i> <j> <tag>` per edge.
void write_topology(std::ostream& out, const Topology& topology);
Topology read_topology(std::istream& in);

void write_dot(std::ostream& out, const Topology& topology);

// One line per clique, space-separated node ids.
void write_cliques(std::ostream& out, const CliqueAssignment& assignment);

// Coordinate-list text, `i j w` per nonzero.
void write_mixing(std::ostream& out, const MixingMatrix& matrix);

// CSV: epoch,node,accuracy
void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace);
// CSV: epoch,min,max,mean
void write_summary_csv(std::ostream& out, const std::vector<TraceRow>& trace);
// CSV: bin_lo,bin_hi,count
void write_skew_hist_csv(std::ostream& out, const std::vector<HistogramBin>& bins);
// CSV: edges,avg_degree,messages_per_round_per_node
void write_cost_csv(std::ostream& out, const CostReport& report);
// Flat parameter vectors, one node per line.
void write_checkpoint(std::ostream& out, const std::vector<NodeState>& states);

}  // namespace dcliques
