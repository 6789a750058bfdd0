#include "dcliques/io.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace dcliques {

namespace {

// First line that is not blank or a '#' comment (e.g. a timestamp header).
bool next_content_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos || line[begin] == '#') continue;
    return true;
  }
  return false;
}

// Shortest round-trip-exact formatting for doubles.
std::string fmt(double value) {
  char buffer[32];
  snprintf(buffer, sizeof(buffer), "%.17g", value);
  double parsed = strtod(buffer, nullptr);
  if (parsed == value) {
    for (int precision = 1; precision < 17; ++precision) {
      char shorter[32];
      snprintf(shorter, sizeof(shorter), "%.*g", precision, value);
      if (strtod(shorter, nullptr) == value) return shorter;
    }
  }
  return buffer;
}

}  // namespace

void write_partition(std::ostream& out, const Partition& partition) {
  out << "nodes=" << partition.num_nodes() << " examples=" << partition.total_examples() << "\n";
  for (const auto& list : partition.node_examples) {
    for (size_t k = 0; k < list.size(); ++k) out << (k ? " " : "") << list[k];
    out << "\n";
  }
}

Partition read_partition(std::istream& in) {
  std::string header;
  if (!next_content_line(in, header)) throw std::runtime_error("partition: missing header");
  int nodes = 0, examples = 0;
  if (sscanf(header.c_str(), "nodes=%d examples=%d", &nodes, &examples) != 2 || nodes < 0) {
    throw std::runtime_error("partition: bad header '" + header + "'");
  }
  Partition partition;
  partition.node_examples.resize(nodes);
  std::string line;
  for (int node = 0; node < nodes; ++node) {
    if (!std::getline(in, line)) throw std::runtime_error("partition: truncated file");
    std::istringstream fields(line);
    int idx;
    while (fields >> idx) partition.node_examples[node].push_back(idx);
  }
  if (partition.total_examples() != examples) {
    throw std::runtime_error("partition: example count does not match header");
  }
  return partition;
}

void write_topology(std::ostream& out, const Topology& topology) {
  out << "n=" << topology.num_nodes() << "\n";
  for (const Edge& e : topology.edges()) {
    out << e.u << " " << e.v << " " << to_string(e.tag) << "\n";
  }
}

Topology read_topology(std::istream& in) {
  std::string header;
  if (!next_content_line(in, header)) throw std::runtime_error("topology: missing header");
  int n = 0;
  if (sscanf(header.c_str(), "n=%d", &n) != 1 || n < 0) {
    throw std::runtime_error("topology: bad header '" + header + "'");
  }
  Topology topology(n);
  std::string line;
  while (next_content_line(in, line)) {
    std::istringstream fields(line);
    int u, v;
    std::string tag;
    if (!(fields >> u >> v >> tag)) throw std::runtime_error("topology: bad edge line '" + line + "'");
    EdgeTag parsed;
    if (tag == "intra") parsed = EdgeTag::intra;
    else if (tag == "inter") parsed = EdgeTag::inter;
    else if (tag == "baseline") parsed = EdgeTag::baseline;
    else throw std::runtime_error("topology: unknown edge tag '" + tag + "'");
    topology.add_edge(u, v, parsed);
  }
  return topology;
}

void write_dot(std::ostream& out, const Topology& topology) {
  out << "graph topology {\n";
  out << "  node [shape=circle];\n";
  for (const Edge& e : topology.edges()) {
    out << "  " << e.u << " -- " << e.v;
    if (e.tag == EdgeTag::inter) out << " [style=dashed]";
    out << ";\n";
  }
  out << "}\n";
}

void write_cliques(std::ostream& out, const CliqueAssignment& assignment) {
  for (const auto& clique : assignment.cliques) {
    for (size_t k = 0; k < clique.size(); ++k) out << (k ? " " : "") << clique[k];
    out << "\n";
  }
}

void write_mixing(std::ostream& out, const MixingMatrix& matrix) {
  for (int i = 0; i < matrix.size(); ++i) {
    for (const auto& [j, w] : matrix.row_entries(i)) {
      out << i << " " << j << " " << fmt(w) << "\n";
    }
  }
}

void write_trace_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "epoch,node,accuracy\n";
  for (const TraceRow& row : trace) {
    for (size_t node = 0; node < row.node_accuracy.size(); ++node) {
      out << fmt(row.epoch) << "," << node << "," << fmt(row.node_accuracy[node]) << "\n";
    }
  }
}

void write_summary_csv(std::ostream& out, const std::vector<TraceRow>& trace) {
  out << "epoch,min,max,mean\n";
  for (const TraceRow& row : trace) {
    out << fmt(row.epoch) << "," << fmt(row.min) << "," << fmt(row.max) << "," << fmt(row.mean)
        << "\n";
  }
}

void write_skew_hist_csv(std::ostream& out, const std::vector<HistogramBin>& bins) {
  out << "bin_lo,bin_hi,count\n";
  for (const HistogramBin& bin : bins) {
    out << fmt(bin.lo) << "," << fmt(bin.hi) << "," << bin.count << "\n";
  }
}

void write_cost_csv(std::ostream& out, const CostReport& report) {
  out << "edges,avg_degree,messages_per_round_per_node\n";
  out << report.edges << "," << fmt(report.average_degree) << ","
      << fmt(report.messages_per_round_per_node) << "\n";
}

void write_checkpoint(std::ostream& out, const std::vector<NodeState>& states) {
  for (const NodeState& state : states) {
    for (int k = 0; k < state.params.size(); ++k) {
      out << (k ? " " : "") << fmt(state.params[k]);
    }
    out << "\n";
  }
}

}  // namespace dcliques
