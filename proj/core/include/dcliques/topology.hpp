#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dcliques/clique.hpp"

namespace dcliques {

enum class EdgeTag { intra, inter, baseline };

std::string to_string(EdgeTag tag);

struct Edge {
  int u, v;  // u < v
  EdgeTag tag;
};

/// Undirected simple graph over nodes {0..n-1} with per-edge provenance tags.
class Topology {
 public:
  explicit Topology(int n);

  int num_nodes() const { return n_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }

  // Returns false (and leaves the graph unchanged) on duplicates; throws on
  // self-loops or out-of-range endpoints.
  bool add_edge(int u, int v, EdgeTag tag);
  bool has_edge(int u, int v) const;
  bool remove_edge(int u, int v);

  std::vector<int> degrees() const;
  double average_degree() const;

  // Sorted neighbor lists.
  std::vector<std::vector<int>> adjacency() const;

 private:
  int n_;
  std::vector<Edge> edges_;
  std::set<std::pair<int, int>> index_;
};

enum class InterScheme { ring, fractal, smallworld, fully };

InterScheme inter_scheme_from_string(const std::string& name);
std::string to_string(InterScheme scheme);

/// Complete graph over each clique, tagged intra.
std::vector<Edge> intra_edges(const CliqueAssignment& assignment);

/// One edge between consecutive cliques on a ring (a single edge for two
/// cliques, none for one). Endpoints picked by the least-edges rule.
std::vector<Edge> inter_ring(const CliqueAssignment& assignment);

/// Recursive grouping: groups of up to `max_size` units are connected
/// pairwise with one edge per unit pair, then merge into one unit for the
/// next level. Partial final groups are connected like full ones.
std::vector<Edge> inter_fractal(const CliqueAssignment& assignment);

/// Small-world finger edges over a ring of cliques: for each clique, for each
/// power-of-two offset, `neighborhood` edges clockwise and counter-clockwise
/// to the least-edges node of the target clique. Offsets that wrap onto the
/// source clique are skipped; duplicate node pairs collapse.
std::vector<Edge> inter_smallworld(const CliqueAssignment& assignment, int neighborhood = 2);

/// One edge per unordered clique pair.
std::vector<Edge> inter_fully(const CliqueAssignment& assignment);

std::vector<Edge> inter_edges(const CliqueAssignment& assignment, InterScheme scheme,
                              int neighborhood = 2);

/// Intra edges plus the chosen inter-clique scheme.
Topology build_dcliques_topology(const CliqueAssignment& assignment, InterScheme scheme,
                                 int neighborhood = 2);

Topology baseline_ring(int n);
Topology baseline_grid(int n);
Topology baseline_full(int n);

/// Random regular graph via the pairing model with per-round repair of
/// colliding stubs; regenerated from a derived seed if disconnected.
Topology baseline_random_regular(int n, int degree, uint64_t seed);

/// Removes `per_clique` intra-tagged edges uniformly at random within each
/// clique; inter edges untouched. Throws if any clique has fewer intra edges.
Topology remove_intra_edges(const Topology& topology, const CliqueAssignment& assignment,
                            int per_clique, uint64_t seed);

struct GraphStats {
  int edge_count = 0;
  double average_degree = 0.0;
  bool connected = false;
  std::optional<int> diameter;  // nullopt = infinite (disconnected)
};

GraphStats graph_stats(const Topology& topology);

}  // namespace dcliques
