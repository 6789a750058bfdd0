#include "dcliques/topology.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numeric>
#include <random>
#include <stdexcept>

#include "dcliques/seeds.hpp"

namespace dcliques {

std::string to_string(EdgeTag tag) {
  switch (tag) {
    case EdgeTag::intra: return "intra";
    case EdgeTag::inter: return "inter";
    case EdgeTag::baseline: return "baseline";
  }
  return "?";
}

Topology::Topology(int n) : n_(n) {
  if (n < 0) throw std::invalid_argument("topology: negative node count");
}

bool Topology::add_edge(int u, int v, EdgeTag tag) {
  if (u == v) throw std::invalid_argument("topology: self-loop");
  if (u < 0 || v < 0 || u >= n_ || v >= n_) {
    throw std::invalid_argument("topology: endpoint out of range");
  }
  if (u > v) std::swap(u, v);
  if (!index_.insert({u, v}).second) return false;
  edges_.push_back({u, v, tag});
  return true;
}

bool Topology::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return index_.count({u, v}) > 0;
}

bool Topology::remove_edge(int u, int v) {
  if (u > v) std::swap(u, v);
  if (index_.erase({u, v}) == 0) return false;
  edges_.erase(std::find_if(edges_.begin(), edges_.end(),
                            [&](const Edge& e) { return e.u == u && e.v == v; }));
  return true;
}

std::vector<int> Topology::degrees() const {
  std::vector<int> deg(n_, 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

double Topology::average_degree() const {
  if (n_ == 0) return 0.0;
  return 2.0 * num_edges() / n_;
}

std::vector<std::vector<int>> Topology::adjacency() const {
  std::vector<std::vector<int>> adj(n_);
  for (const Edge& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& neighbors : adj) std::sort(neighbors.begin(), neighbors.end());
  return adj;
}

InterScheme inter_scheme_from_string(const std::string& name) {
  if (name == "ring") return InterScheme::ring;
  if (name == "fractal") return InterScheme::fractal;
  if (name == "smallworld") return InterScheme::smallworld;
  if (name == "fully") return InterScheme::fully;
  throw std::invalid_argument("unknown inter-clique scheme: " + name);
}

std::string to_string(InterScheme scheme) {
  switch (scheme) {
    case InterScheme::ring: return "ring";
    case InterScheme::fractal: return "fractal";
    case InterScheme::smallworld: return "smallworld";
    case InterScheme::fully: return "fully";
  }
  return "?";
}

std::vector<Edge> intra_edges(const CliqueAssignment& assignment) {
  std::vector<Edge> edges;
  for (const auto& clique : assignment.cliques) {
    for (size_t a = 0; a < clique.size(); ++a) {
      for (size_t b = a + 1; b < clique.size(); ++b) {
        edges.push_back({std::min(clique[a], clique[b]), std::max(clique[a], clique[b]),
                         EdgeTag::intra});
      }
    }
  }
  return edges;
}

namespace {

// Shared state for the inter-clique builders: an edge set with degree
// counting restricted to the edges built so far.
struct InterBuilder {
  explicit InterBuilder(int n) : degree(n, 0) {}

  // Member of `members` with the fewest inter edges so far, ties broken by
  // lowest node id (members are kept sorted).
  int least_edges(const std::vector<int>& members) const {
    int best = members[0];
    for (int node : members) {
      if (degree[node] < degree[best]) best = node;
    }
    return best;
  }

  // Connects the least-edges nodes of two disjoint member sets. Duplicate
  // node pairs collapse.
  void connect(const std::vector<int>& a, const std::vector<int>& b) {
    int u = least_edges(a);
    int v = least_edges(b);
    if (u > v) std::swap(u, v);
    if (!seen.insert({u, v}).second) return;
    edges.push_back({u, v, EdgeTag::inter});
    ++degree[u];
    ++degree[v];
  }

  std::vector<int> degree;
  std::set<std::pair<int, int>> seen;
  std::vector<Edge> edges;
};

int max_node_id(const CliqueAssignment& assignment) {
  int max_id = -1;
  for (const auto& clique : assignment.cliques) {
    for (int node : clique) max_id = std::max(max_id, node);
  }
  return max_id;
}

}  // namespace

std::vector<Edge> inter_ring(const CliqueAssignment& assignment) {
  const int num = assignment.num_cliques();
  InterBuilder builder(max_node_id(assignment) + 1);
  if (num == 2) {
    builder.connect(assignment.cliques[0], assignment.cliques[1]);
  } else if (num >= 3) {
    for (int i = 0; i < num; ++i) {
      builder.connect(assignment.cliques[i], assignment.cliques[(i + 1) % num]);
    }
  }
  return builder.edges;
}

std::vector<Edge> inter_fractal(const CliqueAssignment& assignment) {
  const int group_size = std::max(assignment.max_size, 2);
  InterBuilder builder(max_node_id(assignment) + 1);

  std::vector<std::vector<int>> units = assignment.cliques;
  while (units.size() > 1) {
    std::vector<std::vector<int>> merged;
    for (size_t begin = 0; begin < units.size(); begin += group_size) {
      size_t end = std::min(begin + group_size, units.size());
      for (size_t a = begin; a < end; ++a) {
        for (size_t b = a + 1; b < end; ++b) builder.connect(units[a], units[b]);
      }
      std::vector<int> unit;
      for (size_t a = begin; a < end; ++a) {
        unit.insert(unit.end(), units[a].begin(), units[a].end());
      }
      std::sort(unit.begin(), unit.end());
      merged.push_back(std::move(unit));
    }
    units = std::move(merged);
  }
  return builder.edges;
}

std::vector<Edge> inter_smallworld(const CliqueAssignment& assignment, int neighborhood) {
  const int num = assignment.num_cliques();
  InterBuilder builder(max_node_id(assignment) + 1);
  if (num < 2) return builder.edges;

  const int log_num = static_cast<int>(std::ceil(std::log2(double(num))));
  for (int i = 0; i < num; ++i) {
    for (int x = 0; x < log_num; ++x) {
      const long offset = 1L << x;
      for (int k = 0; k < neighborhood; ++k) {
        int clockwise = static_cast<int>((i + offset + k) % num);
        if (clockwise != i) builder.connect(assignment.cliques[i], assignment.cliques[clockwise]);
        int counter = static_cast<int>(((i - offset - k) % num + num) % num);
        if (counter != i) builder.connect(assignment.cliques[i], assignment.cliques[counter]);
      }
    }
  }
  return builder.edges;
}

std::vector<Edge> inter_fully(const CliqueAssignment& assignment) {
  const int num = assignment.num_cliques();
  InterBuilder builder(max_node_id(assignment) + 1);
  for (int a = 0; a < num; ++a) {
    for (int b = a + 1; b < num; ++b) {
      builder.connect(assignment.cliques[a], assignment.cliques[b]);
    }
  }
  return builder.edges;
}

std::vector<Edge> inter_edges(const CliqueAssignment& assignment, InterScheme scheme,
                              int neighborhood) {
  switch (scheme) {
    case InterScheme::ring: return inter_ring(assignment);
    case InterScheme::fractal: return inter_fractal(assignment);
    case InterScheme::smallworld: return inter_smallworld(assignment, neighborhood);
    case InterScheme::fully: return inter_fully(assignment);
  }
  throw std::invalid_argument("unknown inter scheme");
}

Topology build_dcliques_topology(const CliqueAssignment& assignment, InterScheme scheme,
                                 int neighborhood) {
  Topology topology(assignment.num_nodes());
  for (const Edge& e : intra_edges(assignment)) topology.add_edge(e.u, e.v, e.tag);
  for (const Edge& e : inter_edges(assignment, scheme, neighborhood)) {
    topology.add_edge(e.u, e.v, e.tag);
  }
  return topology;
}

Topology baseline_ring(int n) {
  if (n < 3) throw std::invalid_argument("baseline_ring: need at least 3 nodes");
  Topology topology(n);
  for (int i = 0; i < n; ++i) topology.add_edge(i, (i + 1) % n, EdgeTag::baseline);
  return topology;
}

Topology baseline_grid(int n) {
  if (n < 1) throw std::invalid_argument("baseline_grid: need at least 1 node");
  const int rows = std::max(1, static_cast<int>(std::floor(std::sqrt(double(n)))));
  const int cols = (n + rows - 1) / rows;
  Topology topology(n);
  for (int i = 0; i < n; ++i) {
    int r = i / cols, c = i % cols;
    if (c + 1 < cols && i + 1 < n && (i + 1) / cols == r) topology.add_edge(i, i + 1, EdgeTag::baseline);
    if (i + cols < n) topology.add_edge(i, i + cols, EdgeTag::baseline);
  }
  return topology;
}

Topology baseline_full(int n) {
  if (n < 2) throw std::invalid_argument("baseline_full: need at least 2 nodes");
  Topology topology(n);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) topology.add_edge(i, j, EdgeTag::baseline);
  }
  return topology;
}

namespace {

// One pairing-model round: shuffle the stub list and pair consecutive stubs,
// carrying the stubs of colliding pairs (self-loops / duplicates) into the
// next round. Returns false when stuck (no progress possible).
bool try_pairing(int n, int degree, std::mt19937_64& rng, std::set<std::pair<int, int>>& edges) {
  edges.clear();
  std::vector<int> stubs;
  stubs.reserve(static_cast<size_t>(n) * degree);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < degree; ++k) stubs.push_back(i);
  }
  while (!stubs.empty()) {
    std::shuffle(stubs.begin(), stubs.end(), rng);
    std::vector<int> leftover;
    for (size_t k = 0; k + 1 < stubs.size(); k += 2) {
      int u = stubs[k], v = stubs[k + 1];
      if (u > v) std::swap(u, v);
      if (u == v || !edges.insert({u, v}).second) {
        leftover.push_back(stubs[k]);
        leftover.push_back(stubs[k + 1]);
      }
    }
    if (leftover.size() == stubs.size()) return false;  // stuck
    stubs = std::move(leftover);
  }
  return true;
}

bool is_connected(int n, const std::vector<std::vector<int>>& adj) {
  if (n == 0) return true;
  std::vector<char> seen(n, 0);
  std::deque<int> queue{0};
  seen[0] = 1;
  int visited = 1;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : adj[u]) {
      if (!seen[v]) {
        seen[v] = 1;
        ++visited;
        queue.push_back(v);
      }
    }
  }
  return visited == n;
}

}  // namespace

Topology baseline_random_regular(int n, int degree, uint64_t seed) {
  if (degree < 0 || degree >= n || (static_cast<long long>(n) * degree) % 2 != 0) {
    throw std::invalid_argument("baseline_random_regular: infeasible degree sequence");
  }
  constexpr int kMaxAttempts = 1000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::mt19937_64 rng(derive_seed(seed, SeedPurpose::regeneration, attempt));
    std::set<std::pair<int, int>> edges;
    if (!try_pairing(n, degree, rng, edges)) continue;

    Topology topology(n);
    for (const auto& [u, v] : edges) topology.add_edge(u, v, EdgeTag::baseline);
    if (degree == 0 || is_connected(n, topology.adjacency())) return topology;
  }
  throw std::runtime_error("baseline_random_regular: gave up after retries");
}

Topology remove_intra_edges(const Topology& topology, const CliqueAssignment& assignment,
                            int per_clique, uint64_t seed) {
  if (per_clique < 0) throw std::invalid_argument("remove_intra_edges: negative count");

  // Collect each clique's intra edges up front so the preconditions are
  // checked before anything is removed.
  std::vector<std::vector<std::pair<int, int>>> removable(assignment.num_cliques());
  std::vector<int> clique_of = assignment.clique_index(topology.num_nodes());
  for (const Edge& e : topology.edges()) {
    if (e.tag == EdgeTag::intra && clique_of[e.u] >= 0 && clique_of[e.u] == clique_of[e.v]) {
      removable[clique_of[e.u]].push_back({e.u, e.v});
    }
  }
  for (const auto& list : removable) {
    if (per_clique > static_cast<int>(list.size())) {
      throw std::invalid_argument("remove_intra_edges: per_clique exceeds available intra edges");
    }
  }

  Topology result = topology;
  std::mt19937_64 rng(seed);
  for (auto& list : removable) {
    std::shuffle(list.begin(), list.end(), rng);
    for (int k = 0; k < per_clique; ++k) result.remove_edge(list[k].first, list[k].second);
  }
  return result;
}

GraphStats graph_stats(const Topology& topology) {
  GraphStats stats;
  stats.edge_count = topology.num_edges();
  stats.average_degree = topology.average_degree();

  const int n = topology.num_nodes();
  const auto adj = topology.adjacency();
  stats.connected = is_connected(n, adj);
  if (!stats.connected) return stats;

  int diameter = 0;
  std::vector<int> dist(n);
  std::deque<int> queue;
  for (int source = 0; source < n; ++source) {
    std::fill(dist.begin(), dist.end(), -1);
    dist[source] = 0;
    queue.assign(1, source);
    while (!queue.empty()) {
      int u = queue.front();
      queue.pop_front();
      diameter = std::max(diameter, dist[u]);
      for (int v : adj[u]) {
        if (dist[v] < 0) {
          dist[v] = dist[u] + 1;
          queue.push_back(v);
        }
      }
    }
  }
  stats.diameter = diameter;
  return stats;
}

}  // namespace dcliques
