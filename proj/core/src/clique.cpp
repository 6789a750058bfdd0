#include "dcliques/clique.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace dcliques {

int CliqueAssignment::num_nodes() const {
  int total = 0;
  for (const auto& clique : cliques) total += static_cast<int>(clique.size());
  return total;
}

std::vector<int> CliqueAssignment::clique_index(int n) const {
  std::vector<int> index(n, -1);
  for (int c = 0; c < num_cliques(); ++c) {
    for (int node : cliques[c]) {
      if (node < 0 || node >= n) throw std::runtime_error("clique: node id out of range");
      index[node] = c;
    }
  }
  return index;
}

void CliqueAssignment::check(int n) const {
  std::vector<char> seen(n, 0);
  for (const auto& clique : cliques) {
    if (static_cast<int>(clique.size()) > max_size) {
      throw std::runtime_error("clique: size exceeds maximum");
    }
    for (int node : clique) {
      if (node < 0 || node >= n) throw std::runtime_error("clique: node id out of range");
      if (seen[node]) throw std::runtime_error("clique: node in two cliques");
      seen[node] = 1;
    }
  }
  for (int i = 0; i < n; ++i) {
    if (!seen[i]) throw std::runtime_error("clique: node not covered");
  }
}

double skew(const std::vector<int>& clique, const std::vector<LabelDistribution>& node_dists,
            const LabelDistribution& global_dist) {
  if (clique.empty()) throw std::invalid_argument("skew: empty clique");
  const int classes = global_dist.classes();
  std::vector<double> mean(classes, 0.0);
  for (int node : clique) {
    const auto& dist = node_dists.at(node);
    if (dist.classes() != classes) throw std::invalid_argument("skew: class count mismatch");
    for (int l = 0; l < classes; ++l) mean[l] += dist.probs[l];
  }
  double value = 0.0;
  for (int l = 0; l < classes; ++l) {
    value += std::abs(mean[l] / clique.size() - global_dist.probs[l]);
  }
  return value;
}

namespace {

// Skew from a clique's distribution *sum* (not mean); keeping sums lets a
// candidate swap be scored in O(L) as sum - d_i + d_j.
double skew_from_sum(const std::vector<double>& sum, int size,
                     const std::vector<double>& global) {
  double value = 0.0;
  for (size_t l = 0; l < sum.size(); ++l) {
    value += std::abs(sum[l] / size - global[l]);
  }
  return value;
}

}  // namespace

CliqueAssignment greedy_swap(const std::vector<LabelDistribution>& node_dists,
                             int max_clique_size, int steps, uint64_t seed,
                             std::vector<double>* total_skew_trace) {
  const int n = static_cast<int>(node_dists.size());
  if (n < 1) throw std::invalid_argument("greedy_swap: no nodes");
  if (max_clique_size < 1) throw std::invalid_argument("greedy_swap: max clique size < 1");
  if (steps < 0) throw std::invalid_argument("greedy_swap: negative step budget");
  const int classes = node_dists[0].classes();

  std::vector<double> global(classes, 0.0);
  for (const auto& dist : node_dists) {
    if (dist.classes() != classes) throw std::invalid_argument("greedy_swap: class mismatch");
    for (int l = 0; l < classes; ++l) global[l] += dist.probs[l];
  }
  for (double& g : global) g /= n;

  std::mt19937_64 rng(seed);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::shuffle(order.begin(), order.end(), rng);

  std::vector<std::vector<int>> cliques;
  for (int begin = 0; begin < n; begin += max_clique_size) {
    int end = std::min(begin + max_clique_size, n);
    cliques.emplace_back(order.begin() + begin, order.begin() + end);
  }
  const int num_cliques = static_cast<int>(cliques.size());

  std::vector<std::vector<double>> sums(num_cliques, std::vector<double>(classes, 0.0));
  std::vector<double> skews(num_cliques, 0.0);
  double total = 0.0;
  for (int c = 0; c < num_cliques; ++c) {
    for (int node : cliques[c]) {
      for (int l = 0; l < classes; ++l) sums[c][l] += node_dists[node].probs[l];
    }
    skews[c] = skew_from_sum(sums[c], static_cast<int>(cliques[c].size()), global);
    total += skews[c];
  }
  if (total_skew_trace) {
    total_skew_trace->clear();
    total_skew_trace->push_back(total);
  }

  std::vector<double> candidate(classes);
  for (int step = 0; step < steps; ++step) {
    if (num_cliques >= 2) {
      std::uniform_int_distribution<int> pick_a(0, num_cliques - 1);
      std::uniform_int_distribution<int> pick_b(0, num_cliques - 2);
      int a = pick_a(rng);
      int b = pick_b(rng);
      if (b >= a) ++b;

      const double before = skews[a] + skews[b];
      struct Swap {
        int pos_a, pos_b;
        double skew_a, skew_b;
      };
      std::vector<Swap> improving;
      const int size_a = static_cast<int>(cliques[a].size());
      const int size_b = static_cast<int>(cliques[b].size());
      for (int pa = 0; pa < size_a; ++pa) {
        const auto& di = node_dists[cliques[a][pa]].probs;
        for (int pb = 0; pb < size_b; ++pb) {
          const auto& dj = node_dists[cliques[b][pb]].probs;
          for (int l = 0; l < classes; ++l) candidate[l] = sums[a][l] - di[l] + dj[l];
          double skew_a = skew_from_sum(candidate, size_a, global);
          for (int l = 0; l < classes; ++l) candidate[l] = sums[b][l] - dj[l] + di[l];
          double skew_b = skew_from_sum(candidate, size_b, global);
          if (skew_a + skew_b < before) improving.push_back({pa, pb, skew_a, skew_b});
        }
      }
      if (!improving.empty()) {
        std::uniform_int_distribution<size_t> pick(0, improving.size() - 1);
        const Swap& chosen = improving[pick(rng)];
        int node_i = cliques[a][chosen.pos_a];
        int node_j = cliques[b][chosen.pos_b];
        const auto& di = node_dists[node_i].probs;
        const auto& dj = node_dists[node_j].probs;
        for (int l = 0; l < classes; ++l) {
          sums[a][l] = sums[a][l] - di[l] + dj[l];
          sums[b][l] = sums[b][l] - dj[l] + di[l];
        }
        cliques[a][chosen.pos_a] = node_j;
        cliques[b][chosen.pos_b] = node_i;
        total += chosen.skew_a + chosen.skew_b - before;
        skews[a] = chosen.skew_a;
        skews[b] = chosen.skew_b;
      }
    }
    if (total_skew_trace) total_skew_trace->push_back(total);
  }

  CliqueAssignment assignment;
  assignment.max_size = max_clique_size;
  assignment.cliques = std::move(cliques);
  for (auto& clique : assignment.cliques) std::sort(clique.begin(), clique.end());
  return assignment;
}

CliqueAssignment greedy_single_class(const std::vector<int>& node_classes, int num_classes,
                                     uint64_t seed) {
  const int n = static_cast<int>(node_classes.size());
  if (num_classes < 1 || n < 1 || n % num_classes != 0) {
    throw std::invalid_argument("greedy_single_class: nodes not divisible by class count");
  }
  std::vector<int> per_class(num_classes, 0);
  for (int c : node_classes) {
    if (c < 1 || c > num_classes) {
      throw std::invalid_argument("greedy_single_class: class id out of range");
    }
    ++per_class[c - 1];
  }
  const int expected = n / num_classes;
  for (int c = 0; c < num_classes; ++c) {
    if (per_class[c] != expected) {
      throw std::invalid_argument(
          "greedy_single_class: classes not represented on equal node counts");
    }
  }

  std::mt19937_64 rng(seed);
  std::vector<int> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 0);

  CliqueAssignment assignment;
  assignment.max_size = num_classes;
  std::vector<int> current;
  std::vector<char> present(num_classes, 0);
  while (!remaining.empty()) {
    std::vector<int> eligible;
    for (size_t k = 0; k < remaining.size(); ++k) {
      if (!present[node_classes[remaining[k]] - 1]) eligible.push_back(static_cast<int>(k));
    }
    std::uniform_int_distribution<size_t> pick(0, eligible.size() - 1);
    int at = eligible[pick(rng)];
    int node = remaining[at];
    remaining.erase(remaining.begin() + at);
    current.push_back(node);
    present[node_classes[node] - 1] = 1;
    if (static_cast<int>(current.size()) == num_classes) {
      std::sort(current.begin(), current.end());
      assignment.cliques.push_back(std::move(current));
      current.clear();
      std::fill(present.begin(), present.end(), 0);
    }
  }
  return assignment;
}

CliqueAssignment chunked_cliques(int n, int max_clique_size) {
  if (n < 1 || max_clique_size < 1) throw std::invalid_argument("chunked_cliques: bad arguments");
  CliqueAssignment assignment;
  assignment.max_size = max_clique_size;
  for (int begin = 0; begin < n; begin += max_clique_size) {
    std::vector<int> clique;
    for (int i = begin; i < std::min(begin + max_clique_size, n); ++i) clique.push_back(i);
    assignment.cliques.push_back(std::move(clique));
  }
  return assignment;
}

}  // namespace dcliques
