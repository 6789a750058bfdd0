#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "dcliques/mixing.hpp"
#include "dcliques/topology.hpp"

using namespace dcliques;

namespace {

Topology random_simple_graph(int n, double p, uint64_t seed) {
  Topology topology(n);
  std::mt19937_64 rng(seed);
  std::bernoulli_distribution flip(p);
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (flip(rng)) topology.add_edge(u, v, EdgeTag::baseline);
    }
  }
  return topology;
}

// Two 10-cliques joined by a single inter-clique edge between node 9 and
// node 10.
Topology two_bridged_cliques() {
  CliqueAssignment assignment = chunked_cliques(20, 10);
  Topology topology(20);
  for (const Edge& e : intra_edges(assignment)) topology.add_edge(e.u, e.v, e.tag);
  topology.add_edge(9, 10, EdgeTag::inter);
  return topology;
}

}  // namespace

TEST_CASE("metropolis-hastings on a triangle: every entry 1/3") {
  Topology triangle(3);
  triangle.add_edge(0, 1, EdgeTag::baseline);
  triangle.add_edge(1, 2, EdgeTag::baseline);
  triangle.add_edge(0, 2, EdgeTag::baseline);
  MixingMatrix matrix = metropolis_hastings(triangle);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) CHECK(std::abs(matrix.entry(i, j) - 1.0 / 3.0) <= 1e-15);
  }
}

TEST_CASE("metropolis-hastings handles isolated nodes") {
  Topology lonely(1);
  MixingMatrix matrix = metropolis_hastings(lonely);
  CHECK(matrix.entry(0, 0) == 1.0);

  Topology mixed(3);
  mixed.add_edge(0, 1, EdgeTag::baseline);
  matrix = metropolis_hastings(mixed);
  CHECK(matrix.entry(2, 2) == 1.0);
  CHECK(validate(matrix, mixed).empty());
}

TEST_CASE("metropolis-hastings reproduces the two-clique bridge weights") {
  Topology topology = two_bridged_cliques();
  MixingMatrix matrix = metropolis_hastings(topology);

  // Node 0 has degree 9; its neighbor 9 (the bridge endpoint) has degree 10.
  CHECK(matrix.entry(0, 9) == 10.0 / 110.0);
  for (int j = 1; j <= 8; ++j) CHECK(matrix.entry(0, j) == 11.0 / 110.0);
  CHECK(std::abs(matrix.entry(0, 0) - 12.0 / 110.0) <= 1e-15);

  // The degree-10 bridge node 10: every weight including the self-weight is
  // 1/11 (the diagonal lands within rounding of it).
  for (int j = 9; j <= 19; ++j) {
    if (j == 10) continue;
    CHECK(matrix.entry(10, j) == 1.0 / 11.0);
  }
  CHECK(std::abs(matrix.entry(10, 10) - 1.0 / 11.0) <= 1e-15);

  CHECK(validate(matrix, topology).empty());
}

TEST_CASE("validate flags hand-built defects") {
  Topology path(3);
  path.add_edge(0, 1, EdgeTag::baseline);
  path.add_edge(1, 2, EdgeTag::baseline);

  SUBCASE("row not summing to one") {
    Eigen::MatrixXd bad(3, 3);
    bad << 0.4, 0.5, 0.0,   // row sums 0.9
           0.5, 0.1, 0.4,
           0.0, 0.4, 0.6;
    auto violations = validate(MixingMatrix(bad), path);
    bool row_flagged = false;
    for (const auto& v : violations) row_flagged |= v.condition.find("row sum") == 0 && v.row == 0;
    CHECK(row_flagged);
  }
  SUBCASE("nonzero entry off the graph support") {
    Eigen::MatrixXd bad(3, 3);
    bad << 0.3, 0.5, 0.2,
           0.5, 0.1, 0.4,
           0.2, 0.4, 0.4;
    auto violations = validate(MixingMatrix(bad), path);
    bool sparsity_flagged = false;
    for (const auto& v : violations) {
      sparsity_flagged |= v.condition == "nonzero entry on non-edge";
    }
    CHECK(sparsity_flagged);
  }
  SUBCASE("asymmetry and negativity") {
    Eigen::MatrixXd bad(3, 3);
    bad << 0.5, 0.6, 0.0,
           0.4, -0.1, 0.7,
           0.0, 0.5, 0.5;
    auto violations = validate(MixingMatrix(bad), path);
    bool asymmetric = false, negative = false;
    for (const auto& v : violations) {
      asymmetric |= v.condition == "asymmetric entry";
      negative |= v.condition == "negative entry";
    }
    CHECK(asymmetric);
    CHECK(negative);
  }
  SUBCASE("dimension mismatch throws") {
    CHECK_THROWS_AS(validate(MixingMatrix(Eigen::MatrixXd::Identity(4, 4)), path),
                    std::invalid_argument);
  }
}

TEST_CASE("property: metropolis-hastings passes validation on assorted topologies") {
  std::mt19937_64 seeds(2024);
  for (int trial = 0; trial < 40; ++trial) {
    Topology topology = [&]() -> Topology {
      switch (trial % 4) {
        case 0: return random_simple_graph(5 + int(seeds() % 196), 0.05 + 0.3 * (trial % 3), seeds());
        case 1: return build_dcliques_topology(chunked_cliques(10 * (1 + int(seeds() % 15)), 10),
                                               InterScheme::fully);
        case 2: return baseline_ring(3 + int(seeds() % 100));
        default: return baseline_random_regular(20 + 2 * int(seeds() % 50), 4, seeds());
      }
    }();
    MixingMatrix matrix = metropolis_hastings(topology);
    CHECK(validate(matrix, topology).empty());

    // Strictly positive diagonal whenever the node has a neighbor.
    auto deg = topology.degrees();
    for (int i = 0; i < topology.num_nodes(); ++i) {
      if (deg[i] >= 1) CHECK(matrix.entry(i, i) > 0.0);
    }
  }
}

TEST_CASE("one multiplication by W preserves the node mean") {
  std::mt19937_64 rng(55);
  Topology topology = build_dcliques_topology(chunked_cliques(60, 6), InterScheme::smallworld);
  MixingMatrix matrix = metropolis_hastings(topology);

  Eigen::MatrixXd params(60, 7);
  std::normal_distribution<double> noise(0.0, 10.0);
  for (int i = 0; i < params.rows(); ++i) {
    for (int j = 0; j < params.cols(); ++j) params(i, j) = noise(rng);
  }
  Eigen::MatrixXd mixed;
  matrix.apply(params, mixed);

  Eigen::RowVectorXd before = params.colwise().mean();
  Eigen::RowVectorXd after = mixed.colwise().mean();
  for (int j = 0; j < params.cols(); ++j) {
    CHECK(std::abs(after[j] - before[j]) <= 1e-9 * std::max(1.0, std::abs(before[j])));
  }
}

TEST_CASE("sparse storage above the dense limit behaves like the dense path") {
  Topology topology = baseline_ring(1030);  // past kDenseLimit
  MixingMatrix matrix = metropolis_hastings(topology);
  CHECK_FALSE(matrix.is_dense());
  CHECK(validate(matrix, topology).empty());
  CHECK(matrix.entry(0, 1) == doctest::Approx(1.0 / 3.0));
  CHECK(matrix.entry(0, 2) == 0.0);
  CHECK(matrix.entry(0, 1029) == matrix.entry(1029, 0));

  Eigen::MatrixXd params = Eigen::MatrixXd::Random(1030, 3);
  Eigen::MatrixXd mixed;
  matrix.apply(params, mixed);
  CHECK(std::abs(mixed.col(0).mean() - params.col(0).mean()) <= 1e-9);
}
