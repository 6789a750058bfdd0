#pragma once

#include <Eigen/Core>

#include <string>
#include <vector>

#include "dcliques/dataset.hpp"
#include "dcliques/topology.hpp"

namespace dcliques {

/// Symmetric doubly-stochastic mixing matrix aligned with a topology.
/// Dense storage up to kDenseLimit nodes, sorted adjacency rows above.
class MixingMatrix {
 public:
  static constexpr int kDenseLimit = 1024;

  MixingMatrix() = default;
  explicit MixingMatrix(Eigen::MatrixXd dense);

  static MixingMatrix identity(int n);

  int size() const { return n_; }
  bool is_dense() const { return dense_storage_; }
  double entry(int i, int j) const;

  // Row i as (column, weight) pairs in ascending column order, diagonal
  // included, zeros omitted.
  std::vector<std::pair<int, double>> row_entries(int i) const;

  // out.row(i) = sum_j W(i,j) * in.row(j), accumulated in ascending j so the
  // result is independent of any caller-side parallelism.
  void apply(const Eigen::MatrixXd& in, Eigen::MatrixXd& out) const;

 private:
  friend MixingMatrix metropolis_hastings(const Topology&);

  int n_ = 0;
  bool dense_storage_ = true;
  Eigen::MatrixXd dense_;
  std::vector<std::vector<std::pair<int, double>>> rows_;  // sparse mode
};

/// Metropolis-Hastings weights: W(i,j) = 1/(max(deg i, deg j)+1) on edges,
/// diagonal 1 - sum of the row's off-diagonal weights, zero elsewhere.
/// Isolated nodes get W(i,i) = 1.
MixingMatrix metropolis_hastings(const Topology& topology);

struct Violation {
  int row;
  int col;  // -1 for row-level violations
  std::string condition;
};

/// Empty iff the matrix is symmetric (exactly), rows and columns sum to 1
/// within 1e-9, entries are nonnegative, and off-diagonal support lies on the
/// topology's edges. Throws on dimension mismatch.
std::vector<Violation> validate(const MixingMatrix& matrix, const Topology& topology);

}  // namespace dcliques
