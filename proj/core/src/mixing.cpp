#include "dcliques/mixing.hpp"

#include <cmath>
#include <stdexcept>

namespace dcliques {

MixingMatrix::MixingMatrix(Eigen::MatrixXd dense)
    : n_(static_cast<int>(dense.rows())), dense_storage_(true), dense_(std::move(dense)) {
  if (dense_.rows() != dense_.cols()) throw std::invalid_argument("mixing: non-square matrix");
}

MixingMatrix MixingMatrix::identity(int n) {
  MixingMatrix m;
  m.n_ = n;
  if (n <= kDenseLimit) {
    m.dense_storage_ = true;
    m.dense_ = Eigen::MatrixXd::Identity(n, n);
  } else {
    m.dense_storage_ = false;
    m.rows_.resize(n);
    for (int i = 0; i < n; ++i) m.rows_[i] = {{i, 1.0}};
  }
  return m;
}

double MixingMatrix::entry(int i, int j) const {
  if (dense_storage_) return dense_(i, j);
  for (const auto& [col, w] : rows_[i]) {
    if (col == j) return w;
    if (col > j) break;
  }
  return 0.0;
}

std::vector<std::pair<int, double>> MixingMatrix::row_entries(int i) const {
  if (!dense_storage_) return rows_[i];
  std::vector<std::pair<int, double>> entries;
  for (int j = 0; j < n_; ++j) {
    if (dense_(i, j) != 0.0) entries.push_back({j, dense_(i, j)});
  }
  return entries;
}

void MixingMatrix::apply(const Eigen::MatrixXd& in, Eigen::MatrixXd& out) const {
  if (in.rows() != n_) throw std::invalid_argument("mixing: row count mismatch");
  out.resize(in.rows(), in.cols());
  if (dense_storage_) {
    for (int i = 0; i < n_; ++i) {
      Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(in.cols());
      for (int j = 0; j < n_; ++j) {
        double w = dense_(i, j);
        if (w != 0.0) acc += w * in.row(j);
      }
      out.row(i) = acc;
    }
  } else {
    for (int i = 0; i < n_; ++i) {
      Eigen::RowVectorXd acc = Eigen::RowVectorXd::Zero(in.cols());
      for (const auto& [j, w] : rows_[i]) acc += w * in.row(j);
      out.row(i) = acc;
    }
  }
}

MixingMatrix metropolis_hastings(const Topology& topology) {
  const int n = topology.num_nodes();
  const auto deg = topology.degrees();
  const auto adj = topology.adjacency();

  MixingMatrix m;
  m.n_ = n;
  if (n <= MixingMatrix::kDenseLimit) {
    m.dense_storage_ = true;
    m.dense_ = Eigen::MatrixXd::Zero(n, n);
    for (const Edge& e : topology.edges()) {
      double w = 1.0 / (std::max(deg[e.u], deg[e.v]) + 1);
      m.dense_(e.u, e.v) = w;
      m.dense_(e.v, e.u) = w;
    }
    for (int i = 0; i < n; ++i) {
      double off = 0.0;
      for (int j : adj[i]) off += m.dense_(i, j);
      m.dense_(i, i) = 1.0 - off;
    }
  } else {
    m.dense_storage_ = false;
    m.rows_.resize(n);
    for (int i = 0; i < n; ++i) {
      double off = 0.0;
      auto& row = m.rows_[i];
      row.reserve(adj[i].size() + 1);
      bool diagonal_placed = false;
      for (int j : adj[i]) {
        if (!diagonal_placed && j > i) {
          row.push_back({i, 0.0});  // placeholder, filled below
          diagonal_placed = true;
        }
        double w = 1.0 / (std::max(deg[i], deg[j]) + 1);
        row.push_back({j, w});
        off += w;
      }
      if (!diagonal_placed) row.push_back({i, 0.0});
      for (auto& [col, w] : row) {
        if (col == i) w = 1.0 - off;
      }
    }
  }
  return m;
}

std::vector<Violation> validate(const MixingMatrix& matrix, const Topology& topology) {
  if (matrix.size() != topology.num_nodes()) {
    throw std::invalid_argument("validate: dimension mismatch");
  }
  constexpr double kSumTolerance = 1e-9;
  const int n = matrix.size();
  std::vector<Violation> violations;

  std::vector<double> col_sums(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double row_sum = 0.0;
    for (const auto& [j, w] : matrix.row_entries(i)) {
      row_sum += w;
      col_sums[j] += w;
      if (w < 0.0) violations.push_back({i, j, "negative entry"});
      if (i != j && w != 0.0 && !topology.has_edge(i, j)) {
        violations.push_back({i, j, "nonzero entry on non-edge"});
      }
      if (w != matrix.entry(j, i)) violations.push_back({i, j, "asymmetric entry"});
    }
    if (std::abs(row_sum - 1.0) > kSumTolerance) {
      violations.push_back({i, -1, "row sum " + std::to_string(row_sum)});
    }
  }
  for (int j = 0; j < n; ++j) {
    if (std::abs(col_sums[j] - 1.0) > kSumTolerance) {
      violations.push_back({j, -1, "column sum " + std::to_string(col_sums[j])});
    }
  }
  return violations;
}

}  // namespace dcliques
