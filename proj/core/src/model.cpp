#include "dcliques/model.hpp"

#include <cmath>
#include <stdexcept>

namespace dcliques {

namespace {

using RowMajorMap = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                                   Eigen::RowMajor>>;

// Row-stabilized softmax probabilities for the batch: batch x L.
Eigen::MatrixXd probabilities(const SoftmaxModel& model, const Eigen::VectorXd& params,
                              const Eigen::MatrixXd& batch_features) {
  RowMajorMap weights(params.data(), model.num_classes, model.dim);
  const auto biases = params.tail(model.num_classes);

  Eigen::MatrixXd logits = batch_features * weights.transpose();
  logits.rowwise() += biases.transpose();
  const Eigen::VectorXd row_max = logits.rowwise().maxCoeff();
  logits.colwise() -= row_max;
  Eigen::MatrixXd probs = logits.array().exp();
  const Eigen::VectorXd row_sum = probs.rowwise().sum();
  probs.array().colwise() /= row_sum.array();
  return probs;
}

Eigen::MatrixXd gather_rows(const Dataset& data, std::span<const int> batch) {
  Eigen::MatrixXd rows(batch.size(), data.dim());
  for (size_t r = 0; r < batch.size(); ++r) rows.row(r) = data.features.row(batch[r]);
  return rows;
}

}  // namespace

double batch_loss(const SoftmaxModel& model, const Eigen::VectorXd& params, const Dataset& data,
                  std::span<const int> batch) {
  if (batch.empty()) throw std::invalid_argument("batch_loss: empty batch");
  Eigen::MatrixXd probs = probabilities(model, params, gather_rows(data, batch));
  double loss = 0.0;
  for (size_t r = 0; r < batch.size(); ++r) {
    loss -= std::log(std::max(probs(r, data.labels[batch[r]] - 1), 1e-300));
  }
  return loss / static_cast<double>(batch.size());
}

Eigen::VectorXd batch_gradient(const SoftmaxModel& model, const Eigen::VectorXd& params,
                               const Dataset& data, std::span<const int> batch) {
  if (batch.empty()) throw std::invalid_argument("batch_gradient: empty batch");
  Eigen::MatrixXd features = gather_rows(data, batch);
  Eigen::MatrixXd delta = probabilities(model, params, features);
  for (size_t r = 0; r < batch.size(); ++r) {
    delta(r, data.labels[batch[r]] - 1) -= 1.0;
  }
  delta /= static_cast<double>(batch.size());

  Eigen::VectorXd grad(model.param_count());
  using RowMajorOut =
      Eigen::Map<Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
  RowMajorOut grad_weights(grad.data(), model.num_classes, model.dim);
  grad_weights = delta.transpose() * features;
  grad.tail(model.num_classes) = delta.colwise().sum();
  return grad;
}

double accuracy(const SoftmaxModel& model, const Eigen::VectorXd& params, const Dataset& data) {
  if (data.count() == 0) throw std::invalid_argument("accuracy: empty dataset");
  RowMajorMap weights(params.data(), model.num_classes, model.dim);
  const auto biases = params.tail(model.num_classes);

  Eigen::MatrixXd logits = data.features * weights.transpose();
  logits.rowwise() += biases.transpose();

  int correct = 0;
  for (int r = 0; r < data.count(); ++r) {
    int best = 0;
    for (int l = 1; l < model.num_classes; ++l) {
      if (logits(r, l) > logits(r, best)) best = l;  // ties keep the lowest class id
    }
    if (best == data.labels[r] - 1) ++correct;
  }
  return static_cast<double>(correct) / data.count();
}

}  // namespace dcliques
