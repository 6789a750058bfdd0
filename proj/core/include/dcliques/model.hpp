#pragma once

#include <Eigen/Core>

#include <span>

#include "dcliques/dataset.hpp"

namespace dcliques {

/// Multinomial logistic regression. Parameters are a flat vector of length
/// num_classes*(dim+1): class-major weights first, then the biases.
struct SoftmaxModel {
  int num_classes = 0;
  int dim = 0;

  int param_count() const { return num_classes * (dim + 1); }
  Eigen::VectorXd zero_params() const { return Eigen::VectorXd::Zero(param_count()); }
};

/// Mean cross-entropy of softmax(Wx + b) over the batch.
double batch_loss(const SoftmaxModel& model, const Eigen::VectorXd& params,
                  const Dataset& data, std::span<const int> batch);

/// Mean gradient of batch_loss with respect to the flat parameter vector.
/// Throws on an empty batch.
Eigen::VectorXd batch_gradient(const SoftmaxModel& model, const Eigen::VectorXd& params,
                               const Dataset& data, std::span<const int> batch);

/// Fraction of argmax-correct predictions; ties broken to the lowest class id.
/// Throws on an empty dataset.
double accuracy(const SoftmaxModel& model, const Eigen::VectorXd& params, const Dataset& data);

}  // namespace dcliques
