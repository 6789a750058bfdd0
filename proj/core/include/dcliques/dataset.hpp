#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace dcliques {

// Row-major so that mini-batch row gathers are contiguous.
using FeatureMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class Split { train, validation, test };

/// Labeled dataset: one feature row per example, labels in {1..num_classes}.
struct Dataset {
  FeatureMatrix features;
  std::vector<int> labels;
  int num_classes = 0;
  Split split = Split::train;

  int count() const { return static_cast<int>(labels.size()); }
  int dim() const { return static_cast<int>(features.cols()); }

  // Throws std::runtime_error if a label is out of {1..num_classes} or the
  // feature row count does not match the label count.
  void check() const;
};

/// Reads an IDX image/label file pair (the MNIST distribution format).
/// Pixels are scaled to [0,1], labels shifted to {1..10}. Throws on magic
/// mismatch, truncation, label >= 10, or image/label count mismatch.
Dataset load_idx(const std::string& images_path, const std::string& labels_path,
                 Split split = Split::train);

/// Gaussian blobs: class c is centred at separation * e_c (unit basis vector),
/// unit isotropic noise. Examples are grouped by class. Deterministic given
/// the seed; the means depend only on (num_classes, dim, separation), so a
/// test split drawn with a different seed shares them.
Dataset synthetic_dataset(int num_classes, int per_class, int dim, double separation,
                          uint64_t seed, Split split = Split::train);

/// Seeded stratified split: holds out `validation_count` examples whose class
/// ratios match the input's, returns (train, validation).
std::pair<Dataset, Dataset> split_validation(const Dataset& data, int validation_count,
                                             uint64_t seed);

}  // namespace dcliques
