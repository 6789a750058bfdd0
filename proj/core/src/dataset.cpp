#include "dcliques/dataset.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

namespace dcliques {

void Dataset::check() const {
  if (static_cast<int>(features.rows()) != count()) {
    throw std::runtime_error("dataset: feature row count does not match label count");
  }
  for (int label : labels) {
    if (label < 1 || label > num_classes) {
      throw std::runtime_error("dataset: label out of range {1.." +
                               std::to_string(num_classes) + "}");
    }
  }
}

namespace {

uint32_t read_u32_be(std::istream& in, const std::string& path) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  if (!in) throw std::runtime_error("idx: truncated file " + path);
  return (uint32_t(bytes[0]) << 24) | (uint32_t(bytes[1]) << 16) | (uint32_t(bytes[2]) << 8) |
         uint32_t(bytes[3]);
}

constexpr uint32_t kImagesMagic = 0x00000803;
constexpr uint32_t kLabelsMagic = 0x00000801;
constexpr int kIdxClasses = 10;

}  // namespace

Dataset load_idx(const std::string& images_path, const std::string& labels_path, Split split) {
  std::ifstream images(images_path, std::ios::binary);
  if (!images) throw std::runtime_error("idx: cannot open " + images_path);
  std::ifstream labels(labels_path, std::ios::binary);
  if (!labels) throw std::runtime_error("idx: cannot open " + labels_path);

  if (read_u32_be(images, images_path) != kImagesMagic) {
    throw std::runtime_error("idx: bad magic in " + images_path);
  }
  uint32_t image_count = read_u32_be(images, images_path);
  uint32_t rows = read_u32_be(images, images_path);
  uint32_t cols = read_u32_be(images, images_path);

  if (read_u32_be(labels, labels_path) != kLabelsMagic) {
    throw std::runtime_error("idx: bad magic in " + labels_path);
  }
  uint32_t label_count = read_u32_be(labels, labels_path);
  if (image_count != label_count) {
    throw std::runtime_error("idx: image/label count mismatch (" + std::to_string(image_count) +
                             " vs " + std::to_string(label_count) + ")");
  }

  const size_t pixels = size_t(rows) * cols;
  Dataset data;
  data.num_classes = kIdxClasses;
  data.split = split;
  data.features.resize(image_count, pixels);
  data.labels.resize(image_count);

  std::vector<unsigned char> buffer(pixels);
  for (uint32_t i = 0; i < image_count; ++i) {
    images.read(reinterpret_cast<char*>(buffer.data()), pixels);
    if (!images) throw std::runtime_error("idx: truncated file " + images_path);
    for (size_t p = 0; p < pixels; ++p) {
      data.features(i, p) = buffer[p] / 255.0;
    }
    unsigned char raw = 0;
    labels.read(reinterpret_cast<char*>(&raw), 1);
    if (!labels) throw std::runtime_error("idx: truncated file " + labels_path);
    if (raw >= kIdxClasses) {
      throw std::runtime_error("idx: label value " + std::to_string(int(raw)) + " out of range");
    }
    data.labels[i] = int(raw) + 1;
  }
  return data;
}

Dataset synthetic_dataset(int num_classes, int per_class, int dim, double separation,
                          uint64_t seed, Split split) {
  if (num_classes < 2) throw std::invalid_argument("synthetic: need at least 2 classes");
  if (per_class < 1) throw std::invalid_argument("synthetic: per_class must be positive");
  if (dim < num_classes) throw std::invalid_argument("synthetic: dim must be >= num_classes");

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> noise(0.0, 1.0);

  Dataset data;
  data.num_classes = num_classes;
  data.split = split;
  const int count = num_classes * per_class;
  data.features.resize(count, dim);
  data.labels.resize(count);

  int row = 0;
  for (int c = 0; c < num_classes; ++c) {
    for (int k = 0; k < per_class; ++k, ++row) {
      data.labels[row] = c + 1;
      for (int j = 0; j < dim; ++j) {
        data.features(row, j) = (j == c ? separation : 0.0) + noise(rng);
      }
    }
  }
  return data;
}

std::pair<Dataset, Dataset> split_validation(const Dataset& data, int validation_count,
                                             uint64_t seed) {
  if (validation_count < 0 || validation_count >= data.count()) {
    throw std::invalid_argument("split_validation: bad validation count");
  }

  // Per-class index pools, shuffled; validation takes a proportional draw
  // from each class so the class ratios match the input's.
  std::vector<std::vector<int>> by_class(data.num_classes);
  for (int i = 0; i < data.count(); ++i) by_class[data.labels[i] - 1].push_back(i);

  std::mt19937_64 rng(seed);
  std::vector<int> take(data.num_classes, 0);
  int assigned = 0;
  for (int c = 0; c < data.num_classes; ++c) {
    std::shuffle(by_class[c].begin(), by_class[c].end(), rng);
    take[c] = static_cast<int>(static_cast<long long>(validation_count) * by_class[c].size() /
                               data.count());
    assigned += take[c];
  }
  // Distribute the rounding remainder over the largest classes.
  std::vector<int> order(data.num_classes);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return by_class[a].size() > by_class[b].size(); });
  for (int k = 0; assigned < validation_count; ++k) {
    int c = order[k % data.num_classes];
    if (take[c] < static_cast<int>(by_class[c].size())) {
      ++take[c];
      ++assigned;
    }
  }

  std::vector<int> val_indices, train_indices;
  for (int c = 0; c < data.num_classes; ++c) {
    for (size_t k = 0; k < by_class[c].size(); ++k) {
      (static_cast<int>(k) < take[c] ? val_indices : train_indices).push_back(by_class[c][k]);
    }
  }
  std::sort(val_indices.begin(), val_indices.end());
  std::sort(train_indices.begin(), train_indices.end());

  auto gather = [&](const std::vector<int>& idx, Split split) {
    Dataset out;
    out.num_classes = data.num_classes;
    out.split = split;
    out.features.resize(idx.size(), data.dim());
    out.labels.resize(idx.size());
    for (size_t r = 0; r < idx.size(); ++r) {
      out.features.row(r) = data.features.row(idx[r]);
      out.labels[r] = data.labels[idx[r]];
    }
    return out;
  };
  return {gather(train_indices, Split::train), gather(val_indices, Split::validation)};
}

}  // namespace dcliques
