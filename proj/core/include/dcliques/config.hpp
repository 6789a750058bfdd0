#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "dcliques/topology.hpp"

namespace dcliques {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message) : std::runtime_error(message) {}
};

enum class DatasetSource { synthetic, idx };
enum class PartitionScheme { shards, single_class };
enum class TopologyKind { dcliques, ring, grid, full, random };

/// Declarative experiment description parsed from flat `section.key=value`
/// text. Unknown keys are rejected by name.
struct ExperimentConfig {
  // dataset
  DatasetSource source = DatasetSource::synthetic;
  std::string train_images, train_labels, test_images, test_labels;  // idx
  int validation_count = 0;                                          // idx: carved from train
  int classes = 10;                                                  // synthetic
  int per_class = 100;
  int test_per_class = 100;
  int dim = 20;
  double separation = 5.0;

  // partition
  PartitionScheme scheme = PartitionScheme::shards;
  int shards_per_node = 2;

  int nodes = 100;

  // topology
  TopologyKind kind = TopologyKind::dcliques;
  int max_clique_size = 10;  // M
  int swap_steps = 1000;     // K
  InterScheme inter = InterScheme::fully;
  int neighborhood = 2;  // ns, smallworld only
  int removed_intra = 0;
  int degree = 10;  // random baseline

  // training
  double learning_rate = 0.1;
  int batch_size = 128;
  int base_nodes = 0;  // >0: scale batch_size from this reference node count
  double momentum = 0.0;
  bool clique_averaging = false;
  double epochs = 1.0;
  double eval_every = 1.0;

  uint64_t seed = 1;
  std::string output = "out";

  // topo-subcommand sweeps
  std::vector<int> sweep_nodes;
  std::vector<InterScheme> sweep_inter;

  /// Cross-field validation. Returns non-fatal warnings; throws ConfigError
  /// on hard violations (e.g. clique averaging on a baseline topology).
  std::vector<std::string> validate() const;
};

ExperimentConfig parse_config_file(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text);

}  // namespace dcliques
