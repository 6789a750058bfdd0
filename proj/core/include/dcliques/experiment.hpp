#pragma once

#include <iosfwd>
#include <optional>
#include <string>

#include "dcliques/config.hpp"
#include "dcliques/dataset.hpp"
#include "dcliques/mixing.hpp"
#include "dcliques/partition.hpp"
#include "dcliques/training.hpp"

namespace dcliques {

struct RunFlags {
  bool dry_run = false;
  bool deterministic = false;  // suppress the timestamp header in output files
  int threads = 1;
};

/// Everything `run` needs, built from a config and its master seed.
struct ExperimentSetup {
  Dataset train;
  Dataset test;
  std::optional<Dataset> validation;
  Partition partition;
  std::optional<CliqueAssignment> cliques;
  Topology topology{0};
  MixingMatrix mixing;
  TrainConfig train_config;
};

ExperimentSetup build_experiment(const ExperimentConfig& config);

/// `run` subcommand: builds the experiment, writes topology/clique/skew/cost
/// artifacts, trains unless dry_run, and writes trace/summary/checkpoint.
/// Prints the summary trace to `out`.
void run_command(const ExperimentConfig& config, const RunFlags& flags, std::ostream& out);

/// `topo` subcommand: topology-only build, validate, export and stats; also
/// handles sweeps over node counts and inter-clique schemes.
void topo_command(const ExperimentConfig& config, const RunFlags& flags, std::ostream& out);

}  // namespace dcliques
