#pragma once

#include <Eigen/Core>

#include <cstdint>
#include <optional>
#include <random>
#include <stdexcept>
#include <vector>

#include "dcliques/metrics.hpp"
#include "dcliques/mixing.hpp"
#include "dcliques/model.hpp"
#include "dcliques/partition.hpp"

namespace dcliques {

struct TrainConfig {
  double learning_rate = 0.1;
  int batch_size = 128;
  double momentum = 0.0;  // 0 disables the momentum buffer entirely
  bool clique_averaging = false;
  double epochs = 1.0;
  double eval_every = 1.0;  // in epochs
  int threads = 1;
};

/// Batch size scaled so the number of rounds per epoch stays constant across
/// node counts: round(base_batch * base_nodes / nodes), at least 1.
int scaled_batch_size(int base_batch, int base_nodes, int nodes);

struct NodeState {
  Eigen::VectorXd params;
  Eigen::VectorXd momentum_buffer;
  std::mt19937_64 rng;
  std::vector<int> order;  // local example indices, reshuffled each epoch
  size_t cursor = 0;
};

class DivergenceError : public std::runtime_error {
 public:
  DivergenceError(int node, long round);
  int node;
  long round;
};

struct StepDiagnostics {
  bool capture_means = false;
  bool capture_gradients = false;
  Eigen::VectorXd halfstep_mean;               // node-mean after the gradient step
  Eigen::VectorXd postavg_mean;                // node-mean after model averaging
  std::vector<Eigen::VectorXd> step_gradients;  // per-node direction actually applied
};

/// Synchronous in-process simulation of D-SGD rounds over a topology, with
/// optional Clique Averaging and clique-averaged momentum.
///
/// Round semantics: all nodes compute gradients at their pre-round
/// parameters, take the local (half-)step, then average the half-step
/// parameters of all neighbors under W. Per-node work is deterministic and
/// reductions iterate in ascending node id, so results are bit-identical
/// regardless of the worker thread count.
class Simulation {
 public:
  Simulation(const Dataset& train, Partition partition, MixingMatrix mixing,
             std::optional<CliqueAssignment> cliques, const Topology* topology,
             SoftmaxModel model, TrainConfig config, uint64_t seed);

  /// One round of Algorithm "D-SGD" or, when the config enables it, of
  /// "D-SGD with Clique Averaging". Throws DivergenceError on NaN/Inf.
  void step(StepDiagnostics* diag = nullptr);

  void dsgd_round(StepDiagnostics* diag = nullptr);
  void clique_avg_round(StepDiagnostics* diag = nullptr);

  TraceRow evaluate(const Dataset& test) const;

  double epoch() const { return epoch_progress_; }
  long rounds_done() const { return rounds_; }
  int num_nodes() const { return static_cast<int>(states_.size()); }
  const std::vector<NodeState>& states() const { return states_; }
  const TrainConfig& config() const { return config_; }

 private:
  std::vector<int> draw_batch(int node);
  void finalize_round(StepDiagnostics* diag, const std::vector<Eigen::VectorXd>& halfstep,
                      int batch_total);

  const Dataset& train_;
  Partition partition_;
  MixingMatrix mixing_;
  std::optional<CliqueAssignment> cliques_;
  std::vector<std::vector<int>> gradient_groups_;  // clique members reachable from each node
  SoftmaxModel model_;
  TrainConfig config_;
  std::vector<NodeState> states_;
  long rounds_ = 0;
  double epoch_progress_ = 0.0;
};

/// Runs rounds until the configured epoch budget, evaluating at the
/// configured cadence (always at epoch 0 and after the final round). Returns
/// one row per evaluation.
std::vector<TraceRow> run_to_budget(Simulation& sim, const Dataset& test);

/// Convenience wrapper owning the Simulation.
std::vector<TraceRow> run_experiment(const Dataset& train, const Dataset& test,
                                     const Partition& partition, const Topology& topology,
                                     const MixingMatrix& mixing,
                                     const std::optional<CliqueAssignment>& cliques,
                                     const TrainConfig& config, uint64_t seed);

}  // namespace dcliques
