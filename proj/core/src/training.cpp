#include "dcliques/training.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "dcliques/seeds.hpp"

namespace dcliques {

int scaled_batch_size(int base_batch, int base_nodes, int nodes) {
  if (base_batch < 1 || base_nodes < 1 || nodes < 1) {
    throw std::invalid_argument("scaled_batch_size: positive arguments required");
  }
  double scaled = static_cast<double>(base_batch) * base_nodes / nodes;
  return std::max(1, static_cast<int>(std::lround(scaled)));
}

DivergenceError::DivergenceError(int node, long round)
    : std::runtime_error("non-finite parameters at node " + std::to_string(node) + " in round " +
                         std::to_string(round)),
      node(node),
      round(round) {}

namespace {

// Contiguous-chunk parallel loop. Each index is processed exactly once by
// some worker; per-index work must only touch index-owned state, so the
// result does not depend on the worker count.
void parallel_for(int count, int threads, const std::function<void(int)>& body) {
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  const int chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    const int begin = t * chunk;
    const int end = std::min(begin + chunk, count);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      for (int i = begin; i < end; ++i) body(i);
    });
  }
  for (auto& worker : pool) worker.join();
}

}  // namespace

Simulation::Simulation(const Dataset& train, Partition partition, MixingMatrix mixing,
                       std::optional<CliqueAssignment> cliques, const Topology* topology,
                       SoftmaxModel model, TrainConfig config, uint64_t seed)
    : train_(train),
      partition_(std::move(partition)),
      mixing_(std::move(mixing)),
      cliques_(std::move(cliques)),
      model_(model),
      config_(config) {
  const int n = partition_.num_nodes();
  if (mixing_.size() != n) throw std::invalid_argument("simulation: mixing size mismatch");
  for (const auto& list : partition_.node_examples) {
    if (list.empty()) throw std::invalid_argument("simulation: empty node");
  }
  if (config_.clique_averaging) {
    if (!cliques_) throw std::invalid_argument("simulation: clique averaging without cliques");
    cliques_->check(n);
    // Gradients flow only along remaining intra-clique edges: node i averages
    // over clique members that are still its graph neighbors, plus itself.
    std::vector<int> clique_of = cliques_->clique_index(n);
    gradient_groups_.resize(n);
    for (int i = 0; i < n; ++i) {
      for (int j : cliques_->cliques[clique_of[i]]) {
        if (j == i || topology == nullptr || topology->has_edge(i, j)) {
          gradient_groups_[i].push_back(j);
        }
      }
    }
  }

  // All nodes share the zero initialization so consensus gaps are meaningful
  // from round 0.
  states_.resize(n);
  for (int i = 0; i < n; ++i) {
    states_[i].params = model_.zero_params();
    states_[i].momentum_buffer = model_.zero_params();
    states_[i].rng.seed(derive_seed(seed, SeedPurpose::node_stream, i));
    states_[i].order = partition_.node_examples[i];
    std::shuffle(states_[i].order.begin(), states_[i].order.end(), states_[i].rng);
  }
}

std::vector<int> Simulation::draw_batch(int node) {
  NodeState& state = states_[node];
  const size_t remaining = state.order.size() - state.cursor;
  const size_t take = std::min<size_t>(config_.batch_size, remaining);
  std::vector<int> batch(state.order.begin() + state.cursor,
                         state.order.begin() + state.cursor + take);
  state.cursor += take;
  if (state.cursor == state.order.size()) {
    std::shuffle(state.order.begin(), state.order.end(), state.rng);
    state.cursor = 0;
  }
  return batch;
}

void Simulation::finalize_round(StepDiagnostics* diag,
                                const std::vector<Eigen::VectorXd>& halfstep, int batch_total) {
  const int n = num_nodes();
  for (int i = 0; i < n; ++i) {
    if (!halfstep[i].allFinite()) throw DivergenceError(i, rounds_ + 1);
  }
  if (diag && diag->capture_means) {
    diag->halfstep_mean = model_.zero_params();
    for (int i = 0; i < n; ++i) diag->halfstep_mean += halfstep[i];
    diag->halfstep_mean /= n;
  }

  // theta_i <- sum_j W(j,i) * theta_half_j; W is symmetric, so row i of W
  // holds the incoming weights. Ascending-j accumulation keeps the result
  // independent of the worker count.
  std::vector<Eigen::VectorXd> updated(n);
  parallel_for(n, config_.threads, [&](int i) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(model_.param_count());
    for (const auto& [j, w] : mixing_.row_entries(i)) acc += w * halfstep[j];
    updated[i] = std::move(acc);
  });
  for (int i = 0; i < n; ++i) {
    if (!updated[i].allFinite()) throw DivergenceError(i, rounds_ + 1);
    states_[i].params = std::move(updated[i]);
  }
  if (diag && diag->capture_means) {
    diag->postavg_mean = model_.zero_params();
    for (int i = 0; i < n; ++i) diag->postavg_mean += states_[i].params;
    diag->postavg_mean /= n;
  }

  ++rounds_;
  epoch_progress_ += static_cast<double>(batch_total) / train_.count();
}

void Simulation::dsgd_round(StepDiagnostics* diag) {
  const int n = num_nodes();
  std::vector<std::vector<int>> batches(n);
  for (int i = 0; i < n; ++i) batches[i] = draw_batch(i);  // mutates rng, stays serial

  std::vector<Eigen::VectorXd> halfstep(n);
  std::vector<Eigen::VectorXd> applied(diag && diag->capture_gradients ? n : 0);
  parallel_for(n, config_.threads, [&](int i) {
    Eigen::VectorXd grad = batch_gradient(model_, states_[i].params, train_, batches[i]);
    if (config_.momentum != 0.0) {
      states_[i].momentum_buffer = config_.momentum * states_[i].momentum_buffer + grad;
      grad = states_[i].momentum_buffer;
    }
    halfstep[i] = states_[i].params - config_.learning_rate * grad;
    if (!applied.empty()) applied[i] = grad;
  });
  if (diag && diag->capture_gradients) diag->step_gradients = std::move(applied);

  int batch_total = 0;
  for (const auto& batch : batches) batch_total += static_cast<int>(batch.size());
  finalize_round(diag, halfstep, batch_total);
}

void Simulation::clique_avg_round(StepDiagnostics* diag) {
  if (!cliques_) throw std::invalid_argument("clique_avg_round: no clique assignment");
  const int n = num_nodes();
  std::vector<std::vector<int>> batches(n);
  for (int i = 0; i < n; ++i) batches[i] = draw_batch(i);

  // Phase 1: local gradients at the pre-round parameters.
  std::vector<Eigen::VectorXd> local_grad(n);
  parallel_for(n, config_.threads, [&](int i) {
    local_grad[i] = batch_gradient(model_, states_[i].params, train_, batches[i]);
  });

  // Phase 2: clique-averaged gradients, momentum, half-step.
  std::vector<Eigen::VectorXd> halfstep(n);
  std::vector<Eigen::VectorXd> applied(diag && diag->capture_gradients ? n : 0);
  parallel_for(n, config_.threads, [&](int i) {
    Eigen::VectorXd avg = Eigen::VectorXd::Zero(model_.param_count());
    for (int j : gradient_groups_[i]) avg += local_grad[j];
    avg /= static_cast<double>(gradient_groups_[i].size());
    if (config_.momentum != 0.0) {
      states_[i].momentum_buffer = config_.momentum * states_[i].momentum_buffer + avg;
      avg = states_[i].momentum_buffer;
    }
    halfstep[i] = states_[i].params - config_.learning_rate * avg;
    if (!applied.empty()) applied[i] = avg;
  });
  if (diag && diag->capture_gradients) diag->step_gradients = std::move(applied);

  int batch_total = 0;
  for (const auto& batch : batches) batch_total += static_cast<int>(batch.size());
  finalize_round(diag, halfstep, batch_total);
}

void Simulation::step(StepDiagnostics* diag) {
  if (config_.clique_averaging) {
    clique_avg_round(diag);
  } else {
    dsgd_round(diag);
  }
}

TraceRow Simulation::evaluate(const Dataset& test) const {
  const int n = num_nodes();
  std::vector<double> accs(n);
  parallel_for(n, config_.threads,
               [&](int i) { accs[i] = accuracy(model_, states_[i].params, test); });
  return make_trace_row(epoch_progress_, std::move(accs));
}

std::vector<TraceRow> run_to_budget(Simulation& sim, const Dataset& test) {
  constexpr double kEps = 1e-9;
  const TrainConfig& config = sim.config();
  std::vector<TraceRow> trace;
  trace.push_back(sim.evaluate(test));
  double next_eval = config.eval_every;
  while (sim.epoch() + kEps < config.epochs) {
    sim.step();
    if (sim.epoch() + kEps >= next_eval) {
      trace.push_back(sim.evaluate(test));
      while (next_eval <= sim.epoch() + kEps) next_eval += config.eval_every;
    }
  }
  if (trace.back().epoch != sim.epoch()) trace.push_back(sim.evaluate(test));
  return trace;
}

std::vector<TraceRow> run_experiment(const Dataset& train, const Dataset& test,
                                     const Partition& partition, const Topology& topology,
                                     const MixingMatrix& mixing,
                                     const std::optional<CliqueAssignment>& cliques,
                                     const TrainConfig& config, uint64_t seed) {
  SoftmaxModel model{train.num_classes, train.dim()};
  Simulation sim(train, partition, mixing, cliques, &topology, model, config, seed);
  return run_to_budget(sim, test);
}

}  // namespace dcliques
