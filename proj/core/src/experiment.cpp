#include "dcliques/experiment.hpp"

#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <functional>
#include <ostream>

#include "dcliques/io.hpp"
#include "dcliques/metrics.hpp"
#include "dcliques/seeds.hpp"

namespace dcliques {

namespace {

std::pair<Dataset, Dataset> build_datasets(const ExperimentConfig& config,
                                           std::optional<Dataset>& validation) {
  if (config.source == DatasetSource::idx) {
    Dataset train = load_idx(config.train_images, config.train_labels, Split::train);
    Dataset test = load_idx(config.test_images, config.test_labels, Split::test);
    if (config.validation_count > 0) {
      auto [kept, held_out] = split_validation(
          train, config.validation_count, derive_seed(config.seed, SeedPurpose::validation_split));
      train = std::move(kept);
      validation = std::move(held_out);
    }
    return {std::move(train), std::move(test)};
  }
  Dataset train = synthetic_dataset(config.classes, config.per_class, config.dim,
                                    config.separation,
                                    derive_seed(config.seed, SeedPurpose::synthetic_train),
                                    Split::train);
  Dataset test = synthetic_dataset(config.classes, config.test_per_class, config.dim,
                                   config.separation,
                                   derive_seed(config.seed, SeedPurpose::synthetic_test),
                                   Split::test);
  return {std::move(train), std::move(test)};
}

Partition build_partition(const ExperimentConfig& config, const Dataset& train) {
  uint64_t seed = derive_seed(config.seed, SeedPurpose::partition);
  if (config.scheme == PartitionScheme::shards) {
    return partition_shards(train.labels, config.nodes, config.shards_per_node, seed);
  }
  return partition_single_class(train.labels, train.num_classes, config.nodes, seed);
}

std::string output_directory(const ExperimentConfig& config) {
  if (const char* env = std::getenv("DCLIQUES_OUT"); env && *env) return env;
  return config.output;
}

void write_file(const std::filesystem::path& path, const RunFlags& flags,
                const std::function<void(std::ostream&)>& body, bool comment_header = true) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  if (comment_header && !flags.deterministic) {
    auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    out << "# generated " << std::ctime(&now);
  }
  body(out);
}

}  // namespace

ExperimentSetup build_experiment(const ExperimentConfig& config) {
  ExperimentSetup setup;
  auto [train, test] = build_datasets(config, setup.validation);
  setup.train = std::move(train);
  setup.test = std::move(test);
  setup.partition = build_partition(config, setup.train);

  const uint64_t clique_seed = derive_seed(config.seed, SeedPurpose::clique_construction);
  const uint64_t topo_seed = derive_seed(config.seed, SeedPurpose::topology_random);

  switch (config.kind) {
    case TopologyKind::dcliques: {
      auto dists = node_distributions(setup.partition, setup.train);
      setup.cliques = greedy_swap(dists, config.max_clique_size, config.swap_steps, clique_seed);
      setup.topology =
          build_dcliques_topology(*setup.cliques, config.inter, config.neighborhood);
      if (config.removed_intra > 0) {
        setup.topology =
            remove_intra_edges(setup.topology, *setup.cliques, config.removed_intra, topo_seed);
      }
      break;
    }
    case TopologyKind::ring: setup.topology = baseline_ring(config.nodes); break;
    case TopologyKind::grid: setup.topology = baseline_grid(config.nodes); break;
    case TopologyKind::full: setup.topology = baseline_full(config.nodes); break;
    case TopologyKind::random:
      setup.topology = baseline_random_regular(config.nodes, config.degree, topo_seed);
      break;
  }

  setup.mixing = metropolis_hastings(setup.topology);

  setup.train_config.learning_rate = config.learning_rate;
  setup.train_config.batch_size =
      config.base_nodes > 0 ? scaled_batch_size(config.batch_size, config.base_nodes, config.nodes)
                            : config.batch_size;
  setup.train_config.momentum = config.momentum;
  setup.train_config.clique_averaging = config.clique_averaging;
  setup.train_config.epochs = config.epochs;
  setup.train_config.eval_every = config.eval_every;
  return setup;
}

void run_command(const ExperimentConfig& config, const RunFlags& flags, std::ostream& out) {
  for (const std::string& warning : config.validate()) {
    out << "warning: " << warning << "\n";
  }

  ExperimentSetup setup = build_experiment(config);
  setup.train_config.threads = flags.threads;

  const auto violations = validate(setup.mixing, setup.topology);
  if (!violations.empty()) {
    throw std::runtime_error("mixing matrix failed validation: " + violations[0].condition);
  }

  std::filesystem::path dir = output_directory(config);
  std::filesystem::create_directories(dir);

  write_file(dir / "topology.txt", flags, [&](std::ostream& o) { write_topology(o, setup.topology); });
  write_file(dir / "topology.dot", flags, [&](std::ostream& o) { write_dot(o, setup.topology); },
             false);
  write_file(dir / "partition.txt", flags, [&](std::ostream& o) { write_partition(o, setup.partition); });
  write_file(dir / "mixing.txt", flags, [&](std::ostream& o) { write_mixing(o, setup.mixing); });
  write_file(dir / "cost.csv", flags, [&](std::ostream& o) {
    write_cost_csv(o, cost_report(setup.topology, config.clique_averaging));
  }, false);

  if (setup.cliques) {
    write_file(dir / "cliques.txt", flags, [&](std::ostream& o) { write_cliques(o, *setup.cliques); });
    auto dists = node_distributions(setup.partition, setup.train);
    auto global = global_distribution(setup.partition, setup.train);
    SkewStats stats = skew_stats(*setup.cliques, dists, global);
    write_file(dir / "skew.csv", flags, [&](std::ostream& o) {
      o << "clique,skew\n";
      for (size_t c = 0; c < stats.per_clique.size(); ++c) {
        o << c << "," << stats.per_clique[c] << "\n";
      }
      o << "mean," << stats.mean << "\n";
    }, false);
    write_file(dir / "skew_hist.csv", flags, [&](std::ostream& o) {
      write_skew_hist_csv(o, skew_histogram(stats.per_clique));
    }, false);
  }

  GraphStats stats = graph_stats(setup.topology);
  out << "topology: " << setup.topology.num_nodes() << " nodes, " << stats.edge_count
      << " edges, avg degree " << stats.average_degree
      << (stats.connected ? ", connected" : ", disconnected") << "\n";

  if (flags.dry_run) {
    out << "dry run: skipping training\n";
    return;
  }

  Simulation sim(setup.train, setup.partition, setup.mixing, setup.cliques, &setup.topology,
                 SoftmaxModel{setup.train.num_classes, setup.train.dim()}, setup.train_config,
                 config.seed);
  std::vector<TraceRow> trace = run_to_budget(sim, setup.test);

  write_file(dir / "trace.csv", flags, [&](std::ostream& o) { write_trace_csv(o, trace); }, false);
  write_file(dir / "summary.csv", flags, [&](std::ostream& o) { write_summary_csv(o, trace); },
             false);
  write_file(dir / "checkpoint.txt", flags,
             [&](std::ostream& o) { write_checkpoint(o, sim.states()); }, false);

  out << "epoch,min,max,mean\n";
  for (const TraceRow& row : trace) {
    out << row.epoch << "," << row.min << "," << row.max << "," << row.mean << "\n";
  }
}

namespace {

ExperimentConfig with_overrides(const ExperimentConfig& base, int nodes, InterScheme inter) {
  ExperimentConfig config = base;
  config.nodes = nodes;
  config.inter = inter;
  return config;
}

Topology build_topology_only(const ExperimentConfig& config) {
  // Topology sweeps don't need data: clique contents don't change edge
  // counts, so a chunked assignment stands in for the constructed one.
  const uint64_t topo_seed = derive_seed(config.seed, SeedPurpose::topology_random);
  switch (config.kind) {
    case TopologyKind::dcliques: {
      CliqueAssignment cliques = chunked_cliques(config.nodes, config.max_clique_size);
      Topology topology = build_dcliques_topology(cliques, config.inter, config.neighborhood);
      if (config.removed_intra > 0) {
        topology = remove_intra_edges(topology, cliques, config.removed_intra, topo_seed);
      }
      return topology;
    }
    case TopologyKind::ring: return baseline_ring(config.nodes);
    case TopologyKind::grid: return baseline_grid(config.nodes);
    case TopologyKind::full: return baseline_full(config.nodes);
    case TopologyKind::random:
      return baseline_random_regular(config.nodes, config.degree, topo_seed);
  }
  throw std::invalid_argument("unknown topology kind");
}

}  // namespace

void topo_command(const ExperimentConfig& config, const RunFlags& flags, std::ostream& out) {
  config.validate();

  std::filesystem::path dir = output_directory(config);
  std::filesystem::create_directories(dir);

  std::vector<int> node_counts =
      config.sweep_nodes.empty() ? std::vector<int>{config.nodes} : config.sweep_nodes;
  std::vector<InterScheme> schemes =
      config.sweep_inter.empty() ? std::vector<InterScheme>{config.inter} : config.sweep_inter;

  std::ofstream table(dir / "stats.csv");
  table << "n,inter,edges,avg_degree,connected,diameter,messages_clique_avg\n";
  out << "n,inter,edges,avg_degree,connected,diameter\n";
  for (int nodes : node_counts) {
    for (InterScheme scheme : schemes) {
      ExperimentConfig current = with_overrides(config, nodes, scheme);
      Topology topology = build_topology_only(current);
      MixingMatrix mixing = metropolis_hastings(topology);
      const auto violations = validate(mixing, topology);
      if (!violations.empty()) {
        throw std::runtime_error("mixing matrix failed validation: " + violations[0].condition);
      }
      GraphStats stats = graph_stats(topology);
      CostReport cost = cost_report(topology, true);
      std::string scheme_name =
          current.kind == TopologyKind::dcliques ? to_string(scheme) : "baseline";
      std::string diameter = stats.diameter ? std::to_string(*stats.diameter) : "inf";
      table << nodes << "," << scheme_name << "," << stats.edge_count << ","
            << stats.average_degree << "," << (stats.connected ? 1 : 0) << "," << diameter << ","
            << cost.messages_per_round_per_node << "\n";
      out << nodes << "," << scheme_name << "," << stats.edge_count << ","
          << stats.average_degree << "," << (stats.connected ? 1 : 0) << "," << diameter << "\n";

      if (node_counts.size() == 1 && schemes.size() == 1) {
        write_file(dir / "topology.txt", flags,
                   [&](std::ostream& o) { write_topology(o, topology); });
        write_file(dir / "topology.dot", flags, [&](std::ostream& o) { write_dot(o, topology); },
                   false);
        write_file(dir / "cost.csv", flags, [&](std::ostream& o) { write_cost_csv(o, cost); },
                   false);
      }
    }
  }
}

}  // namespace dcliques
