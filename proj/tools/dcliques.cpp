#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "dcliques/config.hpp"
#include "dcliques/experiment.hpp"
#include "dcliques/training.hpp"

int main(int argc, char** argv) {
  CLI::App app{"D-Cliques topology construction and decentralized SGD simulator"};
  app.require_subcommand(1);

  std::string config_path;
  dcliques::RunFlags flags;

  CLI::App* run = app.add_subcommand("run", "Run a full experiment from a config file");
  run->add_option("config", config_path, "key=value config file")->required();
  run->add_flag("--dry-run", flags.dry_run, "build topology and mixing matrix, skip training");
  run->add_flag("--deterministic", flags.deterministic, "suppress timestamp headers in outputs");
  run->add_option("--threads", flags.threads, "worker threads for the simulation");

  CLI::App* topo = app.add_subcommand("topo", "Build and analyze topologies only");
  topo->add_option("config", config_path, "key=value config file")->required();
  topo->add_flag("--deterministic", flags.deterministic, "suppress timestamp headers in outputs");

  CLI11_PARSE(app, argc, argv);

  try {
    dcliques::ExperimentConfig config = dcliques::parse_config_file(config_path);
    if (app.got_subcommand(run)) {
      dcliques::run_command(config, flags, std::cout);
    } else {
      dcliques::topo_command(config, flags, std::cout);
    }
  } catch (const dcliques::DivergenceError& e) {
    std::cerr << "error: divergence: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
