#include "dcliques/config.hpp"

#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace dcliques {

namespace {

std::string trim(const std::string& s) {
  size_t begin = s.find_first_not_of(" \t\r");
  size_t end = s.find_last_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  return s.substr(begin, end - begin + 1);
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    int parsed = std::stoi(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("config: bad integer for key '" + key + "': " + value);
  }
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    double parsed = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("config: bad number for key '" + key + "': " + value);
  }
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config: bad boolean for key '" + key + "': " + value);
}

uint64_t parse_u64(const std::string& key, const std::string& value) {
  try {
    size_t used = 0;
    uint64_t parsed = std::stoull(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
    return parsed;
  } catch (const std::exception&) {
    throw ConfigError("config: bad seed for key '" + key + "': " + value);
  }
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream stream(value);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
  ExperimentConfig config;

  std::map<std::string, std::function<void(const std::string&, const std::string&)>> handlers = {
      {"dataset.source",
       [&](const std::string& k, const std::string& v) {
         if (v == "synthetic") config.source = DatasetSource::synthetic;
         else if (v == "idx") config.source = DatasetSource::idx;
         else throw ConfigError("config: bad value for key '" + k + "': " + v);
       }},
      {"dataset.train_images", [&](const std::string&, const std::string& v) { config.train_images = v; }},
      {"dataset.train_labels", [&](const std::string&, const std::string& v) { config.train_labels = v; }},
      {"dataset.test_images", [&](const std::string&, const std::string& v) { config.test_images = v; }},
      {"dataset.test_labels", [&](const std::string&, const std::string& v) { config.test_labels = v; }},
      {"dataset.validation", [&](const std::string& k, const std::string& v) { config.validation_count = parse_int(k, v); }},
      {"dataset.classes", [&](const std::string& k, const std::string& v) { config.classes = parse_int(k, v); }},
      {"dataset.per_class", [&](const std::string& k, const std::string& v) { config.per_class = parse_int(k, v); }},
      {"dataset.test_per_class", [&](const std::string& k, const std::string& v) { config.test_per_class = parse_int(k, v); }},
      {"dataset.dim", [&](const std::string& k, const std::string& v) { config.dim = parse_int(k, v); }},
      {"dataset.separation", [&](const std::string& k, const std::string& v) { config.separation = parse_double(k, v); }},
      {"partition.scheme",
       [&](const std::string& k, const std::string& v) {
         if (v == "shards") config.scheme = PartitionScheme::shards;
         else if (v == "single_class") config.scheme = PartitionScheme::single_class;
         else throw ConfigError("config: bad value for key '" + k + "': " + v);
       }},
      {"partition.shards_per_node", [&](const std::string& k, const std::string& v) { config.shards_per_node = parse_int(k, v); }},
      {"n", [&](const std::string& k, const std::string& v) { config.nodes = parse_int(k, v); }},
      {"topology.kind",
       [&](const std::string& k, const std::string& v) {
         if (v == "dcliques") config.kind = TopologyKind::dcliques;
         else if (v == "ring") config.kind = TopologyKind::ring;
         else if (v == "grid") config.kind = TopologyKind::grid;
         else if (v == "full") config.kind = TopologyKind::full;
         else if (v == "random") config.kind = TopologyKind::random;
         else throw ConfigError("config: bad value for key '" + k + "': " + v);
       }},
      {"topology.M", [&](const std::string& k, const std::string& v) { config.max_clique_size = parse_int(k, v); }},
      {"topology.K", [&](const std::string& k, const std::string& v) { config.swap_steps = parse_int(k, v); }},
      {"topology.inter",
       [&](const std::string& k, const std::string& v) {
         try {
           config.inter = inter_scheme_from_string(v);
         } catch (const std::exception&) {
           throw ConfigError("config: bad value for key '" + k + "': " + v);
         }
       }},
      {"topology.ns", [&](const std::string& k, const std::string& v) { config.neighborhood = parse_int(k, v); }},
      {"topology.removed_intra", [&](const std::string& k, const std::string& v) { config.removed_intra = parse_int(k, v); }},
      {"topology.degree", [&](const std::string& k, const std::string& v) { config.degree = parse_int(k, v); }},
      {"training.lr", [&](const std::string& k, const std::string& v) { config.learning_rate = parse_double(k, v); }},
      {"training.batch", [&](const std::string& k, const std::string& v) { config.batch_size = parse_int(k, v); }},
      {"training.base_n", [&](const std::string& k, const std::string& v) { config.base_nodes = parse_int(k, v); }},
      {"training.momentum", [&](const std::string& k, const std::string& v) { config.momentum = parse_double(k, v); }},
      {"training.clique_averaging", [&](const std::string& k, const std::string& v) { config.clique_averaging = parse_bool(k, v); }},
      {"training.epochs", [&](const std::string& k, const std::string& v) { config.epochs = parse_double(k, v); }},
      {"training.eval_every", [&](const std::string& k, const std::string& v) { config.eval_every = parse_double(k, v); }},
      {"seed", [&](const std::string& k, const std::string& v) { config.seed = parse_u64(k, v); }},
      {"output", [&](const std::string&, const std::string& v) { config.output = v; }},
      {"sweep.n",
       [&](const std::string& k, const std::string& v) {
         config.sweep_nodes.clear();
         for (const auto& item : split_list(v)) config.sweep_nodes.push_back(parse_int(k, item));
       }},
      {"sweep.inter",
       [&](const std::string& k, const std::string& v) {
         config.sweep_inter.clear();
         for (const auto& item : split_list(v)) {
           try {
             config.sweep_inter.push_back(inter_scheme_from_string(item));
           } catch (const std::exception&) {
             throw ConfigError("config: bad value for key '" + k + "': " + item);
           }
         }
       }},
  };

  std::istringstream stream(text);
  std::string line;
  int line_number = 0;
  while (std::getline(stream, line)) {
    ++line_number;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config: line " + std::to_string(line_number) + " is not key=value");
    }
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    auto handler = handlers.find(key);
    if (handler == handlers.end()) throw ConfigError("config: unknown key '" + key + "'");
    handler->second(key, value);
  }
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str());
}

std::vector<std::string> ExperimentConfig::validate() const {
  std::vector<std::string> warnings;

  if (nodes < 1) throw ConfigError("config: n must be positive");
  if (clique_averaging && kind != TopologyKind::dcliques) {
    throw ConfigError("config: training.clique_averaging requires topology.kind=dcliques");
  }
  if (source == DatasetSource::idx) {
    if (train_images.empty() || train_labels.empty()) {
      throw ConfigError("config: dataset.train_images and dataset.train_labels required for idx");
    }
    if (test_images.empty() || test_labels.empty()) {
      throw ConfigError("config: dataset.test_images and dataset.test_labels required for idx");
    }
  }
  if (kind == TopologyKind::dcliques && max_clique_size < 1) {
    throw ConfigError("config: topology.M must be positive");
  }
  if (learning_rate <= 0) throw ConfigError("config: training.lr must be positive");
  if (batch_size < 1) throw ConfigError("config: training.batch must be positive");
  if (momentum < 0 || momentum >= 1) throw ConfigError("config: training.momentum must be in [0,1)");
  if (epochs < 0) throw ConfigError("config: training.epochs must be nonnegative");
  if (eval_every <= 0) throw ConfigError("config: training.eval_every must be positive");

  if (momentum != 0.0 && !clique_averaging) {
    warnings.push_back(
        "momentum without clique averaging biases updates under label skew and can diverge");
  }
  return warnings;
}

}  // namespace dcliques
