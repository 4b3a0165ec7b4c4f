#pragma once

#include "qnet/analytics.hpp"
#include "qnet/topology.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnet {

/// Invalid run configuration; what() starts with the offending key path.
class ConfigError : public std::runtime_error {
public:
  ConfigError(const std::string& key, const std::string& reason)
      : std::runtime_error(key + ": " + reason), key_(key) {}
  [[nodiscard]] const std::string& key() const { return key_; }

private:
  std::string key_;
};

enum class TopologyKind { Complete, Lattice, Tree, ConnectedTree, GeoMst, GeoComplete };

struct TopologySpec {
  std::string name;
  TopologyKind kind = TopologyKind::ConnectedTree;
  std::size_t nodes = 0;  ///< complete
  std::size_t rows = 0;   ///< lattice
  std::size_t cols = 0;
  std::vector<unsigned> branches;  ///< tree, connected-tree
  std::filesystem::path coords;    ///< geo-*; relative to the config file
  CostVector edge_cost{0.1, 0.1};
  CostVector cost_per_km{0.1, 0.1};
};

[[nodiscard]] std::string to_string(TopologyKind kind);
/// Accepts the names printed by to_string plus "mst" for GeoMst.
[[nodiscard]] std::optional<TopologyKind> parse_topology_kind(
    const std::string& name);

[[nodiscard]] NetworkGraph build_topology(const TopologySpec& spec);

struct RunConfig {
  std::string name = "run";
  std::vector<TopologySpec> topologies;
  unsigned layers = 3;
  std::vector<CostVector> memory_costs = default_memory_sweep();
  unsigned max_paths = 3;
  Scalarization scalarization = Scalarization::Sum;
  /// Empty means 1..floor(|V|/2) for each topology.
  std::vector<std::size_t> users;
  std::size_t trials = 500;
  /// M values whose per-pair points go to the scatter file; empty means the
  /// smallest and largest swept M.
  std::vector<std::size_t> scatter_users;
  std::uint64_t seed = 1;
};

/// Seed used when the config has no "seed" key: $QNET_SEED if set, else 1.
[[nodiscard]] std::uint64_t default_seed();

/// Relative coordinate paths are resolved against `base_dir`.
[[nodiscard]] RunConfig parse_config(const nlohmann::json& doc,
                                     const std::filesystem::path& base_dir = {});
[[nodiscard]] RunConfig load_config(const std::filesystem::path& path);

/// Fully resolved form (every default filled in); parse_config(echo(c))
/// reproduces c.
[[nodiscard]] nlohmann::json echo(const RunConfig& cfg);

/// 64-bit FNV-1a of the compact echo, as 16 hex digits.
[[nodiscard]] std::string config_hash(const RunConfig& cfg);

/// Experiment settings for one topology with `node_count` nodes.
[[nodiscard]] ExperimentConfig experiment_for(const RunConfig& cfg,
                                              std::size_t node_count);

/// The scatter M values that are actually swept in `experiment`.
[[nodiscard]] std::vector<std::size_t> scatter_users_for(
    const RunConfig& cfg, const ExperimentConfig& experiment);

}  // namespace qnet
