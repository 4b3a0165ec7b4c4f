#include "qnet/config.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace qnet;
using nlohmann::json;

namespace {

json minimal() {
  return json::parse(R"({"topology": {"kind": "lattice", "rows": 4, "cols": 4}, "seed": 3})");
}

std::string error_key(const json& doc) {
  try {
    (void)parse_config(doc);
  } catch (const ConfigError& e) {
    return e.key();
  }
  return "<none>";
}

}  // namespace

TEST(Config, Defaults) {
  const auto cfg = parse_config(minimal());
  ASSERT_EQ(cfg.topologies.size(), 1u);
  EXPECT_EQ(cfg.topologies[0].name, "lattice");
  EXPECT_EQ(cfg.layers, 3u);
  EXPECT_EQ(cfg.max_paths, 3u);
  EXPECT_EQ(cfg.trials, 500u);
  EXPECT_EQ(cfg.memory_costs, default_memory_sweep());
  EXPECT_TRUE(cfg.users.empty());
  EXPECT_EQ(cfg.seed, 3u);
  const auto ec = experiment_for(cfg, 16);
  EXPECT_EQ(ec.user_counts.size(), 8u);
  EXPECT_EQ(scatter_users_for(cfg, ec), (std::vector<std::size_t>{1, 8}));
}

TEST(Config, ErrorsNameTheKey) {
  auto doc = minimal();
  doc["sweep"] = {{"trails", 5}};
  EXPECT_EQ(error_key(doc), "sweep.trails");

  doc = minimal();
  doc["topology"].erase("cols");
  EXPECT_EQ(error_key(doc), "topology.cols");

  doc = minimal();
  doc["temporal"] = {{"layers", 0}};
  EXPECT_EQ(error_key(doc), "temporal.layers");

  doc = minimal();
  doc["temporal"] = {{"memory_costs", {{0.1, -0.2}}}};
  EXPECT_EQ(error_key(doc), "temporal.memory_costs[0]");

  doc = minimal();
  doc["routing"] = {{"scalarization", "max"}};
  EXPECT_EQ(error_key(doc), "routing.scalarization");

  doc = minimal();
  doc["sweep"] = {{"users", {9}}};
  EXPECT_EQ(error_key(doc), "sweep.users");

  doc = minimal();
  doc["topology"]["kind"] = "ring";
  EXPECT_EQ(error_key(doc), "topology.kind");

  doc = minimal();
  doc["topology"] = json::array({minimal()["topology"], minimal()["topology"]});
  EXPECT_EQ(error_key(doc), "topology[1].name");

  doc = minimal();
  doc["seed"] = -1;
  EXPECT_EQ(error_key(doc), "seed");
}

TEST(Config, MemorySweepAndRanges) {
  auto doc = minimal();
  doc["temporal"] = {{"memory_sweep", {{"from", 0.2}, {"to", 0.6}, {"steps", 3}}}};
  doc["sweep"] = {{"users", {{"from", 2}, {"to", 5}}}};
  const auto cfg = parse_config(doc);
  ASSERT_EQ(cfg.memory_costs.size(), 3u);
  EXPECT_DOUBLE_EQ(cfg.memory_costs[1].loss_db(), 0.4);
  EXPECT_EQ(cfg.users, (std::vector<std::size_t>{2, 3, 4, 5}));
}

TEST(Config, SeedFromEnvironment) {
  auto doc = minimal();
  doc.erase("seed");
  ::setenv("QNET_SEED", "42", 1);
  EXPECT_EQ(parse_config(doc).seed, 42u);
  ::setenv("QNET_SEED", "x", 1);
  EXPECT_EQ(error_key(doc), "QNET_SEED");
  ::unsetenv("QNET_SEED");
  EXPECT_EQ(parse_config(doc).seed, 1u);
}

TEST(Config, EchoRoundTripAndHash) {
  auto doc = minimal();
  doc["topology"] = json::array(
      {{{"kind", "connected-tree"}, {"branches", {3, 2}}, {"edge_cost", {0.2, 0.1}}},
       {{"kind", "complete"}, {"nodes", 6}}});
  doc["sweep"] = {{"users", {1, 2}}, {"trials", 7}, {"scatter_users", {2}}};
  const auto cfg = parse_config(doc);
  const auto again = parse_config(echo(cfg));
  EXPECT_EQ(echo(again), echo(cfg));
  EXPECT_EQ(config_hash(again), config_hash(cfg));
  EXPECT_EQ(config_hash(cfg).size(), 16u);

  auto other = cfg;
  other.seed += 1;
  EXPECT_NE(config_hash(other), config_hash(cfg));
  other = cfg;
  other.trials += 1;
  EXPECT_NE(config_hash(other), config_hash(cfg));
  other = cfg;
  other.topologies[0].edge_cost = CostVector(0.2, 0.2);
  EXPECT_NE(config_hash(other), config_hash(cfg));
}

TEST(Config, BuildTopology) {
  TopologySpec spec;
  spec.kind = TopologyKind::ConnectedTree;
  spec.branches = {3, 2, 3, 2};
  const auto g = build_topology(spec);
  EXPECT_EQ(g.node_count(), 64u);
  EXPECT_EQ(g.edge_count(), 126u);
  EXPECT_EQ(parse_topology_kind("mst"), TopologyKind::GeoMst);
  EXPECT_FALSE(parse_topology_kind("star").has_value());
}
