#include "qnet/config.hpp"

#include "qnet/io.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>

namespace qnet {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) {
    throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
  }
  for (const auto& [key, value] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(),
                     [&key](const char* a) { return key == a; })) {
      throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
    }
  }
}

std::uint64_t get_uint(const json& v, const std::string& key,
                       std::uint64_t min = 0) {
  if (!v.is_number_integer() ||
      (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    throw ConfigError(key, "expected a non-negative integer");
  }
  const auto x = v.get<std::uint64_t>();
  if (x < min) {
    throw ConfigError(key, "must be >= " + std::to_string(min));
  }
  return x;
}

double get_number(const json& v, const std::string& key) {
  if (!v.is_number()) {
    throw ConfigError(key, "expected a number");
  }
  return v.get<double>();
}

CostVector get_cost(const json& v, const std::string& key) {
  try {
    if (v.is_number()) {
      const double x = v.get<double>();
      return {x, x};
    }
    if (v.is_array() && v.size() == 2) {
      return {get_number(v[0], key + "[0]"), get_number(v[1], key + "[1]")};
    }
  } catch (const std::domain_error& e) {
    throw ConfigError(key, e.what());
  }
  throw ConfigError(key, "expected a number or [loss_db, z_db]");
}

json cost_json(const CostVector& c) { return json::array({c.loss_db(), c.z_db()}); }

std::vector<std::size_t> get_counts(const json& v, const std::string& key,
                                    std::uint64_t min) {
  if (!v.is_array() || v.empty()) {
    throw ConfigError(key, "expected a non-empty list of integers");
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out.push_back(get_uint(v[i], key + "[" + std::to_string(i) + "]", min));
  }
  return out;
}

std::vector<std::size_t> get_range(const json& v, const std::string& key) {
  check_keys(v, key, {"from", "to"});
  if (!v.contains("from") || !v.contains("to")) {
    throw ConfigError(key, "range needs 'from' and 'to'");
  }
  const auto from = get_uint(v["from"], key + ".from", 1);
  const auto to = get_uint(v["to"], key + ".to", 1);
  if (to < from) {
    throw ConfigError(key, "'to' is smaller than 'from'");
  }
  std::vector<std::size_t> out;
  for (auto m = from; m <= to; ++m) {
    out.push_back(m);
  }
  return out;
}

TopologySpec parse_topology(const json& t, const std::string& key,
                            const std::filesystem::path& base_dir) {
  check_keys(t, key, {"name", "kind", "nodes", "rows", "cols", "branches",
                      "coords", "edge_cost", "cost_per_km"});
  TopologySpec spec;
  if (!t.contains("kind") || !t["kind"].is_string()) {
    throw ConfigError(key + ".kind", "required string");
  }
  const auto kind = parse_topology_kind(t["kind"].get<std::string>());
  if (!kind) {
    throw ConfigError(key + ".kind",
                      "unknown topology '" + t["kind"].get<std::string>() + "'");
  }
  spec.kind = *kind;
  auto need = [&](const char* field) -> const json& {
    if (!t.contains(field)) {
      throw ConfigError(key + "." + field,
                        "required for kind " + to_string(spec.kind));
    }
    return t[field];
  };
  switch (spec.kind) {
    case TopologyKind::Complete:
      spec.nodes = get_uint(need("nodes"), key + ".nodes", 2);
      break;
    case TopologyKind::Lattice:
      spec.rows = get_uint(need("rows"), key + ".rows", 1);
      spec.cols = get_uint(need("cols"), key + ".cols", 1);
      break;
    case TopologyKind::Tree:
    case TopologyKind::ConnectedTree:
      for (auto b : get_counts(need("branches"), key + ".branches", 1)) {
        spec.branches.push_back(static_cast<unsigned>(b));
      }
      break;
    case TopologyKind::GeoMst:
    case TopologyKind::GeoComplete: {
      const auto& c = need("coords");
      if (!c.is_string()) {
        throw ConfigError(key + ".coords", "expected a path");
      }
      spec.coords = c.get<std::string>();
      if (spec.coords.is_relative() && !base_dir.empty()) {
        spec.coords = base_dir / spec.coords;
      }
      break;
    }
  }
  if (t.contains("edge_cost")) {
    spec.edge_cost = get_cost(t["edge_cost"], key + ".edge_cost");
  }
  if (t.contains("cost_per_km")) {
    spec.cost_per_km = get_cost(t["cost_per_km"], key + ".cost_per_km");
  }
  if (t.contains("name")) {
    if (!t["name"].is_string() || t["name"].get<std::string>().empty()) {
      throw ConfigError(key + ".name", "expected a non-empty string");
    }
    spec.name = t["name"].get<std::string>();
  } else {
    spec.name = to_string(spec.kind);
  }
  if (spec.name.find_first_of("/\\ ") != std::string::npos) {
    throw ConfigError(key + ".name", "must not contain spaces or slashes");
  }
  return spec;
}

std::string scalarization_name(Scalarization s) {
  switch (s) {
    case Scalarization::LossOnly:
      return "loss";
    case Scalarization::DephasingOnly:
      return "dephasing";
    case Scalarization::Sum:
      break;
  }
  return "sum";
}

}  // namespace

std::string to_string(TopologyKind kind) {
  switch (kind) {
    case TopologyKind::Complete:
      return "complete";
    case TopologyKind::Lattice:
      return "lattice";
    case TopologyKind::Tree:
      return "tree";
    case TopologyKind::ConnectedTree:
      return "connected-tree";
    case TopologyKind::GeoMst:
      return "geo-mst";
    case TopologyKind::GeoComplete:
      return "geo-complete";
  }
  return "?";
}

std::optional<TopologyKind> parse_topology_kind(const std::string& name) {
  for (auto k : {TopologyKind::Complete, TopologyKind::Lattice,
                 TopologyKind::Tree, TopologyKind::ConnectedTree,
                 TopologyKind::GeoMst, TopologyKind::GeoComplete}) {
    if (name == to_string(k)) {
      return k;
    }
  }
  if (name == "mst") {
    return TopologyKind::GeoMst;
  }
  return std::nullopt;
}

NetworkGraph build_topology(const TopologySpec& spec) {
  switch (spec.kind) {
    case TopologyKind::Complete:
      return gen_complete(spec.nodes, spec.edge_cost);
    case TopologyKind::Lattice:
      return gen_lattice(spec.rows, spec.cols, spec.edge_cost);
    case TopologyKind::Tree:
      return gen_tree(BranchingSpec(spec.branches), spec.edge_cost);
    case TopologyKind::ConnectedTree:
      return gen_connected_tree(BranchingSpec(spec.branches), spec.edge_cost);
    case TopologyKind::GeoMst:
    case TopologyKind::GeoComplete: {
      const auto named = read_coordinates(spec.coords);
      auto g = spec.kind == TopologyKind::GeoMst
                   ? gen_geo_mst(named.coords, spec.cost_per_km)
                   : gen_geo_complete(named.coords, spec.cost_per_km);
      NetworkGraph labelled;
      for (NodeId v = 0; v < g.node_count(); ++v) {
        auto info = g.node(v);
        info.name = named.names[v];
        labelled.add_node(std::move(info));
      }
      for (const auto& e : g.edges()) {
        labelled.add_edge(e.u, e.v, e.cost);
      }
      return labelled;
    }
  }
  throw std::logic_error("unhandled topology kind");
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("QNET_SEED"); env != nullptr && *env) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0') {
      throw ConfigError("QNET_SEED", "expected a non-negative integer");
    }
    return v;
  }
  return 1;
}

RunConfig parse_config(const json& doc, const std::filesystem::path& base_dir) {
  check_keys(doc, "", {"name", "topology", "temporal", "routing", "sweep", "seed"});
  RunConfig cfg;
  if (doc.contains("name")) {
    if (!doc["name"].is_string() || doc["name"].get<std::string>().empty()) {
      throw ConfigError("name", "expected a non-empty string");
    }
    cfg.name = doc["name"].get<std::string>();
  }

  if (!doc.contains("topology")) {
    throw ConfigError("topology", "required");
  }
  const auto& topo = doc["topology"];
  if (topo.is_array()) {
    if (topo.empty()) {
      throw ConfigError("topology", "list must not be empty");
    }
    for (std::size_t i = 0; i < topo.size(); ++i) {
      cfg.topologies.push_back(
          parse_topology(topo[i], "topology[" + std::to_string(i) + "]", base_dir));
    }
  } else {
    cfg.topologies.push_back(parse_topology(topo, "topology", base_dir));
  }
  std::set<std::string> names;
  for (std::size_t i = 0; i < cfg.topologies.size(); ++i) {
    if (!names.insert(cfg.topologies[i].name).second) {
      throw ConfigError("topology[" + std::to_string(i) + "].name",
                        "duplicate name '" + cfg.topologies[i].name + "'");
    }
  }

  if (doc.contains("temporal")) {
    const auto& t = doc["temporal"];
    check_keys(t, "temporal", {"layers", "memory_costs", "memory_sweep"});
    if (t.contains("layers")) {
      cfg.layers = static_cast<unsigned>(get_uint(t["layers"], "temporal.layers", 1));
    }
    if (t.contains("memory_costs") && t.contains("memory_sweep")) {
      throw ConfigError("temporal.memory_sweep",
                        "give either memory_costs or memory_sweep");
    }
    if (t.contains("memory_costs")) {
      const auto& mc = t["memory_costs"];
      if (!mc.is_array() || mc.empty()) {
        throw ConfigError("temporal.memory_costs", "expected a non-empty list");
      }
      cfg.memory_costs.clear();
      for (std::size_t i = 0; i < mc.size(); ++i) {
        cfg.memory_costs.push_back(
            get_cost(mc[i], "temporal.memory_costs[" + std::to_string(i) + "]"));
      }
    }
    if (t.contains("memory_sweep")) {
      const auto& ms = t["memory_sweep"];
      check_keys(ms, "temporal.memory_sweep", {"from", "to", "steps"});
      for (const char* k : {"from", "to", "steps"}) {
        if (!ms.contains(k)) {
          throw ConfigError(std::string("temporal.memory_sweep.") + k, "required");
        }
      }
      const double from = get_number(ms["from"], "temporal.memory_sweep.from");
      const double to = get_number(ms["to"], "temporal.memory_sweep.to");
      const auto steps = get_uint(ms["steps"], "temporal.memory_sweep.steps", 1);
      cfg.memory_costs.clear();
      for (std::uint64_t i = 0; i < steps; ++i) {
        const double x = steps == 1 ? from
                                    : from + (to - from) * static_cast<double>(i) /
                                                 static_cast<double>(steps - 1);
        cfg.memory_costs.push_back(get_cost(json(x), "temporal.memory_sweep"));
      }
    }
  }

  if (doc.contains("routing")) {
    const auto& r = doc["routing"];
    check_keys(r, "routing", {"max_paths", "scalarization"});
    if (r.contains("max_paths")) {
      cfg.max_paths =
          static_cast<unsigned>(get_uint(r["max_paths"], "routing.max_paths", 1));
    }
    if (r.contains("scalarization")) {
      const auto& s = r["scalarization"];
      const std::string v = s.is_string() ? s.get<std::string>() : "";
      if (v == "sum") {
        cfg.scalarization = Scalarization::Sum;
      } else if (v == "loss") {
        cfg.scalarization = Scalarization::LossOnly;
      } else if (v == "dephasing") {
        cfg.scalarization = Scalarization::DephasingOnly;
      } else {
        throw ConfigError("routing.scalarization",
                          "expected \"sum\", \"loss\" or \"dephasing\"");
      }
    }
  }

  if (doc.contains("sweep")) {
    const auto& s = doc["sweep"];
    check_keys(s, "sweep", {"users", "trials", "scatter_users"});
    if (s.contains("users")) {
      const auto& u = s["users"];
      if (u.is_string()) {
        if (u.get<std::string>() != "all") {
          throw ConfigError("sweep.users", "expected \"all\", a list or a range");
        }
      } else if (u.is_object()) {
        cfg.users = get_range(u, "sweep.users");
      } else {
        cfg.users = get_counts(u, "sweep.users", 1);
      }
    }
    if (s.contains("trials")) {
      cfg.trials = get_uint(s["trials"], "sweep.trials", 1);
    }
    if (s.contains("scatter_users")) {
      const auto& su = s["scatter_users"];
      if (!(su.is_array() && su.empty())) {
        cfg.scatter_users = get_counts(su, "sweep.scatter_users", 1);
      }
    }
  }

  cfg.seed = doc.contains("seed") ? get_uint(doc["seed"], "seed") : default_seed();

  // Size checks need the graphs' node counts; geo files are only counted.
  for (std::size_t i = 0; i < cfg.topologies.size(); ++i) {
    const auto& spec = cfg.topologies[i];
    std::size_t n = 0;
    switch (spec.kind) {
      case TopologyKind::Complete:
        n = spec.nodes;
        break;
      case TopologyKind::Lattice:
        n = spec.rows * spec.cols;
        break;
      case TopologyKind::Tree:
      case TopologyKind::ConnectedTree:
        n = BranchingSpec(spec.branches).node_count();
        break;
      case TopologyKind::GeoMst:
      case TopologyKind::GeoComplete:
        continue;
    }
    for (std::size_t m : cfg.users) {
      if (m > n / 2) {
        throw ConfigError("sweep.users",
                          std::to_string(m) + " pairs exceed floor(|V|/2) = " +
                              std::to_string(n / 2) + " for topology '" +
                              spec.name + "'");
      }
    }
  }
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  json doc;
  try {
    doc = json::parse(in, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string(), e.what());
  }
  return parse_config(doc, path.parent_path());
}

json echo(const RunConfig& cfg) {
  json topo = json::array();
  for (const auto& t : cfg.topologies) {
    json j = {{"name", t.name}, {"kind", to_string(t.kind)}};
    switch (t.kind) {
      case TopologyKind::Complete:
        j["nodes"] = t.nodes;
        j["edge_cost"] = cost_json(t.edge_cost);
        break;
      case TopologyKind::Lattice:
        j["rows"] = t.rows;
        j["cols"] = t.cols;
        j["edge_cost"] = cost_json(t.edge_cost);
        break;
      case TopologyKind::Tree:
      case TopologyKind::ConnectedTree:
        j["branches"] = t.branches;
        j["edge_cost"] = cost_json(t.edge_cost);
        break;
      case TopologyKind::GeoMst:
      case TopologyKind::GeoComplete:
        j["coords"] = t.coords.generic_string();
        j["cost_per_km"] = cost_json(t.cost_per_km);
        break;
    }
    topo.push_back(std::move(j));
  }
  json memory = json::array();
  for (const auto& m : cfg.memory_costs) {
    memory.push_back(cost_json(m));
  }
  json sweep = {{"trials", cfg.trials}, {"scatter_users", cfg.scatter_users}};
  if (cfg.users.empty()) {
    sweep["users"] = "all";
  } else {
    sweep["users"] = cfg.users;
  }
  return {{"name", cfg.name},
          {"topology", std::move(topo)},
          {"temporal", {{"layers", cfg.layers}, {"memory_costs", std::move(memory)}}},
          {"routing",
           {{"max_paths", cfg.max_paths},
            {"scalarization", scalarization_name(cfg.scalarization)}}},
          {"sweep", std::move(sweep)},
          {"seed", cfg.seed}};
}

std::string config_hash(const RunConfig& cfg) {
  const std::string text = echo(cfg).dump();
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

ExperimentConfig experiment_for(const RunConfig& cfg, std::size_t node_count) {
  ExperimentConfig ec;
  ec.layers = cfg.layers;
  ec.memory_costs = cfg.memory_costs;
  ec.max_paths = cfg.max_paths;
  ec.trials = cfg.trials;
  ec.seed = cfg.seed;
  ec.scalarization = cfg.scalarization;
  if (cfg.users.empty()) {
    for (std::size_t m = 1; m <= node_count / 2; ++m) {
      ec.user_counts.push_back(m);
    }
  } else {
    ec.user_counts = cfg.users;
  }
  return ec;
}

std::vector<std::size_t> scatter_users_for(const RunConfig& cfg,
                                           const ExperimentConfig& experiment) {
  const auto& swept = experiment.user_counts;
  if (swept.empty()) {
    return {};
  }
  std::vector<std::size_t> out;
  if (cfg.scatter_users.empty()) {
    const auto [lo, hi] = std::minmax_element(swept.begin(), swept.end());
    out = {*lo, *hi};
  } else {
    for (auto m : cfg.scatter_users) {
      if (std::find(swept.begin(), swept.end(), m) != swept.end()) {
        out.push_back(m);
      }
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace qnet
