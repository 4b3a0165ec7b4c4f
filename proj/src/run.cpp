#include "qnet/run.hpp"

#include "qnet/io.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

namespace qnet {

using nlohmann::json;

namespace {

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

json optional_json(const std::optional<std::size_t>& v) {
  return v ? json(*v) : json(nullptr);
}

void write_scatter(const std::filesystem::path& path, const NetworkGraph& graph,
                   const ExperimentConfig& ec,
                   const std::vector<std::size_t>& users) {
  auto out = open_output(path);
  ScatterWriter writer(out);
  // Same cell indices as run_trials, so these are the very trials the sweep
  // aggregated.
  const TrialRunner runner(graph, ec, ec.memory_costs.front());
  const std::size_t n_mem = ec.memory_costs.size();
  for (std::size_t u = 0; u < ec.user_counts.size(); ++u) {
    const std::size_t m = ec.user_counts[u];
    if (std::find(users.begin(), users.end(), m) == users.end()) {
      continue;
    }
    for (std::size_t t = 0; t < ec.trials; ++t) {
      writer.append(m, ec.memory_costs.front(), t, runner.run(m, u * n_mem, t));
    }
  }
}

}  // namespace

RunResult run_sweep(const RunConfig& cfg, const std::filesystem::path& out_root,
                    unsigned threads) {
  const std::string started = utc_now();
  RunResult result;
  result.directory = out_root / (cfg.name + "-" + config_hash(cfg));
  std::filesystem::create_directories(result.directory);

  json summary = {{"name", cfg.name}, {"seed", cfg.seed}, {"topologies", json::array()}};
  for (const auto& spec : cfg.topologies) {
    const NetworkGraph graph = build_topology(spec);
    ExperimentConfig ec = experiment_for(cfg, graph.node_count());
    ec.threads = threads;

    TopologyResult tr;
    tr.name = spec.name;
    tr.nodes = graph.node_count();
    tr.edges = graph.edge_count();

    const std::string graph_file = spec.name + ".graph";
    {
      auto out = open_output(result.directory / graph_file);
      write_graph(out, graph);
    }
    result.files.emplace_back(graph_file);

    tr.report = run_trials(graph, ec);
    tr.thresholds = summarize_thresholds(tr.report);

    const std::string sweep_file = spec.name + ".sweep.csv";
    {
      auto out = open_output(result.directory / sweep_file);
      write_sweep(out, tr.report);
    }
    result.files.emplace_back(sweep_file);

    const std::string scatter_file = spec.name + ".scatter.csv";
    write_scatter(result.directory / scatter_file, graph, ec,
                  scatter_users_for(cfg, ec));
    result.files.emplace_back(scatter_file);

    json per_cost = json::array();
    for (std::size_t m = 0; m < ec.memory_costs.size(); ++m) {
      const auto& th = tr.thresholds.per_memory_cost[m];
      per_cost.push_back({{"mem_loss_db", ec.memory_costs[m].loss_db()},
                          {"mem_z_db", ec.memory_costs[m].z_db()},
                          {"purification_threshold", optional_json(th.purification)},
                          {"user_threshold", optional_json(th.user)}});
    }
    summary["topologies"].push_back(
        {{"name", spec.name},
         {"kind", to_string(spec.kind)},
         {"nodes", tr.nodes},
         {"edges", tr.edges},
         {"purification_threshold",
          optional_json(tr.thresholds.headline.purification)},
         {"user_threshold", optional_json(tr.thresholds.headline.user)},
         {"per_memory_cost", std::move(per_cost)}});
    result.topologies.push_back(std::move(tr));
  }

  {
    auto out = open_output(result.directory / "thresholds.json");
    out << summary.dump(2) << '\n';
  }
  result.files.emplace_back("thresholds.json");

  json files = json::array();
  for (const auto& f : result.files) {
    files.push_back(f.generic_string());
  }
  const json manifest = {{"version", kVersion},
                         {"config", echo(cfg)},
                         {"config_hash", config_hash(cfg)},
                         {"seed", cfg.seed},
                         {"started", started},
                         {"finished", utc_now()},
                         {"files", std::move(files)}};
  auto out = open_output(result.directory / "manifest.json");
  out << manifest.dump(2) << '\n';
  return result;
}

}  // namespace qnet
