// qnet: topology generation, Monte-Carlo sweeps, QKD reports and the
// geographic MST vs complete-graph comparison.

#include "qnet/analytics.hpp"
#include "qnet/config.hpp"
#include "qnet/io.hpp"
#include "qnet/qkd.hpp"
#include "qnet/run.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

namespace fs = std::filesystem;
using namespace qnet;

namespace {

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != item.size()) {
      throw std::invalid_argument(flag + ": '" + item + "' is not a number");
    }
    out.push_back(v);
  }
  return out;
}

CostVector parse_cost(const std::string& text, const std::string& flag) {
  const auto v = parse_list(text, flag);
  if (v.size() == 1) {
    return {v[0], v[0]};
  }
  if (v.size() != 2) {
    throw std::invalid_argument(flag + ": expected LOSS,Z");
  }
  return {v[0], v[1]};
}

AxisRange parse_range(const std::string& text, const std::string& flag) {
  const auto v = parse_list(text, flag);
  if (v.size() != 2) {
    throw std::invalid_argument(flag + ": expected LO,HI");
  }
  return {v[0], v[1]};
}

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) {
    fs::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  return out;
}

// Strips a trailing ".csv" and, for sweep reports, ".sweep".
std::string report_stem(const fs::path& path) {
  std::string stem = path.filename().string();
  for (const std::string suffix : {".csv", ".sweep"}) {
    if (stem.size() > suffix.size() &&
        stem.compare(stem.size() - suffix.size(), suffix.size(), suffix) == 0) {
      stem.erase(stem.size() - suffix.size());
    }
  }
  return stem;
}

struct GenerateArgs {
  std::string kind;
  std::size_t nodes = 0;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::string branches;
  std::string edge_cost = "0.1,0.1";
  std::string coords;
  std::string cost_per_km = "0.1,0.1";
  std::string output;
};

int cmd_generate(const GenerateArgs& a) {
  TopologySpec spec;
  const auto kind = parse_topology_kind(a.kind);
  if (!kind) {
    throw std::invalid_argument("unknown topology '" + a.kind + "'");
  }
  spec.kind = *kind;
  spec.nodes = a.nodes;
  spec.rows = a.rows;
  spec.cols = a.cols;
  if (!a.branches.empty()) {
    for (double b : parse_list(a.branches, "--branches")) {
      if (b < 1 || b != static_cast<unsigned>(b)) {
        throw std::invalid_argument("--branches: expected positive integers");
      }
      spec.branches.push_back(static_cast<unsigned>(b));
    }
  }
  spec.edge_cost = parse_cost(a.edge_cost, "--edge-cost");
  spec.cost_per_km = parse_cost(a.cost_per_km, "--cost-per-km");
  spec.coords = a.coords;
  switch (spec.kind) {
    case TopologyKind::Complete:
      if (spec.nodes < 1) {
        throw std::invalid_argument("complete needs --nodes");
      }
      break;
    case TopologyKind::Lattice:
      if (spec.rows < 1 || spec.cols < 1) {
        throw std::invalid_argument("lattice needs --rows and --cols");
      }
      break;
    case TopologyKind::Tree:
    case TopologyKind::ConnectedTree:
      if (spec.branches.empty()) {
        throw std::invalid_argument(a.kind + " needs --branches");
      }
      break;
    case TopologyKind::GeoMst:
    case TopologyKind::GeoComplete:
      if (a.coords.empty()) {
        throw std::invalid_argument(a.kind + " needs --coords");
      }
      break;
  }
  const NetworkGraph g = build_topology(spec);
  if (!a.output.empty()) {
    auto out = open_output(a.output);
    write_graph(out, g);
  }
  std::printf("%zu nodes, %zu edges\n", g.node_count(), g.edge_count());
  return 0;
}

std::string threshold_text(const std::optional<std::size_t>& v) {
  return v ? std::to_string(*v) : "none";
}

int cmd_sweep(const fs::path& config, const fs::path& out_root, unsigned threads) {
  const RunConfig cfg = load_config(config);
  const RunResult run = run_sweep(cfg, out_root, threads);
  std::printf("%-24s %6s %6s %12s %6s\n", "topology", "nodes", "edges",
              "purification", "user");
  for (const auto& t : run.topologies) {
    std::printf("%-24s %6zu %6zu %12s %6s\n", t.name.c_str(), t.nodes, t.edges,
                threshold_text(t.thresholds.headline.purification).c_str(),
                threshold_text(t.thresholds.headline.user).c_str());
  }
  std::printf("%s\n", run.directory.string().c_str());
  return 0;
}

struct QkdArgs {
  std::string report;
  std::string scatter;
  std::string out_dir;
  unsigned layers = 3;
  std::size_t resolution = 100;
  std::string eff_db = "0,10";
  std::string fidelity = "0.5,1";
  double contour_p0 = 0.0;
  unsigned contour_layers = 1;
};

int cmd_qkd(const QkdArgs& a) {
  const fs::path report(a.report);
  const fs::path dir = a.out_dir.empty() ? report.parent_path() : fs::path(a.out_dir);
  const std::string stem = report_stem(report);

  const CsvTable table = read_csv(report);
  const auto rows = parse_sweep(table);
  std::vector<fs::path> written;
  {
    const fs::path path = dir / (stem + ".qkd.csv");
    auto out = open_output(path);
    for (std::size_t i = 0; i < table.header.size(); ++i) {
      out << table.header[i] << ',';
    }
    out << "raw_rate,key_rate\n";
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const auto& row = rows[r];
      CellRates rates;
      try {
        rates = cell_rates(row.users, row.p.front(), row.mean_eff, row.mean_fid,
                           a.layers);
      } catch (const std::domain_error& e) {
        throw ParseError(table.source, table.line_numbers[r], e.what());
      }
      for (const auto& field : table.rows[r]) {
        out << field << ',';
      }
      out << format_double(rates.raw) << ',' << format_double(rates.key) << '\n';
    }
    written.push_back(path);
  }
  {
    const auto grid = key_rate_contours(parse_range(a.eff_db, "--eff-db"),
                                        parse_range(a.fidelity, "--fidelity"),
                                        a.resolution, a.contour_p0,
                                        a.contour_layers);
    const fs::path path = dir / (stem + ".contour.csv");
    auto out = open_output(path);
    write_contours(out, grid);
    written.push_back(path);
  }
  if (!a.scatter.empty()) {
    // One per-pair key-rate file per M, from the purified scatter points.
    const CsvTable sc = read_csv(a.scatter);
    const std::size_t m = sc.require_column("M");
    const std::size_t kind = sc.require_column("kind");
    const std::size_t eff = sc.require_column("eff");
    const std::size_t fid = sc.require_column("fid");
    std::map<std::size_t, std::vector<std::size_t>> by_m;
    for (std::size_t r = 0; r < sc.rows.size(); ++r) {
      if (sc.rows[r][kind] == "purified") {
        by_m[sc.count(r, m)].push_back(r);
      }
    }
    if (by_m.empty()) {
      throw std::runtime_error(a.scatter + ": no purified rows");
    }
    const std::string sc_stem = report_stem(fs::path(a.scatter).replace_extension());
    for (const auto& [users, indices] : by_m) {
      const fs::path path =
          dir / (sc_stem + ".M" + std::to_string(users) + ".qkd.csv");
      auto out = open_output(path);
      for (const auto& h : sc.header) {
        out << h << ',';
      }
      out << "key_rate\n";
      for (std::size_t r : indices) {
        double rate = 0.0;
        try {
          rate = secret_key_rate(0.0, sc.number(r, eff), a.layers, sc.number(r, fid));
        } catch (const std::domain_error& e) {
          throw ParseError(sc.source, sc.line_numbers[r], e.what());
        }
        for (const auto& field : sc.rows[r]) {
          out << field << ',';
        }
        out << format_double(rate) << '\n';
      }
      written.push_back(path);
    }
  }
  for (const auto& p : written) {
    std::printf("%s\n", p.string().c_str());
  }
  return 0;
}

struct GeoArgs {
  std::string coords;
  std::size_t pairs = 3;
  std::size_t trials = 500;
  unsigned layers = 1;
  unsigned max_paths = 3;
  std::string cost_per_km = "0.1,0.1";
  std::uint64_t seed = 0;
  bool seed_given = false;
  std::string out_dir = "geo";
};

int cmd_geo(const GeoArgs& a) {
  const auto named = read_coordinates(a.coords);
  if (named.coords.size() < 2) {
    throw std::invalid_argument(a.coords + ": need at least 2 coordinate rows");
  }
  const CostVector per_km = parse_cost(a.cost_per_km, "--cost-per-km");
  const NetworkGraph mst = gen_geo_mst(named.coords, per_km);
  const NetworkGraph cg = gen_geo_complete(named.coords, per_km);
  GeoConfig cfg;
  cfg.users = a.pairs;
  cfg.trials = a.trials;
  cfg.layers = a.layers;
  cfg.max_paths = a.max_paths;
  cfg.seed = a.seed_given ? a.seed : default_seed();
  const GeoComparison cmp = compare_geo(mst, cg, cfg);

  const fs::path dir(a.out_dir);
  auto summary = open_output(dir / "geo.csv");
  summary << "network,nodes,edges,length_km,p0,failed_trial_fraction,mean_eff,"
             "mean_fid,raw_rate,key_rate\n";
  std::printf("%-10s %6s %6s %10s %8s %8s %8s %8s %9s %9s\n", "network", "nodes",
              "edges", "km", "P0", "fail", "<eta>", "<F>", "R", "C");
  const std::pair<const char*, std::pair<const NetworkGraph*, const GeoSide*>>
      sides[] = {{"mst", {&mst, &cmp.mst}}, {"complete", {&cg, &cmp.complete}}};
  for (const auto& [name, side] : sides) {
    const auto& [graph, result] = side;
    const SweepCell& s = result->stats;
    const double fail =
        static_cast<double>(s.failed_trials) / static_cast<double>(s.trials);
    const auto rates = cell_rates(s.users, s.p0(), s.mean_eff, s.mean_fid, a.layers);
    const double km = total_length_km(*graph);
    summary << name << ',' << graph->node_count() << ',' << graph->edge_count()
            << ',' << format_double(km) << ',' << format_double(s.p0()) << ','
            << format_double(fail) << ',' << format_double(s.mean_eff) << ','
            << format_double(s.mean_fid) << ',' << format_double(rates.raw) << ','
            << format_double(rates.key) << '\n';
    std::printf("%-10s %6zu %6zu %10.2f %8.4f %8.4f %8.4f %8.4f %9.4f %9.4f\n",
                name, graph->node_count(), graph->edge_count(), km, s.p0(), fail,
                s.mean_eff, s.mean_fid, rates.raw, rates.key);

    auto scatter = open_output(dir / (std::string(name) + ".scatter.csv"));
    ScatterWriter writer(scatter);
    for (std::size_t t = 0; t < result->trials.size(); ++t) {
      writer.append(cfg.users, cfg.memory_cost, t, result->trials[t]);
    }
    auto gfile = open_output(dir / (std::string(name) + ".graph"));
    write_graph(gfile, *graph);
  }
  std::printf("matched pairs: %zu, complete graph higher fidelity: %zu\n",
              cmp.matched, cmp.complete_better);
  std::printf("%s\n", dir.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"qnet: multi-user entanglement routing experiments"};
  app.require_subcommand(1);
  unsigned threads = 0;
  app.add_option("--threads", threads, "Worker threads (0 = all cores)");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Build a topology, print |V| and |E|");
  generate->add_option("kind", gen.kind,
                       "complete | lattice | tree | connected-tree | mst | geo-complete")
      ->required();
  generate->add_option("--nodes", gen.nodes, "Node count (complete)");
  generate->add_option("--rows", gen.rows, "Lattice rows");
  generate->add_option("--cols", gen.cols, "Lattice columns");
  generate->add_option("--branches", gen.branches, "Branching per depth, e.g. 3,2,3,2");
  generate->add_option("--edge-cost", gen.edge_cost, "LOSS,Z in dB per edge");
  generate->add_option("--coords", gen.coords, "Coordinate CSV (mst, geo-complete)");
  generate->add_option("--cost-per-km", gen.cost_per_km, "LOSS,Z in dB per km");
  generate->add_option("-o,--output", gen.output, "Graph file to write");

  std::string config;
  std::string out_root = "runs";
  auto* sweep = app.add_subcommand("sweep", "Run a configured Monte-Carlo sweep");
  sweep->add_option("config", config, "JSON run configuration")->required();
  sweep->add_option("--out", out_root, "Parent of the run directory");

  QkdArgs qkd;
  auto* qkd_cmd = app.add_subcommand("qkd", "Key rates from a sweep report");
  qkd_cmd->add_option("report", qkd.report, "<topology>.sweep.csv")->required();
  qkd_cmd->add_option("--layers", qkd.layers, "Temporal layers tau of the sweep");
  qkd_cmd->add_option("--scatter", qkd.scatter, "Scatter CSV for per-pair rates");
  qkd_cmd->add_option("--out", qkd.out_dir, "Output directory (default: beside report)");
  qkd_cmd->add_option("--resolution", qkd.resolution, "Contour grid points per axis");
  qkd_cmd->add_option("--eff-db", qkd.eff_db, "Contour efficiency-cost range LO,HI dB");
  qkd_cmd->add_option("--fidelity", qkd.fidelity, "Contour fidelity range LO,HI");
  qkd_cmd->add_option("--contour-p0", qkd.contour_p0, "P0 used for the contour grid");
  qkd_cmd->add_option("--contour-layers", qkd.contour_layers, "tau used for the contour grid");

  GeoArgs geo;
  auto* geo_cmd = app.add_subcommand("geo", "MST vs complete graph on coordinates");
  geo_cmd->add_option("coords", geo.coords, "CSV: name,lat,lon or name,x_km,y_km")
      ->required();
  geo_cmd->add_option("-m,--pairs", geo.pairs, "User pairs per trial");
  geo_cmd->add_option("--trials", geo.trials, "Trials");
  geo_cmd->add_option("--layers", geo.layers, "Temporal layers");
  geo_cmd->add_option("--max-paths", geo.max_paths, "Routes per pair");
  geo_cmd->add_option("--cost-per-km", geo.cost_per_km, "LOSS,Z in dB per km");
  auto* seed_opt = geo_cmd->add_option("--seed", geo.seed, "RNG seed");
  geo_cmd->add_option("--out", geo.out_dir, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*generate) {
      return cmd_generate(gen);
    }
    if (*sweep) {
      return cmd_sweep(config, out_root, threads);
    }
    if (*qkd_cmd) {
      return cmd_qkd(qkd);
    }
    if (*geo_cmd) {
      geo.seed_given = seed_opt->count() > 0;
      return cmd_geo(geo);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
