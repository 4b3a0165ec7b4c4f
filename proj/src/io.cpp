#include "qnet/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace qnet {

namespace {

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) {
    return {};
  }
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(std::string_view(line).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) {
      return fields;
    }
    start = comma + 1;
  }
}

bool skippable(const std::string& line) {
  const auto t = trim(line);
  return t.empty() || t.front() == '#';
}

std::optional<double> to_number(const std::string& s) {
  double value = 0.0;
  if (s == "nan") {
    return std::nan("");
  }
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc{} || end != s.data() + s.size() || s.empty()) {
    return std::nullopt;
  }
  return value;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return in;
}

}  // namespace

ParseError::ParseError(const std::string& source, std::size_t row,
                       const std::string& reason)
    : std::runtime_error(source + ":" + std::to_string(row) + ": " + reason),
      row_(row) {}

std::string format_double(double x) {
  if (std::isnan(x)) {
    return "nan";
  }
  char buf[32];
  const auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  (void)ec;
  return {buf, end};
}

std::optional<std::size_t> CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) {
      return i;
    }
  }
  return std::nullopt;
}

std::size_t CsvTable::require_column(const std::string& name) const {
  if (auto c = column(name)) {
    return *c;
  }
  throw ParseError(source, line_numbers.empty() ? 1 : line_numbers.front() - 1,
                   "missing column '" + name + "'");
}

double CsvTable::number(std::size_t row, std::size_t col) const {
  const auto& field = rows.at(row).at(col);
  if (auto v = to_number(field)) {
    return *v;
  }
  throw ParseError(source, line_numbers.at(row),
                   "column '" + header.at(col) + "': '" + field +
                       "' is not a number");
}

std::size_t CsvTable::count(std::size_t row, std::size_t col) const {
  const double v = number(row, col);
  if (!(v >= 0.0) || v != std::floor(v) || v > 1e15) {
    throw ParseError(source, line_numbers.at(row),
                     "column '" + header.at(col) +
                         "': expected a non-negative integer");
  }
  return static_cast<std::size_t>(v);
}

CsvTable parse_csv(std::istream& in, const std::string& source) {
  CsvTable table;
  table.source = source;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) {
      continue;
    }
    auto fields = split(line);
    if (table.header.empty()) {
      table.header = std::move(fields);
      continue;
    }
    if (fields.size() != table.header.size()) {
      throw ParseError(source, line_no,
                       "expected " + std::to_string(table.header.size()) +
                           " fields, found " + std::to_string(fields.size()));
    }
    table.rows.push_back(std::move(fields));
    table.line_numbers.push_back(line_no);
  }
  if (table.header.empty()) {
    throw ParseError(source, line_no, "empty file");
  }
  return table;
}

CsvTable read_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_csv(in, path.string());
}

NamedCoordinates parse_coordinates(const CsvTable& table) {
  const std::size_t name = table.require_column("name");
  const bool geodetic = table.column("lat").has_value();
  const std::size_t c1 = table.require_column(geodetic ? "lat" : "x_km");
  const std::size_t c2 = table.require_column(geodetic ? "lon" : "y_km");
  NamedCoordinates out;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    const double a = table.number(r, c1);
    const double b = table.number(r, c2);
    if (!std::isfinite(a) || !std::isfinite(b)) {
      throw ParseError(table.source, table.line_numbers[r],
                       "coordinates must be finite");
    }
    if (geodetic && (std::abs(a) > 90.0 || std::abs(b) > 180.0)) {
      throw ParseError(table.source, table.line_numbers[r],
                       "latitude/longitude out of range");
    }
    out.names.push_back(table.rows[r][name]);
    out.coords.push_back(geodetic ? Coordinate::geodetic(a, b)
                                  : Coordinate::planar(a, b));
  }
  return out;
}

NamedCoordinates read_coordinates(const std::filesystem::path& path) {
  return parse_coordinates(read_csv(path));
}

void write_graph(std::ostream& out, const NetworkGraph& graph) {
  bool geodetic = false;
  for (const auto& n : graph.nodes()) {
    if (n.coordinate && n.coordinate->kind == CoordinateKind::Geodetic) {
      geodetic = true;
    }
  }
  out << "[nodes]\n"
      << (geodetic ? "id,name,depth,lat,lon\n" : "id,name,depth,x_km,y_km\n");
  for (NodeId id = 0; id < graph.node_count(); ++id) {
    const auto& n = graph.node(id);
    out << id << ',' << n.name << ',';
    if (n.depth) {
      out << *n.depth;
    }
    out << ',';
    if (n.coordinate) {
      out << format_double(n.coordinate->first) << ','
          << format_double(n.coordinate->second);
    } else {
      out << ',';
    }
    out << '\n';
  }
  out << "[edges]\nu,v,loss_db,z_db\n";
  for (const auto& e : graph.edges()) {
    out << e.u << ',' << e.v << ',' << format_double(e.cost.loss_db()) << ','
        << format_double(e.cost.z_db()) << '\n';
  }
}

NetworkGraph parse_graph(std::istream& in, const std::string& source) {
  // Split into the two sections, then reuse the CSV reader on each.
  std::stringstream nodes_text;
  std::stringstream edges_text;
  std::stringstream* current = nullptr;
  std::size_t nodes_offset = 0;
  std::size_t edges_offset = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto t = trim(line);
    if (t == "[nodes]") {
      current = &nodes_text;
      nodes_offset = line_no;
      continue;
    }
    if (t == "[edges]") {
      current = &edges_text;
      edges_offset = line_no;
      continue;
    }
    if (current == nullptr) {
      if (!skippable(line)) {
        throw ParseError(source, line_no, "content before [nodes] section");
      }
      continue;
    }
    *current << line << '\n';
  }
  if (nodes_offset == 0 || edges_offset == 0) {
    throw ParseError(source, line_no, "missing [nodes] or [edges] section");
  }
  auto renumber = [](CsvTable& table, std::size_t offset) {
    for (auto& n : table.line_numbers) {
      n += offset;
    }
  };
  auto nodes = parse_csv(nodes_text, source);
  renumber(nodes, nodes_offset);
  auto edges = parse_csv(edges_text, source);
  renumber(edges, edges_offset);

  NetworkGraph graph;
  const std::size_t id_col = nodes.require_column("id");
  const auto name_col = nodes.column("name");
  const auto depth_col = nodes.column("depth");
  std::optional<std::size_t> c1;
  std::optional<std::size_t> c2;
  bool geodetic = false;
  if (nodes.column("lat")) {
    geodetic = true;
    c1 = nodes.column("lat");
    c2 = nodes.require_column("lon");
  } else if (nodes.column("x_km")) {
    c1 = nodes.column("x_km");
    c2 = nodes.require_column("y_km");
  }
  for (std::size_t r = 0; r < nodes.rows.size(); ++r) {
    if (nodes.count(r, id_col) != r) {
      throw ParseError(source, nodes.line_numbers[r],
                       "node ids must be 0..n-1 in order");
    }
    NodeInfo info;
    if (name_col) {
      info.name = nodes.rows[r][*name_col];
    }
    if (depth_col && !nodes.rows[r][*depth_col].empty()) {
      info.depth = static_cast<unsigned>(nodes.count(r, *depth_col));
    }
    if (c1 && !nodes.rows[r][*c1].empty()) {
      const double a = nodes.number(r, *c1);
      const double b = nodes.number(r, *c2);
      info.coordinate =
          geodetic ? Coordinate::geodetic(a, b) : Coordinate::planar(a, b);
    }
    graph.add_node(std::move(info));
  }
  const std::size_t u = edges.require_column("u");
  const std::size_t v = edges.require_column("v");
  const std::size_t loss = edges.require_column("loss_db");
  const std::size_t z = edges.require_column("z_db");
  for (std::size_t r = 0; r < edges.rows.size(); ++r) {
    try {
      graph.add_edge(static_cast<NodeId>(edges.count(r, u)),
                     static_cast<NodeId>(edges.count(r, v)),
                     CostVector(edges.number(r, loss), edges.number(r, z)));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(source, edges.line_numbers[r], e.what());
    }
  }
  return graph;
}

NetworkGraph read_graph(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_graph(in, path.string());
}

void write_sweep(std::ostream& out, const SweepReport& report) {
  const unsigned k = report.config.max_paths;
  out << "M,mem_loss_db,mem_z_db,mean_eff,se_eff,mean_fid,se_fid";
  for (unsigned n = 0; n <= k; ++n) {
    out << ",p" << n;
  }
  out << ",p_purify,avg_paths\n";
  for (const auto& c : report.cells) {
    out << c.users << ',' << format_double(c.memory_cost.loss_db()) << ','
        << format_double(c.memory_cost.z_db()) << ','
        << format_double(c.mean_eff) << ',' << format_double(c.se_eff) << ','
        << format_double(c.mean_fid) << ',' << format_double(c.se_fid);
    for (unsigned n = 0; n <= k; ++n) {
      out << ',' << format_double(c.distribution[n]);
    }
    out << ',' << (c.p_purify ? format_double(*c.p_purify) : "nan") << ','
        << format_double(c.avg_paths) << '\n';
  }
}

std::vector<SweepRow> parse_sweep(const CsvTable& table) {
  if (table.rows.empty()) {
    throw ParseError(table.source, 1, "sweep report has no rows");
  }
  const std::size_t m = table.require_column("M");
  const std::size_t ml = table.require_column("mem_loss_db");
  const std::size_t mz = table.require_column("mem_z_db");
  const std::size_t me = table.require_column("mean_eff");
  const std::size_t se = table.require_column("se_eff");
  const std::size_t mf = table.require_column("mean_fid");
  const std::size_t sf = table.require_column("se_fid");
  const std::size_t pp = table.require_column("p_purify");
  const std::size_t ap = table.require_column("avg_paths");
  std::vector<std::size_t> p_cols;
  for (unsigned n = 0;; ++n) {
    auto c = table.column("p" + std::to_string(n));
    if (!c) {
      break;
    }
    p_cols.push_back(*c);
  }
  if (p_cols.size() < 2) {
    throw ParseError(table.source, 1, "missing path-count columns p0, p1");
  }
  std::vector<SweepRow> rows;
  rows.reserve(table.rows.size());
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    SweepRow row;
    row.users = table.count(r, m);
    try {
      row.memory_cost = CostVector(table.number(r, ml), table.number(r, mz));
    } catch (const std::domain_error& e) {
      throw ParseError(table.source, table.line_numbers[r], e.what());
    }
    row.mean_eff = table.number(r, me);
    row.se_eff = table.number(r, se);
    row.mean_fid = table.number(r, mf);
    row.se_fid = table.number(r, sf);
    for (auto c : p_cols) {
      const double p = table.number(r, c);
      if (!(p >= 0.0 && p <= 1.0)) {
        throw ParseError(table.source, table.line_numbers[r],
                         "column '" + table.header[c] + "' outside [0, 1]");
      }
      row.p.push_back(p);
    }
    const double p_purify = table.number(r, pp);
    if (!std::isnan(p_purify)) {
      row.p_purify = p_purify;
    }
    row.avg_paths = table.number(r, ap);
    rows.push_back(std::move(row));
  }
  return rows;
}

ScatterWriter::ScatterWriter(std::ostream& out) : out_(out) {
  out_ << "M,mem_loss_db,mem_z_db,trial,pair,u,v,kind,route,n_routes,loss_db,"
          "z_db,eff,fid\n";
}

void ScatterWriter::append(std::size_t users, const CostVector& memory_cost,
                           std::size_t trial, const TrialResult& result) {
  const std::string prefix = std::to_string(users) + ',' +
                             format_double(memory_cost.loss_db()) + ',' +
                             format_double(memory_cost.z_db()) + ',' +
                             std::to_string(trial) + ',';
  for (std::size_t i = 0; i < result.outcomes.size(); ++i) {
    const auto& o = result.outcomes[i];
    const std::string pair = std::to_string(i) + ',' + std::to_string(o.a) +
                             ',' + std::to_string(o.b) + ',';
    const std::string n_routes = std::to_string(o.routes.size());
    for (std::size_t r = 0; r < o.routes.size(); ++r) {
      const auto& cost = o.routes[r].total_cost;
      const auto m = metrics_from_cost(cost);
      out_ << prefix << pair << "route," << r << ',' << n_routes << ','
           << format_double(cost.loss_db()) << ',' << format_double(cost.z_db())
           << ',' << format_double(m.efficiency) << ','
           << format_double(m.fidelity) << '\n';
    }
    if (o.purified) {
      const auto cost = cost_from_metrics(*o.purified);
      out_ << prefix << pair << "purified,," << n_routes << ','
           << format_double(cost.loss_db()) << ',' << format_double(cost.z_db())
           << ',' << format_double(o.purified->efficiency) << ','
           << format_double(o.purified->fidelity) << '\n';
    }
  }
}

void write_contours(std::ostream& out, const ContourGrid& grid) {
  out << "eff_db,fidelity,key_rate\n";
  for (std::size_t r = 0; r < grid.eff_db.size(); ++r) {
    for (std::size_t c = 0; c < grid.fidelity.size(); ++c) {
      out << format_double(grid.eff_db[r]) << ','
          << format_double(grid.fidelity[c]) << ','
          << format_double(grid.at(r, c)) << '\n';
    }
  }
}

}  // namespace qnet
