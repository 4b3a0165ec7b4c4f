#pragma once

#include "qnet/analytics.hpp"
#include "qnet/qkd.hpp"
#include "qnet/topology.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qnet {

/// Malformed input file. what() reads "<source>:<row>: <reason>".
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string& source, std::size_t row,
             const std::string& reason);

  [[nodiscard]] std::size_t row() const { return row_; }

private:
  std::size_t row_;
};

/// Shortest text that parses back to exactly `x`; "nan" for NaN.
[[nodiscard]] std::string format_double(double x);

/// Comma-separated table with a header row. Blank lines and lines starting
/// with '#' are skipped; fields are trimmed. No quoting.
struct CsvTable {
  std::string source;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  ///< 1-based file line of each row

  [[nodiscard]] std::optional<std::size_t> column(const std::string& name) const;
  /// Throws ParseError (row = header line) when the column is missing.
  [[nodiscard]] std::size_t require_column(const std::string& name) const;
  [[nodiscard]] double number(std::size_t row, std::size_t col) const;
  [[nodiscard]] std::size_t count(std::size_t row, std::size_t col) const;
};

[[nodiscard]] CsvTable parse_csv(std::istream& in, const std::string& source);
[[nodiscard]] CsvTable read_csv(const std::filesystem::path& path);

struct NamedCoordinates {
  std::vector<std::string> names;
  std::vector<Coordinate> coords;
};

/// Header `name,lat,lon` (degrees) or `name,x_km,y_km`.
[[nodiscard]] NamedCoordinates parse_coordinates(const CsvTable& table);
[[nodiscard]] NamedCoordinates read_coordinates(
    const std::filesystem::path& path);

/// Two sections:
///
///   [nodes]
///   id,name,depth,lat,lon      (or x_km,y_km; empty fields when absent)
///   [edges]
///   u,v,loss_db,z_db
void write_graph(std::ostream& out, const NetworkGraph& graph);
[[nodiscard]] NetworkGraph parse_graph(std::istream& in,
                                       const std::string& source);
[[nodiscard]] NetworkGraph read_graph(const std::filesystem::path& path);

/// One row per (M, memory cost) cell, user-major:
/// M,mem_loss_db,mem_z_db,mean_eff,se_eff,mean_fid,se_fid,p0..pK,p_purify,avg_paths
void write_sweep(std::ostream& out, const SweepReport& report);

/// A sweep row as read back from disk.
struct SweepRow {
  std::size_t users = 0;
  CostVector memory_cost;
  double mean_eff = 0.0;
  double se_eff = 0.0;
  double mean_fid = 0.0;
  double se_fid = 0.0;
  std::vector<double> p;  ///< p0..pK
  std::optional<double> p_purify;
  double avg_paths = 0.0;
};

/// Throws ParseError on missing columns, malformed numbers or an empty file.
[[nodiscard]] std::vector<SweepRow> parse_sweep(const CsvTable& table);

/// Per-pair scatter points: one `route` row per claimed route and one
/// `purified` row per routed pair.
class ScatterWriter {
public:
  explicit ScatterWriter(std::ostream& out);

  void append(std::size_t users, const CostVector& memory_cost,
              std::size_t trial, const TrialResult& result);

private:
  std::ostream& out_;
};

void write_contours(std::ostream& out, const ContourGrid& grid);

}  // namespace qnet
