#pragma once

#include "qnet/analytics.hpp"
#include "qnet/config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace qnet {

inline constexpr const char* kVersion = "0.1.0";

struct TopologyResult {
  std::string name;
  std::size_t nodes = 0;
  std::size_t edges = 0;
  SweepReport report;
  ThresholdSummary thresholds;
};

struct RunResult {
  std::filesystem::path directory;
  std::vector<std::filesystem::path> files;  ///< data files, run-dir relative
  std::vector<TopologyResult> topologies;
};

/// Runs every topology of `cfg` and writes, under
/// `out_root / (name + "-" + config_hash)`:
///
///   <topology>.graph         the generated network
///   <topology>.sweep.csv     one row per (M, memory cost) cell
///   <topology>.scatter.csv   per-pair points for the scatter M values,
///                            first memory cost only
///   thresholds.json          headline and per-memory-cost thresholds
///   manifest.json            config echo, version, timestamps, file list
///
/// Everything except the manifest is a pure function of the config.
/// `threads` = 0 uses every hardware thread.
[[nodiscard]] RunResult run_sweep(const RunConfig& cfg,
                                  const std::filesystem::path& out_root,
                                  unsigned threads = 0);

}  // namespace qnet
