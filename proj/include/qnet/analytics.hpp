#pragma once

#include "qnet/cost_model.hpp"
#include "qnet/router.hpp"
#include "qnet/topology.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace qnet {

struct ExperimentConfig {
  unsigned layers = 3;
  std::vector<CostVector> memory_costs;
  std::vector<std::size_t> user_counts;
  unsigned max_paths = 3;
  std::size_t trials = 500;
  std::uint64_t seed = 1;
  Scalarization scalarization = Scalarization::Sum;
  /// Worker threads; 0 means std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Throws std::invalid_argument naming the offending field.
void validate(const ExperimentConfig& cfg, std::size_t node_count);

/// 0.1 .. 0.9 dB in 9 steps, both components.
[[nodiscard]] std::vector<CostVector> default_memory_sweep();

/// P_n for n = 0..max_paths.
class PathCountDistribution {
public:
  PathCountDistribution() = default;
  explicit PathCountDistribution(std::vector<double> probabilities);

  [[nodiscard]] std::size_t max_paths() const { return p_.size() - 1; }
  [[nodiscard]] double operator[](std::size_t n) const {
    return n < p_.size() ? p_[n] : 0.0;
  }
  [[nodiscard]] std::span<const double> values() const { return p_; }

private:
  std::vector<double> p_{1.0};
};

/// P_P = sum_{n>=2} P_n / (1 - P_0). Throws std::domain_error when P_0 = 1.
[[nodiscard]] double purification_probability(const PathCountDistribution& d);

/// Everything one trial produced, for scatter output and paired comparisons.
struct TrialResult {
  std::vector<PairOutcome> outcomes;
};

/// Aggregated statistics of one (M, memory cost) cell.
struct SweepCell {
  std::size_t users = 0;
  CostVector memory_cost;
  std::size_t trials = 0;
  std::size_t pairs = 0;   ///< trials * users
  std::size_t routed = 0;  ///< pairs with at least one route
  /// Means over routed pairs (NaN when none). Standard errors are
  /// normal-approximation errors of those means.
  double mean_eff = 0.0;
  double se_eff = 0.0;
  double mean_fid = 0.0;
  double se_fid = 0.0;
  PathCountDistribution distribution;
  std::optional<double> p_purify;
  /// Mean route count over all pairs, pathless ones included.
  double avg_paths = 0.0;
  double se_paths = 0.0;
  /// Trials in which at least one pair found no route.
  std::size_t failed_trials = 0;

  // Raw accumulators; the fields above are derived from these by finalize().
  std::vector<std::size_t> path_counts;
  double sum_eff = 0.0;
  double sum_eff2 = 0.0;
  double sum_fid = 0.0;
  double sum_fid2 = 0.0;
  double sum_paths = 0.0;
  double sum_paths2 = 0.0;

  [[nodiscard]] double p0() const { return distribution[0]; }

  /// Accumulates one trial.
  void add(const TrialResult& result);
  /// Adds another cell's accumulators (memory cost and M are kept).
  void merge(const SweepCell& other);
  void finalize();
};

struct Thresholds {
  std::optional<std::size_t> purification;
  std::optional<std::size_t> user;
};

struct SweepReport {
  ExperimentConfig config;
  std::size_t node_count = 0;
  std::size_t edge_count = 0;
  /// Cells in user-major order: cells[u * memory_costs.size() + m].
  std::vector<SweepCell> cells;

  [[nodiscard]] const SweepCell& cell(std::size_t user_index,
                                      std::size_t memory_index) const;
  /// Cells of one memory cost, ascending in M.
  [[nodiscard]] std::vector<SweepCell> series(std::size_t memory_index) const;
  /// Per-M merge across all memory costs.
  [[nodiscard]] std::vector<SweepCell> pooled_series() const;
};

/// Portable substream: mt19937_64 seeded by a splitmix64 hash of
/// (seed, cell, trial).
[[nodiscard]] std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t cell,
                                        std::uint64_t trial);

/// Uniform integer in [0, bound) by rejection; identical on every platform.
[[nodiscard]] std::uint64_t uniform_below(std::mt19937_64& rng,
                                          std::uint64_t bound);

/// `users` node-disjoint pairs drawn uniformly without replacement.
[[nodiscard]] std::vector<std::pair<NodeId, NodeId>> sample_pairs(
    std::size_t node_count, std::size_t users, std::mt19937_64& rng);

/// Reusable per-(graph, config, memory cost) state.
class TrialRunner {
public:
  TrialRunner(const NetworkGraph& graph, const ExperimentConfig& cfg,
              CostVector memory_cost);

  [[nodiscard]] TrialResult run(std::size_t users, std::uint64_t cell,
                                std::uint64_t trial) const;

private:
  TemporalGraph base_;
  unsigned max_paths_;
  Scalarization mode_;
  std::uint64_t seed_;
};

[[nodiscard]] SweepReport run_trials(const NetworkGraph& graph,
                                     const ExperimentConfig& cfg);

/// Thresholds along an ascending-M series at fixed memory cost.
///
/// The purification threshold is the interior M minimising mean efficiency,
/// reported only when both ends of the axis sit more than `z` combined
/// standard errors above that minimum (a genuine dip, not noise or a
/// monotone curve). The user threshold is the largest M whose P_0 estimate
/// is exactly zero. Cells with no users are ignored.
[[nodiscard]] Thresholds detect_thresholds(std::span<const SweepCell> series,
                                           double z = 3.0);

/// Headline thresholds of a whole sweep.
///
/// The purification threshold comes from the series pooled over memory
/// costs, where the efficiency dip is best resolved. The user threshold is
/// the (lower) median of the per-memory-cost values: each of those is a
/// zero-failure count over exactly `trials` trials, and pooling would
/// silently multiply the trial count.
struct ThresholdSummary {
  Thresholds headline;
  std::vector<Thresholds> per_memory_cost;
};

[[nodiscard]] ThresholdSummary summarize_thresholds(const SweepReport& report,
                                                    double z = 3.0);

struct GeoConfig {
  std::size_t users = 3;
  std::size_t trials = 500;
  unsigned layers = 1;
  unsigned max_paths = 3;
  CostVector memory_cost{0.1, 0.1};
  std::uint64_t seed = 1;
  Scalarization scalarization = Scalarization::Sum;
};

struct GeoSide {
  SweepCell stats;
  std::vector<TrialResult> trials;
};

/// The same sampled pairs routed on two networks over one node set.
struct GeoComparison {
  GeoSide mst;
  GeoSide complete;
  /// Pairs routed on both networks, and how many of those the complete
  /// graph served at strictly higher fidelity.
  std::size_t matched = 0;
  std::size_t complete_better = 0;
};

[[nodiscard]] GeoComparison compare_geo(const NetworkGraph& mst,
                                        const NetworkGraph& complete,
                                        const GeoConfig& cfg);

}  // namespace qnet
