#include "qnet/analytics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <thread>

namespace qnet {

void validate(const ExperimentConfig& cfg, std::size_t node_count) {
  if (cfg.layers < 1) {
    throw std::invalid_argument("temporal.layers must be >= 1");
  }
  if (cfg.max_paths < 1) {
    throw std::invalid_argument("routing.max_paths must be >= 1");
  }
  if (cfg.trials < 1) {
    throw std::invalid_argument("sweep.trials must be >= 1");
  }
  if (cfg.memory_costs.empty()) {
    throw std::invalid_argument("temporal.memory_costs must not be empty");
  }
  if (cfg.user_counts.empty()) {
    throw std::invalid_argument("sweep.users must not be empty");
  }
  for (std::size_t m : cfg.user_counts) {
    if (m > node_count / 2) {
      throw std::invalid_argument(
          "sweep.users entry " + std::to_string(m) + " exceeds floor(|V|/2) = " +
          std::to_string(node_count / 2));
    }
  }
}

std::vector<CostVector> default_memory_sweep() {
  std::vector<CostVector> sweep;
  for (int i = 1; i <= 9; ++i) {
    sweep.emplace_back(0.1 * i, 0.1 * i);
  }
  return sweep;
}

PathCountDistribution::PathCountDistribution(std::vector<double> probabilities)
    : p_(std::move(probabilities)) {
  if (p_.empty()) {
    throw std::invalid_argument("path-count distribution must not be empty");
  }
  double total = 0.0;
  for (double x : p_) {
    if (!(x >= 0.0 && x <= 1.0)) {
      throw std::invalid_argument("path-count probabilities must lie in [0,1]");
    }
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-9) {
    throw std::invalid_argument("path-count probabilities must sum to 1");
  }
}

double purification_probability(const PathCountDistribution& d) {
  const double routed = 1.0 - d[0];
  if (!(routed > 0.0)) {
    throw std::domain_error("P_P is undefined when P_0 = 1");
  }
  double multi = 0.0;
  for (std::size_t n = 2; n <= d.max_paths(); ++n) {
    multi += d[n];
  }
  return std::clamp(multi / routed, 0.0, 1.0);
}

void SweepCell::merge(const SweepCell& other) {
  trials += other.trials;
  pairs += other.pairs;
  routed += other.routed;
  failed_trials += other.failed_trials;
  if (path_counts.size() < other.path_counts.size()) {
    path_counts.resize(other.path_counts.size(), 0);
  }
  for (std::size_t n = 0; n < other.path_counts.size(); ++n) {
    path_counts[n] += other.path_counts[n];
  }
  sum_eff += other.sum_eff;
  sum_eff2 += other.sum_eff2;
  sum_fid += other.sum_fid;
  sum_fid2 += other.sum_fid2;
  sum_paths += other.sum_paths;
  sum_paths2 += other.sum_paths2;
}

void SweepCell::add(const TrialResult& result) {
  bool failed = false;
  for (const auto& o : result.outcomes) {
    const std::size_t n = o.routes.size();
    if (path_counts.size() <= n) {
      path_counts.resize(n + 1, 0);
    }
    ++path_counts[n];
    ++pairs;
    sum_paths += static_cast<double>(n);
    sum_paths2 += static_cast<double>(n * n);
    if (o.purified) {
      ++routed;
      sum_eff += o.purified->efficiency;
      sum_eff2 += o.purified->efficiency * o.purified->efficiency;
      sum_fid += o.purified->fidelity;
      sum_fid2 += o.purified->fidelity * o.purified->fidelity;
    } else {
      failed = true;
    }
  }
  ++trials;
  failed_trials += failed ? 1 : 0;
}

namespace {

// Mean and standard error of the mean from first and second moments.
std::pair<double, double> moments(double sum, double sum2, std::size_t n) {
  if (n == 0) {
    return {std::numeric_limits<double>::quiet_NaN(),
            std::numeric_limits<double>::quiet_NaN()};
  }
  const double mean = sum / static_cast<double>(n);
  if (n == 1) {
    return {mean, 0.0};
  }
  const double var =
      std::max(0.0, (sum2 - sum * mean) / static_cast<double>(n - 1));
  return {mean, std::sqrt(var / static_cast<double>(n))};
}

}  // namespace

void SweepCell::finalize() {
  std::tie(mean_eff, se_eff) = moments(sum_eff, sum_eff2, routed);
  std::tie(mean_fid, se_fid) = moments(sum_fid, sum_fid2, routed);
  std::tie(avg_paths, se_paths) = moments(sum_paths, sum_paths2, pairs);
  if (pairs == 0) {
    distribution = PathCountDistribution{};
    p_purify.reset();
    avg_paths = 0.0;
    se_paths = 0.0;
    return;
  }
  std::vector<double> p(path_counts.size());
  for (std::size_t n = 0; n < p.size(); ++n) {
    p[n] = static_cast<double>(path_counts[n]) / static_cast<double>(pairs);
  }
  // Rounding in the divisions can leave the total a few ulps from 1.
  const double total = std::accumulate(p.begin(), p.end(), 0.0);
  for (double& x : p) {
    x /= total;
  }
  distribution = PathCountDistribution(std::move(p));
  if (routed > 0) {
    p_purify = purification_probability(distribution);
  } else {
    p_purify.reset();
  }
}

const SweepCell& SweepReport::cell(std::size_t user_index,
                                   std::size_t memory_index) const {
  return cells.at(user_index * config.memory_costs.size() + memory_index);
}

std::vector<SweepCell> SweepReport::series(std::size_t memory_index) const {
  std::vector<SweepCell> out;
  for (std::size_t u = 0; u < config.user_counts.size(); ++u) {
    out.push_back(cell(u, memory_index));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const SweepCell& a, const SweepCell& b) {
                     return a.users < b.users;
                   });
  return out;
}

std::vector<SweepCell> SweepReport::pooled_series() const {
  std::vector<SweepCell> out = series(0);
  for (std::size_t m = 1; m < config.memory_costs.size(); ++m) {
    const auto other = series(m);
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i].merge(other[i]);
    }
  }
  for (auto& c : out) {
    c.finalize();
  }
  return out;
}

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t cell,
                          std::uint64_t trial) {
  std::uint64_t state = seed;
  std::uint64_t mixed = splitmix64(state);
  state = mixed ^ cell;
  mixed = splitmix64(state);
  state = mixed ^ trial;
  return std::mt19937_64(splitmix64(state));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) {
    throw std::invalid_argument("uniform_below needs a positive bound");
  }
  // Reject the low (2^64 mod bound) values so every residue is equally likely.
  const std::uint64_t threshold = (0 - bound) % bound;
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) {
      return x % bound;
    }
  }
}

std::vector<std::pair<NodeId, NodeId>> sample_pairs(std::size_t node_count,
                                                    std::size_t users,
                                                    std::mt19937_64& rng) {
  if (2 * users > node_count) {
    throw std::invalid_argument("not enough nodes for " +
                                std::to_string(users) + " disjoint pairs");
  }
  std::vector<NodeId> ids(node_count);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  for (std::size_t i = 0; i < 2 * users; ++i) {
    const std::size_t j = i + uniform_below(rng, node_count - i);
    std::swap(ids[i], ids[j]);
  }
  std::vector<std::pair<NodeId, NodeId>> pairs;
  pairs.reserve(users);
  for (std::size_t i = 0; i < users; ++i) {
    pairs.emplace_back(ids[2 * i], ids[2 * i + 1]);
  }
  return pairs;
}

TrialRunner::TrialRunner(const NetworkGraph& graph, const ExperimentConfig& cfg,
                         CostVector memory_cost)
    : base_(build_temporal(graph, cfg.layers, memory_cost)),
      max_paths_(cfg.max_paths),
      mode_(cfg.scalarization),
      seed_(cfg.seed) {}

TrialResult TrialRunner::run(std::size_t users, std::uint64_t cell,
                             std::uint64_t trial) const {
  auto rng = trial_rng(seed_, cell, trial);
  const auto pairs = sample_pairs(base_.base().node_count(), users, rng);
  TemporalGraph tg = base_;
  std::vector<EndpointPair> endpoints;
  endpoints.reserve(pairs.size());
  for (auto [a, b] : pairs) {
    endpoints.push_back(tg.attach_endpoints(a, b));
  }
  WorkingCopy copy(std::move(tg));
  return {allocate_multiuser(copy, endpoints, max_paths_, mode_)};
}

namespace {

SweepCell run_cell(const TrialRunner& runner, const ExperimentConfig& cfg,
                   std::size_t users, CostVector memory_cost,
                   std::uint64_t cell_index) {
  SweepCell cell;
  cell.users = users;
  cell.memory_cost = memory_cost;
  cell.path_counts.assign(cfg.max_paths + 1, 0);
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    cell.add(runner.run(users, cell_index, t));
  }
  cell.finalize();
  return cell;
}

}  // namespace

SweepReport run_trials(const NetworkGraph& graph, const ExperimentConfig& cfg) {
  validate(cfg, graph.node_count());
  SweepReport report;
  report.config = cfg;
  report.node_count = graph.node_count();
  report.edge_count = graph.edge_count();

  const std::size_t n_mem = cfg.memory_costs.size();
  std::vector<TrialRunner> runners;
  runners.reserve(n_mem);
  for (const auto& mc : cfg.memory_costs) {
    runners.emplace_back(graph, cfg, mc);
  }

  const std::size_t n_cells = cfg.user_counts.size() * n_mem;
  report.cells.resize(n_cells);
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t c = next++; c < n_cells; c = next++) {
      const std::size_t u = c / n_mem;
      const std::size_t m = c % n_mem;
      report.cells[c] = run_cell(runners[m], cfg, cfg.user_counts[u],
                                 cfg.memory_costs[m], c);
    }
  };

  unsigned threads = cfg.threads != 0 ? cfg.threads
                                      : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n_cells));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned i = 0; i < threads; ++i) {
      pool.emplace_back(worker);
    }
  }
  return report;
}

Thresholds detect_thresholds(std::span<const SweepCell> series, double z) {
  std::vector<const SweepCell*> cells;
  for (const auto& c : series) {
    if (c.users > 0) {
      cells.push_back(&c);
    }
  }
  Thresholds out;
  for (const auto* c : cells) {
    if (c->failed_trials == 0) {
      out.user = c->users;
    }
  }

  std::vector<const SweepCell*> with_eff;
  for (const auto* c : cells) {
    if (c->routed > 0) {
      with_eff.push_back(c);
    }
  }
  if (with_eff.size() < 3) {
    return out;
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < with_eff.size(); ++i) {
    if (with_eff[i]->mean_eff < with_eff[best]->mean_eff) {
      best = i;
    }
  }
  if (best == 0 || best + 1 == with_eff.size()) {
    return out;
  }
  auto rises_above_min = [&](const SweepCell& end) {
    const double se = std::hypot(end.se_eff, with_eff[best]->se_eff);
    return end.mean_eff - with_eff[best]->mean_eff > z * se;
  };
  if (rises_above_min(*with_eff.front()) && rises_above_min(*with_eff.back())) {
    out.purification = with_eff[best]->users;
  }
  return out;
}

ThresholdSummary summarize_thresholds(const SweepReport& report, double z) {
  ThresholdSummary out;
  std::vector<std::size_t> users;
  for (std::size_t m = 0; m < report.config.memory_costs.size(); ++m) {
    out.per_memory_cost.push_back(detect_thresholds(report.series(m), z));
    if (auto u = out.per_memory_cost.back().user) {
      users.push_back(*u);
    }
  }
  out.headline.purification = detect_thresholds(report.pooled_series(), z).purification;
  if (!users.empty()) {
    std::sort(users.begin(), users.end());
    out.headline.user = users[(users.size() - 1) / 2];
  }
  return out;
}

GeoComparison compare_geo(const NetworkGraph& mst, const NetworkGraph& complete,
                          const GeoConfig& cfg) {
  if (mst.node_count() != complete.node_count()) {
    throw std::invalid_argument("geo networks must share their node set");
  }
  ExperimentConfig ec;
  ec.layers = cfg.layers;
  ec.memory_costs = {cfg.memory_cost};
  ec.user_counts = {cfg.users};
  ec.max_paths = cfg.max_paths;
  ec.trials = cfg.trials;
  ec.seed = cfg.seed;
  ec.scalarization = cfg.scalarization;
  validate(ec, mst.node_count());

  const TrialRunner mst_runner(mst, ec, cfg.memory_cost);
  const TrialRunner cg_runner(complete, ec, cfg.memory_cost);
  GeoComparison out;
  for (auto* side : {&out.mst, &out.complete}) {
    side->stats.users = cfg.users;
    side->stats.memory_cost = cfg.memory_cost;
    side->stats.path_counts.assign(cfg.max_paths + 1, 0);
  }
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    // Same (cell, trial) substream on both sides, so the pairs match.
    auto a = mst_runner.run(cfg.users, 0, t);
    auto b = cg_runner.run(cfg.users, 0, t);
    for (std::size_t i = 0; i < a.outcomes.size(); ++i) {
      const auto& x = a.outcomes[i].purified;
      const auto& y = b.outcomes[i].purified;
      if (x && y) {
        ++out.matched;
        out.complete_better += y->fidelity > x->fidelity ? 1 : 0;
      }
    }
    out.mst.stats.add(a);
    out.complete.stats.add(b);
    out.mst.trials.push_back(std::move(a));
    out.complete.trials.push_back(std::move(b));
  }
  out.mst.stats.finalize();
  out.complete.stats.finalize();
  return out;
}

}  // namespace qnet
