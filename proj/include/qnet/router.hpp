#pragma once

#include "qnet/cost_model.hpp"
#include "qnet/routing_graph.hpp"
#include "qnet/temporal_graph.hpp"

#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace qnet {

/// Minimum-weight path from src to dst under `mode`, skipping edges whose
/// `alive` flag is zero (an empty span means every edge is alive).
///
/// Ties are broken by fewer hops, then by the lexicographically smallest
/// node sequence, so the result is a pure function of the inputs.
/// Returns std::nullopt when dst is unreachable.
///
/// `potential`, when non-empty, turns the search into A*: it must be a
/// consistent lower bound on the remaining weight to dst (potential[dst] = 0
/// and w(u,v) >= potential[u] - potential[v] on every arc). Results are
/// identical with or without it.
[[nodiscard]] std::optional<Route> shortest_path(
    const RoutingGraph& graph, std::span<const std::uint8_t> alive,
    std::uint32_t src, std::uint32_t dst,
    Scalarization mode = Scalarization::Sum,
    std::span<const std::int64_t> potential = {});

inline constexpr std::int64_t kUnreachable =
    std::numeric_limits<std::int64_t>::max();

/// Single-source quantised distances over every edge; kUnreachable where
/// there is no path. The graph is treated as-is (no consumption mask).
[[nodiscard]] std::vector<std::int64_t> shortest_distances(
    const RoutingGraph& graph, std::uint32_t src,
    Scalarization mode = Scalarization::Sum);

/// Routing state for one trial: a temporal graph with its endpoints attached
/// and a per-edge consumption mask.
class WorkingCopy {
public:
  explicit WorkingCopy(TemporalGraph graph);

  [[nodiscard]] const TemporalGraph& temporal() const { return temporal_; }
  [[nodiscard]] const RoutingGraph& graph() const { return graph_; }
  [[nodiscard]] std::span<const std::uint8_t> alive() const { return alive_; }
  [[nodiscard]] bool is_alive(std::uint32_t edge) const {
    return alive_[edge] != 0;
  }

  /// Shortest route between the pair's virtual endpoints in the current
  /// (partially consumed) graph, with layers_used filled in.
  [[nodiscard]] std::optional<Route> find(const EndpointPair& pair,
                                          Scalarization mode) const;
  /// Deletes every channel and memory edge of the route. Shims persist.
  void consume(const Route& route);

private:
  [[nodiscard]] std::span<const std::int64_t> potential(
      const EndpointPair& pair, Scalarization mode) const;

  TemporalGraph temporal_;
  RoutingGraph graph_;
  std::vector<std::uint8_t> alive_;
  mutable std::map<std::pair<std::uint32_t, Scalarization>,
                   std::vector<std::int64_t>>
      potentials_;
};

struct PairOutcome {
  NodeId a = 0;
  NodeId b = 0;
  std::vector<Route> routes;
  /// Present iff at least one route was found.
  std::optional<PathMetrics> purified;
};

/// Repeated shortest_path with whole-route edge consumption, up to
/// max_paths routes or until the pair is disconnected.
[[nodiscard]] PairOutcome greedy_multipath(
    WorkingCopy& copy, const EndpointPair& pair, unsigned max_paths,
    Scalarization mode = Scalarization::Sum);

/// Round-robin allocation: in each of max_paths rounds every pair, in order,
/// claims its current shortest route (if any). Pairs must not share a node;
/// throws std::invalid_argument otherwise.
[[nodiscard]] std::vector<PairOutcome> allocate_multiuser(
    WorkingCopy& copy, std::span<const EndpointPair> pairs, unsigned max_paths,
    Scalarization mode = Scalarization::Sum);

}  // namespace qnet
