#pragma once

#include "qnet/cost_model.hpp"
#include "qnet/topology.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace qnet {

enum class EdgeKind : std::uint8_t {
  Channel,  ///< physical link (possibly a per-layer copy)
  Memory,   ///< storage of a qubit from one temporal layer to the next
  Shim,     ///< zero-cost attachment of a virtual endpoint
};

struct EdgeSpec {
  std::uint32_t tail = 0;
  std::uint32_t head = 0;
  CostVector cost;
  EdgeKind kind = EdgeKind::Channel;
  bool directed = false;
};

struct Arc {
  std::uint32_t head;
  std::uint32_t edge;
};

/// Immutable adjacency (CSR) over a mixed directed/undirected edge list.
/// Undirected edges produce two arcs sharing one edge id, so consuming an
/// edge removes both directions at once.
///
/// Scalar weights are stored as integer nano-dB so that equal-cost routes
/// compare exactly equal and tie-breaking is reproducible.
class RoutingGraph {
public:
  RoutingGraph() = default;
  RoutingGraph(std::size_t node_count, std::vector<EdgeSpec> edges);

  [[nodiscard]] std::size_t node_count() const { return offsets_.size() - 1; }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] const EdgeSpec& edge(std::uint32_t id) const {
    return edges_[id];
  }
  [[nodiscard]] std::span<const EdgeSpec> edges() const { return edges_; }
  [[nodiscard]] std::span<const Arc> out_arcs(std::uint32_t node) const {
    return {arcs_.data() + offsets_[node], arcs_.data() + offsets_[node + 1]};
  }
  [[nodiscard]] std::int64_t weight(std::uint32_t edge,
                                    Scalarization mode) const {
    return weights_[static_cast<std::size_t>(mode)][edge];
  }

private:
  std::vector<EdgeSpec> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Arc> arcs_;
  std::array<std::vector<std::int64_t>, 3> weights_;
};

[[nodiscard]] RoutingGraph to_routing_graph(const NetworkGraph& graph);

/// Scalar weight quantisation: 1 unit = 1e-9 dB.
[[nodiscard]] std::int64_t quantize_weight(double scalar_db);

/// A simple path through a routing graph.
struct Route {
  std::vector<std::uint32_t> nodes;
  std::vector<std::uint32_t> edges;
  CostVector total_cost;
  /// Sorted temporal layers visited; empty for plain graphs.
  std::vector<unsigned> layers_used;

  [[nodiscard]] std::size_t hops() const { return edges.size(); }
};

}  // namespace qnet
