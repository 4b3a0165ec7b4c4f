#pragma once

#include "qnet/cost_model.hpp"
#include "qnet/routing_graph.hpp"
#include "qnet/topology.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <vector>

namespace qnet {

/// A user pair registered on a temporal graph, with its virtual endpoints.
struct EndpointPair {
  NodeId a = 0;
  NodeId b = 0;
  std::uint32_t source = 0;  ///< virtual meta-node feeding every copy of a
  std::uint32_t sink = 0;    ///< virtual meta-node fed by every copy of b
};

/// Layered meta-graph modelling quantum memories.
///
/// Meta-node numbering: copy (v, t) of base node v in layer t is t*|V| + v;
/// virtual endpoints follow in registration order (source, sink, source, ...).
/// Intra-layer edges are undirected copies of the base edges. Memory edges
/// run forward in time only, (v, t) -> (v, t+1). Shim edges are directed
/// source -> (a, t) and (b, t) -> sink, so no route can transit a virtual
/// node.
///
/// The layered part is shared between copies; each copy owns only its
/// endpoints, which keeps per-trial working copies cheap.
class TemporalGraph {
public:
  TemporalGraph(std::shared_ptr<const NetworkGraph> base, unsigned layers,
                CostVector memory_cost);

  /// Throws std::invalid_argument for unknown or identical nodes.
  EndpointPair attach_endpoints(NodeId a, NodeId b);

  [[nodiscard]] const NetworkGraph& base() const { return core_->base; }
  /// The base graph compiled for routing (node ids equal base NodeIds).
  [[nodiscard]] const RoutingGraph& base_routing() const {
    return core_->base_routing;
  }
  /// Quantised distances from every base node to `target` in the intact
  /// base graph (kUnreachable-free: unreachable entries hold INT64_MAX).
  /// Computed once per (target, mode) and shared by all copies.
  [[nodiscard]] std::shared_ptr<const std::vector<std::int64_t>>
  base_distances_to(NodeId target, Scalarization mode) const;
  [[nodiscard]] unsigned layers() const { return core_->layers; }
  [[nodiscard]] const CostVector& memory_cost() const {
    return core_->memory_cost;
  }
  [[nodiscard]] std::span<const EndpointPair> endpoints() const {
    return endpoints_;
  }

  [[nodiscard]] std::size_t meta_node_count() const;
  [[nodiscard]] std::uint32_t meta_node(NodeId v, unsigned layer) const;
  [[nodiscard]] bool is_virtual(std::uint32_t meta) const;
  [[nodiscard]] std::optional<NodeId> base_node(std::uint32_t meta) const;
  [[nodiscard]] std::optional<unsigned> layer_of(std::uint32_t meta) const;

  [[nodiscard]] std::size_t channel_edge_count() const;
  [[nodiscard]] std::size_t memory_edge_count() const;
  [[nodiscard]] std::size_t shim_edge_count() const { return shims_.size(); }

  /// Every meta-edge: channels, then memory edges, then shims.
  [[nodiscard]] std::vector<EdgeSpec> edges() const;
  [[nodiscard]] RoutingGraph compile() const;

private:
  struct Core {
    NetworkGraph base;
    RoutingGraph base_routing;
    unsigned layers;
    CostVector memory_cost;
    std::vector<EdgeSpec> layered;  // channels then memory edges
    std::size_t channel_count;
    mutable std::mutex cache_mutex;
    mutable std::map<std::pair<NodeId, Scalarization>,
                     std::shared_ptr<const std::vector<std::int64_t>>>
        distance_cache;
  };

  std::shared_ptr<const Core> core_;
  std::vector<EdgeSpec> shims_;
  std::vector<EndpointPair> endpoints_;
};

/// Throws std::invalid_argument when layers == 0.
[[nodiscard]] TemporalGraph build_temporal(const NetworkGraph& base,
                                           unsigned layers,
                                           CostVector memory_cost);

}  // namespace qnet
