#include "qnet/temporal_graph.hpp"

#include "qnet/router.hpp"

#include <stdexcept>
#include <string>

namespace qnet {

TemporalGraph::TemporalGraph(std::shared_ptr<const NetworkGraph> base,
                             unsigned layers, CostVector memory_cost) {
  if (!base) {
    throw std::invalid_argument("temporal graph needs a base graph");
  }
  if (layers < 1) {
    throw std::invalid_argument("temporal graph needs at least one layer");
  }
  const auto n = static_cast<std::uint32_t>(base->node_count());
  std::vector<EdgeSpec> layered;
  layered.reserve(layers * base->edge_count() + (layers - 1) * n);
  for (std::uint32_t t = 0; t < layers; ++t) {
    for (const auto& e : base->edges()) {
      layered.push_back(
          {t * n + e.u, t * n + e.v, e.cost, EdgeKind::Channel, false});
    }
  }
  const std::size_t channels = layered.size();
  for (std::uint32_t t = 0; t + 1 < layers; ++t) {
    for (std::uint32_t v = 0; v < n; ++v) {
      layered.push_back(
          {t * n + v, (t + 1) * n + v, memory_cost, EdgeKind::Memory, true});
    }
  }
  auto core = std::make_shared<Core>();
  core->base = *base;
  core->base_routing = to_routing_graph(*base);
  core->layers = layers;
  core->memory_cost = memory_cost;
  core->layered = std::move(layered);
  core->channel_count = channels;
  core_ = std::move(core);
}

TemporalGraph build_temporal(const NetworkGraph& base, unsigned layers,
                             CostVector memory_cost) {
  return {std::make_shared<const NetworkGraph>(base), layers, memory_cost};
}

std::shared_ptr<const std::vector<std::int64_t>>
TemporalGraph::base_distances_to(NodeId target, Scalarization mode) const {
  const std::lock_guard lock(core_->cache_mutex);
  auto& slot = core_->distance_cache[{target, mode}];
  if (!slot) {
    slot = std::make_shared<const std::vector<std::int64_t>>(
        shortest_distances(core_->base_routing, target, mode));
  }
  return slot;
}

EndpointPair TemporalGraph::attach_endpoints(NodeId a, NodeId b) {
  const std::size_t n = base().node_count();
  if (a >= n || b >= n) {
    throw std::invalid_argument("unknown endpoint node " +
                                std::to_string(a >= n ? a : b));
  }
  if (a == b) {
    throw std::invalid_argument("pair endpoints must differ, got " +
                                std::to_string(a) + " twice");
  }
  const auto source = static_cast<std::uint32_t>(meta_node_count());
  const std::uint32_t sink = source + 1;
  endpoints_.push_back({a, b, source, sink});
  for (unsigned t = 0; t < layers(); ++t) {
    shims_.push_back({source, meta_node(a, t), {}, EdgeKind::Shim, true});
    shims_.push_back({meta_node(b, t), sink, {}, EdgeKind::Shim, true});
  }
  return endpoints_.back();
}

std::size_t TemporalGraph::meta_node_count() const {
  return layers() * base().node_count() + 2 * endpoints_.size();
}

std::uint32_t TemporalGraph::meta_node(NodeId v, unsigned layer) const {
  if (v >= base().node_count() || layer >= layers()) {
    throw std::out_of_range("meta_node index out of range");
  }
  return static_cast<std::uint32_t>(layer * base().node_count() + v);
}

bool TemporalGraph::is_virtual(std::uint32_t meta) const {
  return meta >= layers() * base().node_count();
}

std::optional<NodeId> TemporalGraph::base_node(std::uint32_t meta) const {
  if (is_virtual(meta)) {
    return std::nullopt;
  }
  return static_cast<NodeId>(meta % base().node_count());
}

std::optional<unsigned> TemporalGraph::layer_of(std::uint32_t meta) const {
  if (is_virtual(meta)) {
    return std::nullopt;
  }
  return static_cast<unsigned>(meta / base().node_count());
}

std::size_t TemporalGraph::channel_edge_count() const {
  return core_->channel_count;
}

std::size_t TemporalGraph::memory_edge_count() const {
  return core_->layered.size() - core_->channel_count;
}

std::vector<EdgeSpec> TemporalGraph::edges() const {
  std::vector<EdgeSpec> all;
  all.reserve(core_->layered.size() + shims_.size());
  all.insert(all.end(), core_->layered.begin(), core_->layered.end());
  all.insert(all.end(), shims_.begin(), shims_.end());
  return all;
}

RoutingGraph TemporalGraph::compile() const {
  return {meta_node_count(), edges()};
}

}  // namespace qnet
