#include "qnet/routing_graph.hpp"

#include <cmath>
#include <stdexcept>

namespace qnet {

std::int64_t quantize_weight(double scalar_db) {
  if (!(scalar_db >= 0.0) || scalar_db > 1e9) {
    throw std::domain_error("scalar weight out of range");
  }
  return std::llround(scalar_db * 1e9);
}

RoutingGraph::RoutingGraph(std::size_t node_count, std::vector<EdgeSpec> edges)
    : edges_(std::move(edges)) {
  std::vector<std::size_t> degree(node_count, 0);
  for (const auto& e : edges_) {
    if (e.tail >= node_count || e.head >= node_count) {
      throw std::invalid_argument("routing edge endpoint out of range");
    }
    ++degree[e.tail];
    if (!e.directed) {
      ++degree[e.head];
    }
  }
  offsets_.assign(node_count + 1, 0);
  for (std::size_t v = 0; v < node_count; ++v) {
    offsets_[v + 1] = offsets_[v] + degree[v];
  }
  arcs_.resize(offsets_.back());
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t id = 0; id < edges_.size(); ++id) {
    const auto& e = edges_[id];
    arcs_[fill[e.tail]++] = {e.head, id};
    if (!e.directed) {
      arcs_[fill[e.head]++] = {e.tail, id};
    }
  }
  for (auto mode : {Scalarization::Sum, Scalarization::LossOnly,
                    Scalarization::DephasingOnly}) {
    auto& w = weights_[static_cast<std::size_t>(mode)];
    w.reserve(edges_.size());
    // Edge costs repeat heavily (uniform links, per-layer copies).
    const CostVector* last = nullptr;
    std::int64_t last_w = 0;
    for (const auto& e : edges_) {
      if (last == nullptr || !(e.cost == *last)) {
        last = &e.cost;
        last_w = quantize_weight(scalarize(e.cost, mode));
      }
      w.push_back(last_w);
    }
  }
}

RoutingGraph to_routing_graph(const NetworkGraph& graph) {
  std::vector<EdgeSpec> specs;
  specs.reserve(graph.edge_count());
  for (const auto& e : graph.edges()) {
    specs.push_back({e.u, e.v, e.cost, EdgeKind::Channel, false});
  }
  return {graph.node_count(), std::move(specs)};
}

}  // namespace qnet
