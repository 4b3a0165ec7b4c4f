#include "qnet/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qnet {

double distance_km(const Coordinate& a, const Coordinate& b) {
  if (a.kind != b.kind) {
    throw std::invalid_argument("cannot mix planar and geodetic coordinates");
  }
  if (a == b) {
    return 0.0;
  }
  if (a.kind == CoordinateKind::Planar) {
    return std::hypot(a.first - b.first, a.second - b.second);
  }
  constexpr double kRad = std::numbers::pi / 180.0;
  const double lat1 = a.first * kRad;
  const double lat2 = b.first * kRad;
  const double dlat = lat2 - lat1;
  const double dlon = (b.second - a.second) * kRad;
  const double s = std::sin(dlat / 2.0);
  const double t = std::sin(dlon / 2.0);
  const double h = s * s + std::cos(lat1) * std::cos(lat2) * t * t;
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

NetworkGraph::NetworkGraph(std::size_t node_count) : nodes_(node_count) {}

NodeId NetworkGraph::add_node(NodeInfo info) {
  nodes_.push_back(std::move(info));
  return static_cast<NodeId>(nodes_.size() - 1);
}

std::uint64_t NetworkGraph::key(NodeId u, NodeId v) {
  if (u > v) {
    std::swap(u, v);
  }
  return (static_cast<std::uint64_t>(u) << 32) | v;
}

void NetworkGraph::add_edge(NodeId u, NodeId v, CostVector cost) {
  if (u >= nodes_.size() || v >= nodes_.size()) {
    throw std::invalid_argument("edge endpoint out of range: " +
                                std::to_string(u) + "-" + std::to_string(v));
  }
  if (u == v) {
    throw std::invalid_argument("self-loop at node " + std::to_string(u));
  }
  if (!edge_keys_.insert(key(u, v)).second) {
    throw std::invalid_argument("parallel edge " + std::to_string(u) + "-" +
                                std::to_string(v));
  }
  edges_.push_back({u, v, cost});
}

bool NetworkGraph::has_edge(NodeId u, NodeId v) const {
  return edge_keys_.contains(key(u, v));
}

std::vector<std::vector<NodeId>> NetworkGraph::adjacency() const {
  std::vector<std::vector<NodeId>> adj(nodes_.size());
  for (const auto& e : edges_) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  return adj;
}

BranchingSpec::BranchingSpec(std::vector<unsigned> branches)
    : branches_(std::move(branches)) {
  if (branches_.empty()) {
    throw std::invalid_argument("branching spec needs at least one level");
  }
  for (unsigned b : branches_) {
    if (b < 1) {
      throw std::invalid_argument("branching factors must be >= 1");
    }
  }
}

std::size_t BranchingSpec::nodes_at_depth(std::size_t d) const {
  std::size_t count = 1;
  for (std::size_t i = 0; i < d && i < branches_.size(); ++i) {
    count *= branches_[i];
  }
  return d > branches_.size() ? 0 : count;
}

std::size_t BranchingSpec::node_count() const {
  std::size_t total = 0;
  for (std::size_t d = 0; d <= branches_.size(); ++d) {
    total += nodes_at_depth(d);
  }
  return total;
}

NetworkGraph gen_complete(std::size_t n, CostVector edge_cost) {
  if (n < 2) {
    throw std::invalid_argument("complete graph needs n >= 2");
  }
  NetworkGraph g(n);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      g.add_edge(u, v, edge_cost);
    }
  }
  return g;
}

NetworkGraph gen_lattice(std::size_t m, std::size_t n, CostVector edge_cost) {
  if (m < 2 || n < 2) {
    throw std::invalid_argument("lattice needs m, n >= 2");
  }
  NetworkGraph g(m * n);
  auto id = [n](std::size_t r, std::size_t c) {
    return static_cast<NodeId>(r * n + c);
  };
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (c + 1 < n) {
        g.add_edge(id(r, c), id(r, c + 1), edge_cost);
      }
      if (r + 1 < m) {
        g.add_edge(id(r, c), id(r + 1, c), edge_cost);
      }
    }
  }
  return g;
}

namespace {

// Builds the tree and returns, per depth, the node ids in generation order.
std::vector<std::vector<NodeId>> build_tree(NetworkGraph& g,
                                            const BranchingSpec& spec,
                                            CostVector edge_cost) {
  std::vector<std::vector<NodeId>> levels;
  levels.push_back({g.add_node({.name = {}, .coordinate = {}, .depth = 0U})});
  for (std::size_t d = 0; d < spec.depth(); ++d) {
    std::vector<NodeId> next;
    next.reserve(levels.back().size() * spec.branches()[d]);
    for (NodeId parent : levels.back()) {
      for (unsigned b = 0; b < spec.branches()[d]; ++b) {
        const NodeId child = g.add_node(
            {.name = {}, .coordinate = {}, .depth = static_cast<unsigned>(d + 1)});
        g.add_edge(parent, child, edge_cost);
        next.push_back(child);
      }
    }
    levels.push_back(std::move(next));
  }
  return levels;
}

}  // namespace

NetworkGraph gen_tree(const BranchingSpec& spec, CostVector edge_cost) {
  NetworkGraph g;
  build_tree(g, spec, edge_cost);
  return g;
}

NetworkGraph gen_connected_tree(const BranchingSpec& spec,
                                CostVector edge_cost) {
  NetworkGraph g;
  const auto levels = build_tree(g, spec, edge_cost);
  for (std::size_t d = 1; d < levels.size(); ++d) {
    const auto& ring = levels[d];
    const std::size_t k = ring.size();
    if (k == 2) {
      g.add_edge(ring[0], ring[1], edge_cost);
    } else if (k >= 3) {
      for (std::size_t i = 0; i < k; ++i) {
        g.add_edge(ring[i], ring[(i + 1) % k], edge_cost);
      }
    }
  }
  return g;
}

namespace {

NetworkGraph geo_nodes(std::span<const Coordinate> coords) {
  if (coords.size() < 2) {
    throw std::invalid_argument("geographic networks need >= 2 coordinates");
  }
  NetworkGraph g;
  for (const auto& c : coords) {
    g.add_node({.name = {}, .coordinate = c, .depth = {}});
  }
  return g;
}

}  // namespace

NetworkGraph gen_geo_complete(std::span<const Coordinate> coords,
                              CostVector cost_per_km) {
  NetworkGraph g = geo_nodes(coords);
  for (NodeId u = 0; u < coords.size(); ++u) {
    for (NodeId v = u + 1; v < coords.size(); ++v) {
      g.add_edge(u, v, distance_km(coords[u], coords[v]) * cost_per_km);
    }
  }
  return g;
}

NetworkGraph gen_geo_mst(std::span<const Coordinate> coords,
                         CostVector cost_per_km) {
  NetworkGraph g = geo_nodes(coords);
  const std::size_t n = coords.size();

  // Prim on the dense distance matrix; ties go to the lower index.
  std::vector<bool> in_tree(n, false);
  std::vector<double> best(n, std::numeric_limits<double>::infinity());
  std::vector<NodeId> parent(n, 0);
  std::vector<std::pair<NodeId, NodeId>> chosen;
  best[0] = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = n;
    for (std::size_t v = 0; v < n; ++v) {
      if (!in_tree[v] && (pick == n || best[v] < best[pick])) {
        pick = v;
      }
    }
    in_tree[pick] = true;
    if (step > 0) {
      chosen.emplace_back(std::min<NodeId>(parent[pick], pick),
                          std::max<NodeId>(parent[pick], pick));
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (in_tree[v]) {
        continue;
      }
      const double d = distance_km(coords[pick], coords[v]);
      if (d < best[v]) {
        best[v] = d;
        parent[v] = static_cast<NodeId>(pick);
      }
    }
  }
  std::sort(chosen.begin(), chosen.end());
  for (auto [u, v] : chosen) {
    g.add_edge(u, v, distance_km(coords[u], coords[v]) * cost_per_km);
  }
  return g;
}

double total_length_km(const NetworkGraph& graph) {
  double total = 0.0;
  for (const auto& e : graph.edges()) {
    const auto& a = graph.node(e.u).coordinate;
    const auto& b = graph.node(e.v).coordinate;
    if (!a || !b) {
      throw std::invalid_argument("total_length_km needs node coordinates");
    }
    total += distance_km(*a, *b);
  }
  return total;
}

std::size_t count_coincident(std::span<const Coordinate> coords) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    for (std::size_t j = i + 1; j < coords.size(); ++j) {
      count += coords[i] == coords[j] ? 1 : 0;
    }
  }
  return count;
}

bool is_connected(const NetworkGraph& graph) {
  if (graph.node_count() == 0) {
    return true;
  }
  const auto adj = graph.adjacency();
  std::vector<bool> seen(graph.node_count(), false);
  std::vector<NodeId> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const NodeId u = stack.back();
    stack.pop_back();
    for (NodeId v : adj[u]) {
      if (!seen[v]) {
        seen[v] = true;
        ++reached;
        stack.push_back(v);
      }
    }
  }
  return reached == graph.node_count();
}

}  // namespace qnet
