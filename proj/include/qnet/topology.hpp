#pragma once

#include "qnet/cost_model.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_set>
#include <vector>

namespace qnet {

/// Dense 0..|V|-1 node index.
using NodeId = std::uint32_t;

enum class CoordinateKind { Planar, Geodetic };

/// Either (lat_deg, lon_deg) or planar (x_km, y_km).
struct Coordinate {
  CoordinateKind kind = CoordinateKind::Planar;
  double first = 0.0;
  double second = 0.0;

  static Coordinate planar(double x_km, double y_km) {
    return {CoordinateKind::Planar, x_km, y_km};
  }
  static Coordinate geodetic(double lat_deg, double lon_deg) {
    return {CoordinateKind::Geodetic, lat_deg, lon_deg};
  }
  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

inline constexpr double kEarthRadiusKm = 6371.0;

/// Euclidean for planar, haversine great-circle for geodetic. Throws
/// std::invalid_argument for mixed kinds.
[[nodiscard]] double distance_km(const Coordinate& a, const Coordinate& b);

struct NodeInfo {
  std::string name;
  std::optional<Coordinate> coordinate;
  std::optional<unsigned> depth;
};

struct Edge {
  NodeId u = 0;
  NodeId v = 0;
  CostVector cost;
};

/// Undirected simple graph of quantum nodes and channels.
class NetworkGraph {
public:
  NetworkGraph() = default;
  explicit NetworkGraph(std::size_t node_count);

  NodeId add_node(NodeInfo info = {});
  /// Throws std::invalid_argument on unknown nodes, self-loops, or an edge
  /// that already exists between u and v.
  void add_edge(NodeId u, NodeId v, CostVector cost);

  [[nodiscard]] bool has_edge(NodeId u, NodeId v) const;
  [[nodiscard]] std::size_t node_count() const { return nodes_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] const NodeInfo& node(NodeId id) const { return nodes_.at(id); }
  [[nodiscard]] std::span<const NodeInfo> nodes() const { return nodes_; }
  [[nodiscard]] std::span<const Edge> edges() const { return edges_; }
  [[nodiscard]] std::vector<std::vector<NodeId>> adjacency() const;

private:
  static std::uint64_t key(NodeId u, NodeId v);

  std::vector<NodeInfo> nodes_;
  std::vector<Edge> edges_;
  std::unordered_set<std::uint64_t> edge_keys_;
};

/// Children per node at each depth level: {8, 7} gives 8 children of the
/// root and 7 children of each depth-1 node.
class BranchingSpec {
public:
  explicit BranchingSpec(std::vector<unsigned> branches);

  [[nodiscard]] std::span<const unsigned> branches() const { return branches_; }
  [[nodiscard]] std::size_t depth() const { return branches_.size(); }
  /// 1 + sum_d prod_{i<=d} b_i
  [[nodiscard]] std::size_t node_count() const;
  /// Number of nodes at depth d (d = 0 is the root).
  [[nodiscard]] std::size_t nodes_at_depth(std::size_t d) const;

private:
  std::vector<unsigned> branches_;
};

[[nodiscard]] NetworkGraph gen_complete(std::size_t n, CostVector edge_cost);
/// m rows by n columns, row-major numbering, 4-neighbour adjacency.
[[nodiscard]] NetworkGraph gen_lattice(std::size_t m, std::size_t n,
                                       CostVector edge_cost);
/// Balanced tree in breadth-first order; node 0 is the root.
[[nodiscard]] NetworkGraph gen_tree(const BranchingSpec& spec,
                                    CostVector edge_cost);
/// gen_tree plus a ring through every depth level in generation order.
[[nodiscard]] NetworkGraph gen_connected_tree(const BranchingSpec& spec,
                                              CostVector edge_cost);
/// Complete graph with edge cost distance_km * cost_per_km.
[[nodiscard]] NetworkGraph gen_geo_complete(std::span<const Coordinate> coords,
                                            CostVector cost_per_km);
/// Minimum-length spanning tree of the same weighted complete graph.
[[nodiscard]] NetworkGraph gen_geo_mst(std::span<const Coordinate> coords,
                                       CostVector cost_per_km);

/// Sum of edge lengths; every node must carry a coordinate.
[[nodiscard]] double total_length_km(const NetworkGraph& graph);
/// Number of unordered pairs with identical coordinates.
[[nodiscard]] std::size_t count_coincident(std::span<const Coordinate> coords);
[[nodiscard]] bool is_connected(const NetworkGraph& graph);

}  // namespace qnet
