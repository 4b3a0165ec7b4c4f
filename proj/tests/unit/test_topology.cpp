#include "qnet/topology.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

using namespace qnet;

namespace {

const CostVector kEdge{0.1, 0.1};

// Ring edges added for a level of k nodes: a cycle needs k >= 3, two nodes
// share a single edge, one node has none.
std::size_t ring_edges(std::size_t k) { return k >= 3 ? k : (k == 2 ? 1 : 0); }

std::vector<Coordinate> random_planar(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 50.0);
  std::vector<Coordinate> c;
  for (std::size_t i = 0; i < n; ++i) {
    c.push_back(Coordinate::planar(u(rng), u(rng)));
  }
  return c;
}

// Minimum spanning length by enumerating every (n-1)-edge subset of the
// complete graph and keeping the acyclic ones.
double brute_force_mst_length(std::span<const Coordinate> pts) {
  const std::size_t n = pts.size();
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      edges.emplace_back(i, j);
    }
  }
  std::vector<char> pick(edges.size(), 0);
  std::fill(pick.end() - static_cast<long>(n - 1), pick.end(), 1);
  double best = std::numeric_limits<double>::infinity();
  do {
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&parent](std::size_t x) {
      while (parent[x] != x) {
        x = parent[x];
      }
      return x;
    };
    bool acyclic = true;
    double length = 0.0;
    for (std::size_t e = 0; e < edges.size() && acyclic; ++e) {
      if (!pick[e]) {
        continue;
      }
      const auto a = find(edges[e].first);
      const auto b = find(edges[e].second);
      if (a == b) {
        acyclic = false;
      }
      parent[a] = b;
      length += distance_km(pts[edges[e].first], pts[edges[e].second]);
    }
    if (acyclic) {
      best = std::min(best, length);
    }
  } while (std::next_permutation(pick.begin(), pick.end()));
  return best;
}

// Kruskal, as an independent second MST algorithm.
double kruskal_length(std::span<const Coordinate> pts) {
  const std::size_t n = pts.size();
  std::vector<std::tuple<double, std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      edges.emplace_back(distance_km(pts[i], pts[j]), i, j);
    }
  }
  std::sort(edges.begin(), edges.end());
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&parent](std::size_t x) {
    while (parent[x] != x) {
      x = parent[x] = parent[parent[x]];
    }
    return x;
  };
  double total = 0.0;
  for (const auto& [d, i, j] : edges) {
    const auto a = find(i);
    const auto b = find(j);
    if (a != b) {
      parent[a] = b;
      total += d;
    }
  }
  return total;
}

}  // namespace

TEST(NetworkGraph, RejectsBadEdges) {
  NetworkGraph g(3);
  g.add_edge(0, 1, kEdge);
  EXPECT_THROW(g.add_edge(1, 0, kEdge), std::invalid_argument);
  EXPECT_THROW(g.add_edge(2, 2, kEdge), std::invalid_argument);
  EXPECT_THROW(g.add_edge(0, 3, kEdge), std::invalid_argument);
  EXPECT_TRUE(g.has_edge(1, 0));
  EXPECT_FALSE(g.has_edge(1, 2));
}

TEST(Generators, ReferenceSizes) {
  EXPECT_EQ(gen_complete(14, kEdge).edge_count(), 91u);
  EXPECT_EQ(gen_lattice(8, 8, kEdge).edge_count(), 112u);
  const auto tree = gen_tree(BranchingSpec({8, 7}), kEdge);
  EXPECT_EQ(tree.node_count(), 65u);
  EXPECT_EQ(tree.edge_count(), 64u);
  EXPECT_EQ(gen_connected_tree(BranchingSpec({64}), kEdge).edge_count(), 128u);
  const auto ct = gen_connected_tree(BranchingSpec({3, 2, 3, 2}), kEdge);
  EXPECT_EQ(ct.node_count(), 64u);
  EXPECT_EQ(ct.edge_count(), 126u);
}

TEST(Generators, LatticeIsRowMajorGrid) {
  const auto g = gen_lattice(3, 4, kEdge);
  EXPECT_TRUE(g.has_edge(0, 1));
  EXPECT_TRUE(g.has_edge(0, 4));
  EXPECT_FALSE(g.has_edge(3, 4));  // row wrap is not an edge
  EXPECT_EQ(g.edge_count(), 3u * 3 + 2u * 4);
}

TEST(Generators, TreeDepthLabels) {
  const auto g = gen_tree(BranchingSpec({2, 3}), kEdge);
  ASSERT_EQ(g.node_count(), 9u);
  EXPECT_EQ(g.node(0).depth, 0u);
  EXPECT_EQ(g.node(1).depth, 1u);
  EXPECT_EQ(g.node(8).depth, 2u);
  EXPECT_TRUE(is_connected(g));
}

TEST(GeneratorsProperty, ConnectedTreeEdgeCount) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    std::vector<unsigned> branches(1 + rng() % 4);
    for (auto& b : branches) {
      b = 1 + static_cast<unsigned>(rng() % 5);
    }
    const BranchingSpec spec(branches);
    const auto g = gen_connected_tree(spec, kEdge);
    std::size_t expected = spec.node_count() - 1;
    for (std::size_t d = 1; d <= spec.depth(); ++d) {
      expected += ring_edges(spec.nodes_at_depth(d));
    }
    ASSERT_EQ(g.edge_count(), expected);
    ASSERT_TRUE(is_connected(g));
    // Every ring level of >= 3 nodes is a cycle: each node gains 2 ring
    // edges, so the identity |E| = 2(|V| - 1) holds when all levels do.
    bool all_cycles = true;
    for (std::size_t d = 1; d <= spec.depth(); ++d) {
      all_cycles = all_cycles && spec.nodes_at_depth(d) >= 3;
    }
    if (all_cycles) {
      ASSERT_EQ(g.edge_count(), 2 * (g.node_count() - 1));
    }
  }
}

TEST(BranchingSpec, RejectsZeroBranches) {
  EXPECT_THROW(BranchingSpec({3, 0}), std::invalid_argument);
  EXPECT_EQ(BranchingSpec({4, 3, 2}).node_count(), 41u);
}

TEST(Distance, PlanarAndHaversine) {
  EXPECT_DOUBLE_EQ(distance_km(Coordinate::planar(0, 0), Coordinate::planar(3, 4)), 5.0);
  // One degree of latitude along a meridian.
  EXPECT_NEAR(distance_km(Coordinate::geodetic(0, 0), Coordinate::geodetic(1, 0)),
              kEarthRadiusKm * std::numbers::pi / 180.0, 1e-9);
  // A quarter of the equator.
  EXPECT_NEAR(distance_km(Coordinate::geodetic(0, 0), Coordinate::geodetic(0, 90)),
              kEarthRadiusKm * std::numbers::pi / 2.0, 1e-9);
  // Pole to pole is half a great circle regardless of longitude.
  EXPECT_NEAR(distance_km(Coordinate::geodetic(90, 10), Coordinate::geodetic(-90, 70)),
              kEarthRadiusKm * std::numbers::pi, 1e-6);
  EXPECT_THROW((void)distance_km(Coordinate::planar(0, 0), Coordinate::geodetic(0, 0)),
               std::invalid_argument);
}

TEST(GeoGenerators, CostScalesWithDistance) {
  const std::vector<Coordinate> pts = {Coordinate::planar(0, 0),
                                       Coordinate::planar(10, 0)};
  const auto g = gen_geo_complete(pts, CostVector(0.1, 0.2));
  ASSERT_EQ(g.edge_count(), 1u);
  EXPECT_DOUBLE_EQ(g.edges()[0].cost.loss_db(), 1.0);
  EXPECT_DOUBLE_EQ(g.edges()[0].cost.z_db(), 2.0);
  EXPECT_EQ(gen_geo_mst(pts, CostVector(0.1, 0.1)).edge_count(), 1u);
}

TEST(GeoGenerators, CollinearMstIsPath) {
  const std::vector<Coordinate> pts = {
      Coordinate::planar(0, 0), Coordinate::planar(7, 0),
      Coordinate::planar(2, 0), Coordinate::planar(4, 0)};
  const auto g = gen_geo_mst(pts, kEdge);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_TRUE(g.has_edge(0, 2));
  EXPECT_TRUE(g.has_edge(2, 3));
  EXPECT_TRUE(g.has_edge(3, 1));
  EXPECT_DOUBLE_EQ(total_length_km(g), 7.0);
}

TEST(GeoGeneratorsProperty, MstMatchesSpanningTreeEnumeration) {
  std::mt19937_64 rng(11);
  for (std::size_t n = 2; n <= 7; ++n) {
    for (int rep = 0; rep < 4; ++rep) {
      const auto pts = random_planar(n, rng);
      const auto g = gen_geo_mst(pts, kEdge);
      ASSERT_EQ(g.edge_count(), n - 1);
      ASSERT_TRUE(is_connected(g));
      ASSERT_NEAR(total_length_km(g), brute_force_mst_length(pts), 1e-9);
    }
  }
}

TEST(GeoGeneratorsProperty, MstMatchesKruskal) {
  std::mt19937_64 rng(12);
  for (int rep = 0; rep < 50; ++rep) {
    const auto pts = random_planar(10 + rep % 10, rng);
    const auto g = gen_geo_mst(pts, kEdge);
    ASSERT_EQ(g.edge_count(), pts.size() - 1);
    ASSERT_NEAR(total_length_km(g), kruskal_length(pts), 1e-9);
  }
}

TEST(GeoGenerators, FourteenNodes) {
  std::mt19937_64 rng(14);
  for (int rep = 0; rep < 20; ++rep) {
    const auto pts = random_planar(14, rng);
    EXPECT_EQ(gen_geo_mst(pts, kEdge).edge_count(), 13u);
    EXPECT_EQ(gen_geo_complete(pts, kEdge).edge_count(), 91u);
  }
}

TEST(GeoGenerators, CoincidentPoints) {
  const std::vector<Coordinate> pts = {Coordinate::planar(1, 1),
                                       Coordinate::planar(1, 1),
                                       Coordinate::planar(2, 2)};
  EXPECT_EQ(count_coincident(pts), 1u);
  EXPECT_EQ(gen_geo_mst(pts, kEdge).edge_count(), 2u);
}
