#pragma once

// Exhaustive reference for shortest_path, shared by the unit and
// acceptance tests.

#include "qnet/router.hpp"

#include <algorithm>
#include <cstdint>
#include <optional>
#include <random>
#include <set>
#include <span>
#include <tuple>
#include <vector>

namespace qnet::oracle {

struct Candidate {
  std::int64_t weight;
  std::size_t hops;
  std::vector<std::uint32_t> nodes;

  bool operator<(const Candidate& o) const {
    return std::tie(weight, hops, nodes) < std::tie(o.weight, o.hops, o.nodes);
  }
};

// Best simple path under (weight, hops, lexicographic node sequence), by
// enumerating every simple path.
inline std::optional<Candidate> brute_force(const RoutingGraph& g,
                                     std::span<const std::uint8_t> alive,
                                     std::uint32_t src, std::uint32_t dst,
                                     Scalarization mode) {
  std::optional<Candidate> best;
  std::vector<std::uint32_t> path = {src};
  std::vector<char> on_path(g.node_count(), 0);
  on_path[src] = 1;
  auto dfs = [&](auto&& self, std::uint32_t u, std::int64_t w) -> void {
    if (u == dst) {
      Candidate c{w, path.size() - 1, path};
      if (!best || c < *best) {
        best = c;
      }
      return;
    }
    for (const Arc& a : g.out_arcs(u)) {
      if ((!alive.empty() && !alive[a.edge]) || on_path[a.head]) {
        continue;
      }
      on_path[a.head] = 1;
      path.push_back(a.head);
      self(self, a.head, w + g.weight(a.edge, mode));
      path.pop_back();
      on_path[a.head] = 0;
    }
  };
  dfs(dfs, src, 0);
  return best;
}

// Random mixed graph: undirected edges with occasional directed ones and
// costs drawn from a small set so that ties are common.
inline RoutingGraph random_graph(std::mt19937_64& rng, std::size_t n, bool directed_mix) {
  const double costs[] = {0.0, 0.1, 0.1, 0.2, 0.3, 0.25};
  std::vector<EdgeSpec> edges;
  std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
  const std::size_t m = rng() % (n * (n - 1) / 2 + 1);
  for (std::size_t i = 0; i < m; ++i) {
    auto u = static_cast<std::uint32_t>(rng() % n);
    auto v = static_cast<std::uint32_t>(rng() % n);
    if (u == v || seen.count({std::min(u, v), std::max(u, v)})) {
      continue;
    }
    seen.insert({std::min(u, v), std::max(u, v)});
    const CostVector c(costs[rng() % 6], costs[rng() % 6]);
    edges.push_back({u, v, c, EdgeKind::Channel, directed_mix && rng() % 4 == 0});
  }
  return {n, std::move(edges)};
}

}  // namespace qnet::oracle
