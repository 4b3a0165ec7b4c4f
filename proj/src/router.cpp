#include "qnet/router.hpp"

#include "qnet/entanglement.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <tuple>
#include <unordered_set>

namespace qnet {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct Label {
  std::int64_t weight;
  std::uint32_t hops;
  std::uint32_t node;

  // Min-heap on (weight + potential, hops); node only makes the order total.
  bool operator>(const Label& o) const {
    if (weight != o.weight) {
      return weight > o.weight;
    }
    if (hops != o.hops) {
      return hops > o.hops;
    }
    return node > o.node;
  }
};

}  // namespace

std::vector<std::int64_t> shortest_distances(const RoutingGraph& graph,
                                             std::uint32_t src,
                                             Scalarization mode) {
  std::vector<std::int64_t> dist(graph.node_count(), kUnreachable);
  using Item = std::pair<std::int64_t, std::uint32_t>;
  std::vector<Item> heap;
  dist.at(src) = 0;
  heap.emplace_back(0, src);
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), std::greater<>{});
    const auto [d, u] = heap.back();
    heap.pop_back();
    if (d != dist[u]) {
      continue;
    }
    for (const Arc& arc : graph.out_arcs(u)) {
      const std::int64_t w = d + graph.weight(arc.edge, mode);
      if (w < dist[arc.head]) {
        dist[arc.head] = w;
        heap.emplace_back(w, arc.head);
        std::push_heap(heap.begin(), heap.end(), std::greater<>{});
      }
    }
  }
  return dist;
}

namespace {

struct Workspace {
  std::vector<std::int64_t> dist;
  std::vector<std::uint32_t> hops;
  std::vector<std::uint32_t> pred;
  std::vector<std::uint32_t> pred_edge;
  std::vector<std::uint8_t> settled;
  std::vector<std::uint32_t> seen;
  std::vector<Label> heap;
  std::uint32_t stamp = 0;

  void prepare(std::size_t n) {
    if (dist.size() < n) {
      dist.resize(n);
      hops.resize(n);
      pred.resize(n);
      pred_edge.resize(n);
      settled.resize(n);
      seen.resize(n, 0);
    }
    if (++stamp == 0) {
      std::fill(seen.begin(), seen.end(), 0);
      stamp = 1;
    }
  }
};

}  // namespace

std::optional<Route> shortest_path(const RoutingGraph& graph,
                                   std::span<const std::uint8_t> alive,
                                   std::uint32_t src, std::uint32_t dst,
                                   Scalarization mode,
                                   std::span<const std::int64_t> potential) {
  const std::size_t n = graph.node_count();
  if (src >= n || dst >= n) {
    throw std::out_of_range("shortest_path endpoint out of range");
  }
  if (!alive.empty() && alive.size() != graph.edge_count()) {
    throw std::invalid_argument("alive mask size does not match edge count");
  }
  if (!potential.empty() && potential.size() != n) {
    throw std::invalid_argument("potential size does not match node count");
  }
  auto pot = [&potential](std::uint32_t v) -> std::int64_t {
    return potential.empty() ? 0 : potential[v];
  };

  // Scratch arrays are reused across calls on the same thread; `stamp`
  // marks which entries belong to the current search.
  thread_local Workspace ws;
  ws.prepare(n);
  auto& dist = ws.dist;
  auto& hops = ws.hops;
  auto& pred = ws.pred;
  auto& pred_edge = ws.pred_edge;
  auto& settled = ws.settled;
  const std::uint32_t stamp = ws.stamp;
  auto touch = [&](std::uint32_t v) {
    if (ws.seen[v] != stamp) {
      ws.seen[v] = stamp;
      dist[v] = std::numeric_limits<std::int64_t>::max();
      hops[v] = kNone;
      pred[v] = kNone;
      pred_edge[v] = kNone;
      settled[v] = 0;
    }
  };

  // Equal-depth predecessor chains merge at the source at the latest; the
  // last difference seen walking backwards is the one closest to the source,
  // which decides lexicographic order.
  auto chain_less = [&pred](std::uint32_t x, std::uint32_t y) {
    int decision = 0;
    while (x != y) {
      decision = x < y ? -1 : 1;
      x = pred[x];
      y = pred[y];
    }
    return decision < 0;
  };

  auto& heap = ws.heap;
  heap.clear();
  auto heap_push = [&heap](Label l) {
    heap.push_back(l);
    std::push_heap(heap.begin(), heap.end(), std::greater<>{});
  };
  touch(src);
  dist[src] = 0;
  hops[src] = 0;
  heap_push({pot(src), 0, src});
  while (!heap.empty()) {
    std::pop_heap(heap.begin(), heap.end(), std::greater<>{});
    const Label top = heap.back();
    heap.pop_back();
    const std::uint32_t u = top.node;
    if (settled[u] || top.weight != dist[u] + pot(u) || top.hops != hops[u]) {
      continue;
    }
    settled[u] = 1;
    if (u == dst) {
      break;
    }
    for (const Arc& arc : graph.out_arcs(u)) {
      if (!alive.empty() && alive[arc.edge] == 0) {
        continue;
      }
      const std::uint32_t v = arc.head;
      touch(v);
      if (settled[v]) {
        continue;
      }
      const std::int64_t w = dist[u] + graph.weight(arc.edge, mode);
      const std::uint32_t h = hops[u] + 1;
      if (w < dist[v] || (w == dist[v] && h < hops[v])) {
        dist[v] = w;
        hops[v] = h;
        pred[v] = u;
        pred_edge[v] = arc.edge;
        heap_push({w + pot(v), h, v});
      } else if (w == dist[v] && h == hops[v] && pred[v] != u &&
                 chain_less(u, pred[v])) {
        pred[v] = u;
        pred_edge[v] = arc.edge;
      }
    }
  }
  touch(dst);
  if (!settled[dst]) {
    return std::nullopt;
  }

  Route route;
  for (std::uint32_t v = dst; v != src; v = pred[v]) {
    route.nodes.push_back(v);
    route.edges.push_back(pred_edge[v]);
  }
  route.nodes.push_back(src);
  std::reverse(route.nodes.begin(), route.nodes.end());
  std::reverse(route.edges.begin(), route.edges.end());
  for (std::uint32_t e : route.edges) {
    route.total_cost += graph.edge(e).cost;
  }
  return route;
}

WorkingCopy::WorkingCopy(TemporalGraph graph)
    : temporal_(std::move(graph)),
      graph_(temporal_.compile()),
      alive_(graph_.edge_count(), 1) {}

std::optional<Route> WorkingCopy::find(const EndpointPair& pair,
                                       Scalarization mode) const {
  if (!temporal_.is_virtual(pair.source) || !temporal_.is_virtual(pair.sink) ||
      pair.sink >= graph_.node_count()) {
    throw std::invalid_argument("pair endpoints are not attached");
  }
  auto route = shortest_path(graph_, alive_, pair.source, pair.sink, mode,
                             potential(pair, mode));
  if (route) {
    for (std::uint32_t v : route->nodes) {
      if (auto layer = temporal_.layer_of(v)) {
        route->layers_used.push_back(*layer);
      }
    }
    std::sort(route->layers_used.begin(), route->layers_used.end());
    route->layers_used.erase(
        std::unique(route->layers_used.begin(), route->layers_used.end()),
        route->layers_used.end());
  }
  return route;
}

std::span<const std::int64_t> WorkingCopy::potential(const EndpointPair& pair,
                                                     Scalarization mode) const {
  const auto key = std::make_pair(pair.sink, mode);
  auto it = potentials_.find(key);
  if (it != potentials_.end()) {
    return it->second;
  }
  // Distances to b in the intact base graph bound the remaining cost from
  // any copy of any node: layers repeat the base weights and memory edges
  // only add cost.
  const auto dist = temporal_.base_distances_to(pair.b, mode);
  const auto& to_b = *dist;
  std::vector<std::int64_t> pot(graph_.node_count(), 0);
  const std::size_t n = temporal_.base().node_count();
  const std::int64_t unreachable = std::numeric_limits<std::int64_t>::max() / 4;
  for (std::uint32_t v = 0; v < n * temporal_.layers(); ++v) {
    const auto d = to_b[v % n];
    pot[v] = d == kUnreachable ? unreachable : d;
  }
  pot[pair.source] = pot[pair.a];
  return potentials_.emplace(key, std::move(pot)).first->second;
}

void WorkingCopy::consume(const Route& route) {
  for (std::uint32_t e : route.edges) {
    if (graph_.edge(e).kind != EdgeKind::Shim) {
      alive_[e] = 0;
    }
  }
}

namespace {

void finish(PairOutcome& outcome) {
  if (outcome.routes.empty()) {
    return;
  }
  try {
    outcome.purified = purify_routes(outcome.routes);
  } catch (const std::domain_error&) {
    // Every route's fidelity rounded to 0.5: nothing usable to deliver.
    outcome.purified.reset();
  }
}

}  // namespace

PairOutcome greedy_multipath(WorkingCopy& copy, const EndpointPair& pair,
                             unsigned max_paths, Scalarization mode) {
  PairOutcome outcome{pair.a, pair.b, {}, std::nullopt};
  for (unsigned i = 0; i < max_paths; ++i) {
    auto route = copy.find(pair, mode);
    if (!route) {
      break;
    }
    copy.consume(*route);
    outcome.routes.push_back(std::move(*route));
  }
  finish(outcome);
  return outcome;
}

std::vector<PairOutcome> allocate_multiuser(WorkingCopy& copy,
                                            std::span<const EndpointPair> pairs,
                                            unsigned max_paths,
                                            Scalarization mode) {
  std::unordered_set<NodeId> used;
  for (const auto& p : pairs) {
    if (!used.insert(p.a).second || !used.insert(p.b).second) {
      throw std::invalid_argument("user pairs share node " +
                                  std::to_string(used.contains(p.a) ? p.a : p.b));
    }
  }
  std::vector<PairOutcome> outcomes;
  outcomes.reserve(pairs.size());
  for (const auto& p : pairs) {
    outcomes.push_back({p.a, p.b, {}, std::nullopt});
  }
  std::vector<bool> exhausted(pairs.size(), false);
  for (unsigned round = 0; round < max_paths; ++round) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (exhausted[i]) {
        continue;
      }
      auto route = copy.find(pairs[i], mode);
      if (!route) {
        // Consumption only removes edges, so a disconnected pair stays so.
        exhausted[i] = true;
        continue;
      }
      copy.consume(*route);
      outcomes[i].routes.push_back(std::move(*route));
    }
  }
  for (auto& o : outcomes) {
    finish(o);
  }
  return outcomes;
}

}  // namespace qnet
