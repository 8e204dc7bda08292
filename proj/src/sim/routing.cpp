#include "rltrc/sim/routing.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "rltrc/errors.hpp"

namespace rltrc::sim {

namespace {

constexpr int kUnreached = std::numeric_limits<int>::max();

// Hop distances from `from`, never expanding through `blocked`.
std::vector<int> bfs(const Adjacency& g, NodeId from, NodeId blocked) {
  std::vector<int> dist(g.size(), kUnreached);
  std::deque<NodeId> q;
  dist[index_of(from)] = 0;
  q.push_back(from);
  while (!q.empty()) {
    const NodeId u = q.front();
    q.pop_front();
    if (u == blocked && u != from) continue;
    for (NodeId v : g[index_of(u)]) {
      if (dist[index_of(v)] != kUnreached) continue;
      dist[index_of(v)] = dist[index_of(u)] + 1;
      q.push_back(v);
    }
  }
  return dist;
}

}  // namespace

FloodResult route_discovery(const Adjacency& graph, NodeId src, NodeId dst, int max_hops) {
  FloodResult out;
  if (index_of(src) >= graph.size() || index_of(dst) >= graph.size() || src == dst) return out;

  const auto from_src = bfs(graph, src, dst);
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto id = make_id<NodeId>(static_cast<std::uint32_t>(i));
    if (id != dst && from_src[i] <= max_hops - 1) out.reached.push_back(id);
  }

  for (NodeId last : graph[index_of(dst)]) {
    const int d = from_src[index_of(last)];
    if (last == dst || d == kUnreached || d + 1 > max_hops) continue;
    // walk from src along the smallest id that stays on a shortest path
    const auto to_last = bfs(graph, last, dst);
    Route r{src};
    NodeId cur = src;
    while (cur != last) {
      const int remaining = to_last[index_of(cur)];
      NodeId next = cur;
      for (NodeId v : graph[index_of(cur)]) {
        if (v != dst && to_last[index_of(v)] == remaining - 1) {
          next = v;
          break;
        }
      }
      if (next == cur) break;  // unreachable by construction
      r.push_back(next);
      cur = next;
    }
    r.push_back(dst);
    out.candidates.push_back(std::move(r));
  }
  return out;
}

const Route& route_select(std::span<const Route> candidates) {
  if (candidates.empty()) throw DomainError("no candidate routes");
  const Route* best = &candidates.front();
  for (const auto& r : candidates) {
    if (r.size() < best->size() || (r.size() == best->size() && r < *best)) best = &r;
  }
  return *best;
}

}  // namespace rltrc::sim
