#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rltrc/ids.hpp"

namespace rltrc::sim {

using Route = std::vector<NodeId>;

// Undirected adjacency by node index; neighbour lists sorted ascending.
using Adjacency = std::vector<std::vector<NodeId>>;

struct FloodResult {
  std::vector<NodeId> reached;     // every node that rebroadcast the request
  std::vector<Route> candidates;   // one route per last hop into dst
};

// Hop-by-hop flood of a route request from src over `graph`. Candidate routes
// have at most max_hops hops; each is the lexicographically smallest shortest
// path to one neighbour of dst. Empty candidates means unreachable.
FloodResult route_discovery(const Adjacency& graph, NodeId src, NodeId dst, int max_hops);

// Minimum hop count, ties broken by the lexicographically smallest id
// sequence. Precondition: candidates non-empty.
const Route& route_select(std::span<const Route> candidates);

}  // namespace rltrc::sim
