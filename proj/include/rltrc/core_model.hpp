#pragma once

#include <span>
#include <string>
#include <vector>

#include "rltrc/geometry.hpp"
#include "rltrc/ids.hpp"

namespace rltrc {

struct NodeState {
  NodeId id{};
  Vec2 position{};
  Vec2 velocity{};
  double max_velocity = 0.0;     // m/s
  double residual_energy = 0.0;  // J
  std::vector<double> power_levels;  // strictly ascending, power units
  double radio_range = 0.0;      // m
  double min_rcv = 0.0;          // power units
  ZoneId zone{};
  bool is_peripheral = false;

  bool alive() const noexcept { return residual_energy > 0.0; }
  double max_power() const { return power_levels.back(); }
  double min_power() const { return power_levels.front(); }
};

struct ZoneState {
  ZoneId id{};
  Rect boundary{};
  double theta = 1.0;   // max inter-node distance (m)
  double phi = 1.0;     // average downlink-neighbour count
  double av_rad = 1.0;  // average radio range (m)
  double ng = 1.0;      // neighbour count used by the broadcast cost
  std::vector<NodeId> member_nodes;
  std::vector<SessionId> live_sessions;
  double ew = 0.0;  // cumulative wasted energy (J)
  double et = 0.0;  // cumulative wasted time (s)
  double reward_ri = 0.0;
};

struct TransmissionRecord {
  NodeId hop_start{};
  NodeId hop_end{};
  int turn = 1;
  double power_used = 0.0;
  double t_send = 0.0;
  double t_ack = 0.0;  // unset (NaN) when no ack arrived
};

struct SessionRecord {
  SessionId id{};
  NodeId src{};
  NodeId dst{};
  std::vector<NodeId> route;
  int hop_count = 0;
  double reward = 1.0;
  bool live = true;
  std::vector<TransmissionRecord> transmissions;
};

inline double distance(const NodeState& a, const NodeState& b) noexcept {
  return distance(a.position, b.position);
}

// Range check is inclusive at the boundary.
bool in_radio_range(const NodeState& sender, Vec2 receiver_pos) noexcept;

// Zones must be ordered by id; shared boundaries resolve to the lowest id.
// Throws OutOfArenaError when no zone contains the point.
ZoneId zone_of(Vec2 point, std::span<const ZoneState> zones);

// Tiles the arena with `count` equal rectangles laid out as a rows x cols
// grid, where rows is the largest divisor of count not exceeding sqrt(count).
std::vector<ZoneState> make_zone_grid(const Rect& arena, int count);

// Largest pairwise distance; 0 for fewer than two points.
double diameter(std::span<const Vec2> points) noexcept;

// Invariant violations of a node (empty when consistent).
std::vector<std::string> audit(const NodeState& node);

}  // namespace rltrc
