#pragma once

#include "rltrc/config.hpp"
#include "rltrc/core_model.hpp"
#include "rltrc/geometry.hpp"
#include "rltrc/policy.hpp"

namespace rltrc::sim {

struct MobilityParams {
  double speed_min = 0.5;
  double pause_max = 0.0;
  double gauss_sd = 0.5;
};

struct MobilityState {
  Vec2 waypoint{};
  bool has_waypoint = false;
  double speed = 0.0;
  double pause_until = 0.0;
};

// Point at most `max_dist` further along the segment towards `to`.
Vec2 step_toward(Vec2 from, Vec2 to, double max_dist) noexcept;

// Mirrors a point that left the arena back inside it.
Vec2 reflect(Vec2 p, const Rect& arena) noexcept;

// Advances one node by dt. Peripheral and zero-speed nodes never move.
void mobility_step(NodeState& node, MobilityState& state, MobilityModel model, double t_now, double dt,
                   const MobilityParams& params, const Rect& arena, Rng& rng);

}  // namespace rltrc::sim
