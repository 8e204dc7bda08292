#include "rltrc/sim/mobility.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace rltrc::sim {

Vec2 step_toward(Vec2 from, Vec2 to, double max_dist) noexcept {
  const Vec2 d = to - from;
  const double len = d.norm();
  if (len <= max_dist || len == 0.0) return to;
  return from + d * (max_dist / len);
}

Vec2 reflect(Vec2 p, const Rect& arena) noexcept {
  for (int i = 0; i < 8; ++i) {
    if (p.x < arena.x0) p.x = 2 * arena.x0 - p.x;
    else if (p.x > arena.x1) p.x = 2 * arena.x1 - p.x;
    else if (p.y < arena.y0) p.y = 2 * arena.y0 - p.y;
    else if (p.y > arena.y1) p.y = 2 * arena.y1 - p.y;
    else return p;
  }
  return arena.clamp(p);
}

namespace {

Vec2 uniform_point(const Rect& arena, Rng& rng) {
  std::uniform_real_distribution<double> ux(arena.x0, arena.x1);
  std::uniform_real_distribution<double> uy(arena.y0, arena.y1);
  const double x = ux(rng);
  return {x, uy(rng)};
}

double draw_speed(double lo, double hi, Rng& rng) {
  lo = std::min(lo, hi);
  if (hi <= lo) return hi;
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace

void mobility_step(NodeState& node, MobilityState& st, MobilityModel model, double t_now, double dt,
                   const MobilityParams& params, const Rect& arena, Rng& rng) {
  if (node.is_peripheral || node.max_velocity <= 0.0 || !(dt > 0.0)) {
    node.velocity = {};
    return;
  }
  const Vec2 start = node.position;

  switch (model) {
    case MobilityModel::RandomWaypoint: {
      if (t_now < st.pause_until) {
        node.velocity = {};
        return;
      }
      if (!st.has_waypoint) {
        st.waypoint = uniform_point(arena, rng);
        st.speed = draw_speed(params.speed_min, node.max_velocity, rng);
        st.has_waypoint = true;
      }
      node.position = step_toward(start, st.waypoint, st.speed * dt);
      if (node.position == st.waypoint) {
        st.has_waypoint = false;
        const double pause =
            params.pause_max > 0.0 ? std::uniform_real_distribution<double>(0.0, params.pause_max)(rng) : 0.0;
        st.pause_until = t_now + dt + pause;
      }
      break;
    }
    case MobilityModel::RandomWalk: {
      if (st.speed <= 0.0) st.speed = draw_speed(params.speed_min, node.max_velocity, rng);
      const double heading = std::uniform_real_distribution<double>(0.0, 2.0 * std::numbers::pi)(rng);
      const Vec2 step{std::cos(heading) * st.speed * dt, std::sin(heading) * st.speed * dt};
      node.position = reflect(start + step, arena);
      break;
    }
    case MobilityModel::Gaussian: {
      std::normal_distribution<double> n(0.0, params.gauss_sd);
      Vec2 v = node.velocity;
      v.x += n(rng);
      v.y += n(rng);
      const double s = v.norm();
      if (s > node.max_velocity) v = v * (node.max_velocity / s);
      const Vec2 raw = start + v * dt;
      node.position = reflect(raw, arena);
      // bounce: flip the component that hit a wall
      if (raw.x < arena.x0 || raw.x > arena.x1) v.x = -v.x;
      if (raw.y < arena.y0 || raw.y > arena.y1) v.y = -v.y;
      node.velocity = v;
      return;
    }
  }
  Vec2 v = (node.position - start) * (1.0 / dt);
  // reflection can only shorten the displacement, rounding aside
  const double s = v.norm();
  if (s > node.max_velocity) v = v * (node.max_velocity / s);
  node.velocity = v;
}

}  // namespace rltrc::sim
