#include "rltrc/core_model.hpp"

#include <cmath>
#include <string>

#include "rltrc/errors.hpp"

namespace rltrc {

bool in_radio_range(const NodeState& sender, Vec2 receiver_pos) noexcept {
  return distance(sender.position, receiver_pos) <= sender.radio_range;
}

ZoneId zone_of(Vec2 point, std::span<const ZoneState> zones) {
  for (const auto& z : zones) {
    if (z.boundary.contains(point)) return z.id;
  }
  throw OutOfArenaError("point (" + std::to_string(point.x) + ", " + std::to_string(point.y) +
                        ") lies outside the arena");
}

std::vector<ZoneState> make_zone_grid(const Rect& arena, int count) {
  if (count < 1) throw DomainError("zone count must be at least 1");
  int rows = 1;
  for (int r = 1; r * r <= count; ++r) {
    if (count % r == 0) rows = r;
  }
  const int cols = count / rows;
  const double w = arena.width() / cols;
  const double h = arena.height() / rows;

  std::vector<ZoneState> zones;
  zones.reserve(static_cast<std::size_t>(count));
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      ZoneState z;
      z.id = make_id<ZoneId>(static_cast<std::uint32_t>(zones.size()));
      // Outer edges come from the arena itself so the tiling is exact.
      z.boundary.x0 = c == 0 ? arena.x0 : arena.x0 + w * c;
      z.boundary.x1 = c == cols - 1 ? arena.x1 : arena.x0 + w * (c + 1);
      z.boundary.y0 = r == 0 ? arena.y0 : arena.y0 + h * r;
      z.boundary.y1 = r == rows - 1 ? arena.y1 : arena.y0 + h * (r + 1);
      z.theta = z.boundary.diagonal();
      zones.push_back(std::move(z));
    }
  }
  return zones;
}

double diameter(std::span<const Vec2> points) noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) {
      best = std::max(best, distance(points[i], points[j]));
    }
  }
  return best;
}

std::vector<std::string> audit(const NodeState& node) {
  std::vector<std::string> out;
  const std::string who = "node " + std::to_string(index_of(node.id)) + ": ";
  if (node.power_levels.empty()) out.push_back(who + "no power levels");
  for (std::size_t i = 0; i < node.power_levels.size(); ++i) {
    if (!(node.power_levels[i] > 0.0)) out.push_back(who + "non-positive power level");
    if (i > 0 && !(node.power_levels[i] > node.power_levels[i - 1])) {
      out.push_back(who + "power levels not strictly ascending");
    }
  }
  if (!(node.residual_energy >= 0.0)) out.push_back(who + "negative residual energy");
  if (node.is_peripheral && node.max_velocity != 0.0) out.push_back(who + "peripheral node can move");
  if (node.velocity.norm() > node.max_velocity * (1.0 + 1e-12) + 1e-12) {
    out.push_back(who + "speed exceeds max_velocity");
  }
  return out;
}

}  // namespace rltrc
