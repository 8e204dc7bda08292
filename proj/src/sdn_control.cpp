#include "rltrc/sdn_control.hpp"

#include <algorithm>

#include "rltrc/rewards.hpp"

namespace rltrc {

BroadcastCircle destination_lookup(NodeId dst, double t_now, std::span<const ControllerRegistry> registries,
                                   std::span<const ZoneState> zones) {
  const RegistryEntry* best = nullptr;
  for (const auto& reg : registries) {
    const auto it = reg.nodes.find(dst);
    if (it == reg.nodes.end()) continue;
    if (best == nullptr || it->second.timestamp > best->timestamp) best = &it->second;
  }

  BroadcastCircle circle;
  if (best == nullptr) {
    circle.all_zones = true;
    for (const auto& z : zones) circle.spans_zones.push_back(z.id);
    return circle;
  }

  circle.center = best->position;
  circle.radius = best->max_velocity * std::max(0.0, t_now - best->timestamp);
  for (const auto& z : zones) {
    if (z.boundary.intersects_disc(circle.center, circle.radius)) circle.spans_zones.push_back(z.id);
  }
  if (circle.spans_zones.empty()) {
    // last report outside every zone should not happen; degrade to a full flood
    circle.all_zones = true;
    for (const auto& z : zones) circle.spans_zones.push_back(z.id);
    return circle;
  }
  for (const auto& z : zones) {
    if (z.boundary.contains_disc(circle.center, circle.radius)) {
      circle.intra_zonal = true;
      break;
    }
  }
  return circle;
}

ZoneController::ZoneController(ZoneState zone, double t_sync, double fallback_av_rad)
    : zone_(std::move(zone)), fallback_av_rad_(fallback_av_rad > 0.0 ? fallback_av_rad : 1.0) {
  registry_.zone_geometry = zone_.boundary;
  registry_.t_sync = t_sync;
  zone_.theta = zone_.boundary.diagonal();
  zone_.av_rad = fallback_av_rad_;
}

SyncOutcome ZoneController::sync(double t_now, std::span<const MemberReport> members) {
  SyncOutcome out;
  last_sync_ = t_now;

  std::vector<NodeId> ids;
  ids.reserve(members.size());
  for (const auto& m : members) ids.push_back(m.id);
  std::sort(ids.begin(), ids.end());
  const bool membership_changed = ids != zone_.member_nodes;
  zone_.member_nodes = std::move(ids);

  registry_.nodes.clear();
  for (const auto& m : members) {
    registry_.nodes[m.id] = RegistryEntry{m.position, t_now, m.residual_energy, m.max_velocity};
  }

  std::vector<Vec2> positions;
  positions.reserve(members.size());
  double range_sum = 0.0;
  double neighbor_sum = 0.0;
  for (const auto& m : members) {
    positions.push_back(m.position);
    range_sum += m.radio_range;
    neighbor_sum += m.neighbor_count;
  }
  const auto n = static_cast<double>(members.size());
  zone_.theta = members.size() >= 2 ? diameter(positions) : zone_.boundary.diagonal();
  if (!(zone_.theta > 0.0)) zone_.theta = zone_.boundary.diagonal();
  zone_.av_rad = members.empty() ? fallback_av_rad_ : range_sum / n;
  if (!(zone_.av_rad > 0.0)) zone_.av_rad = fallback_av_rad_;
  zone_.phi = members.empty() ? 1.0 : std::max(1.0, neighbor_sum / n);
  zone_.ng = zone_.phi;

  if (members.empty()) {
    zone_.reward_ri = 0.0;
    attempts_since_sync_ = 0;
    reward_dirty_ = false;
    return out;
  }

  if (membership_changed || attempts_since_sync_ > 0 || reward_dirty_) {
    std::vector<double> node_rewards;
    node_rewards.reserve(members.size());
    for (const auto& m : members) node_rewards.push_back(m.reward);
    std::vector<double> sessions;
    sessions.reserve(session_rewards_.size());
    for (const auto& [id, r] : session_rewards_) sessions.push_back(r);
    zone_.reward_ri = zone_reward(node_rewards, sessions);
    out.recomputed = true;
  }
  attempts_since_sync_ = 0;
  reward_dirty_ = false;
  out.broadcast = true;
  return out;
}

void ZoneController::report_session_reward(SessionId session, double ew, double et) {
  session_rewards_[session] = session_reward(ew, et);
  if (std::find(zone_.live_sessions.begin(), zone_.live_sessions.end(), session) == zone_.live_sessions.end()) {
    zone_.live_sessions.push_back(session);
  }
  reward_dirty_ = true;
}

void ZoneController::end_session(SessionId session) {
  session_rewards_.erase(session);
  std::erase(zone_.live_sessions, session);
  reward_dirty_ = true;
}

double NetworkController::collect(double t_now, std::span<const ZoneController> zones) {
  if (!collect_due(t_now)) return reward_;
  std::vector<double> ri;
  ri.reserve(zones.size());
  for (const auto& z : zones) ri.push_back(z.zone().reward_ri);
  reward_ = network_reward(ri);
  last_collect_ = t_now;
  return reward_;
}

std::optional<NodeId> choose_report_relay(std::span<const NodeId> route, NodeId src, std::span<const NodeState> nodes,
                                          const ZoneState& zone) {
  const auto find = [&](NodeId id) -> const NodeState* {
    const auto i = index_of(id);
    return i < nodes.size() ? &nodes[i] : nullptr;
  };
  if (const auto* s = find(src); s != nullptr && s->zone == zone.id) return src;
  std::optional<NodeId> best;
  for (NodeId id : route) {
    const auto* n = find(id);
    if (n == nullptr || !n->is_peripheral || !zone.boundary.contains(n->position)) continue;
    if (!best || id < *best) best = id;
  }
  return best;
}

}  // namespace rltrc
